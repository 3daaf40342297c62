#include "scl/construct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace scl {

namespace {

Int square_class_int(const Rat& a) { return a.get_num() * a.get_den(); }

int parity_e(const Int& u) { return mpz_fdiv_ui(u.get_mpz_t(), 4) == 3 ? 1 : 0; }

int parity_w(const Int& u) {
  long r = mpz_fdiv_ui(u.get_mpz_t(), 8);
  return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const Rat& a_in, const Rat& b_in, long p) {
  if (a_in == 0 || b_in == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
  Int a = square_class_int(a_in), b = square_class_int(b_in);
  int alpha = valuation(a, p), beta = valuation(b, p);
  Int u = strip(a, p), v = strip(b, p);
  if (p == 2) {
    int s = parity_e(u) * parity_e(v) + alpha * parity_w(v) + beta * parity_w(u);
    return s % 2 ? -1 : 1;
  }
  int r = 1;
  if ((alpha * beta) % 2 && (p % 4) == 3) r = -r;
  if (beta % 2) r *= legendre(u, p);
  if (alpha % 2) r *= legendre(v, p);
  return r;
}

int hasse_invariant(const std::vector<Rat>& d, long p) {
  int c = 1;
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) c *= hilbert_symbol(d[i], d[j], p);
  return c;
}

int hasse_invariant(const std::vector<Int>& d, long p) {
  std::vector<Rat> r(d.begin(), d.end());
  return hasse_invariant(r, p);
}

std::vector<Int> find_diagonal_form(const SpaceInvariants& target) {
  int n = target.n;
  if (n < 1) throw std::invalid_argument("find_diagonal_form: bad dimension");
  if (target.det_class <= 0) throw std::invalid_argument("find_diagonal_form: determinant class must be positive");
  if (target.hasse_minus.size() % 2 != 0)
    throw std::invalid_argument("find_diagonal_form: inconsistent target (odd number of Hasse -1 primes)");
  std::set<long> base = {2};
  for (long p : prime_divisors(target.det_class)) base.insert(p);
  for (long p : target.hasse_minus) base.insert(p);
  std::vector<long> pool(base.begin(), base.end());
  for (long q = 3, added = 0; added < 10; q = next_prime(q))
    if (!base.count(q)) pool.push_back(q), ++added;

  std::vector<Int> values;
  for (size_t i = 0; i < pool.size(); ++i) {
    values.push_back(Int(pool[i]));
    for (size_t j = i + 1; j < pool.size(); ++j) {
      values.push_back(Int(pool[i]) * pool[j]);
      for (size_t k = j + 1; k < pool.size(); ++k) values.push_back(Int(pool[i]) * pool[j] * pool[k]);
    }
  }
  std::sort(values.begin(), values.end());

  auto matches = [&](const std::vector<Int>& d) {
    for (long p : pool)
      if (hasse_invariant(d, p) != (target.hasse_minus.count(p) ? -1 : 1)) return false;
    return true;
  };
  std::vector<Int> entries(n, 1);
  std::function<bool(int, int, size_t)> rec = [&](int slot, int left, size_t from) -> bool {
    if (left == 0) {
      Int prod = target.det_class;
      for (int i = 0; i + 1 < n; ++i) prod *= entries[i];
      entries[n - 1] = squarefree_part(prod);
      return matches(entries);
    }
    for (size_t v = from; v < values.size(); ++v) {
      entries[slot] = values[v];
      if (rec(slot + 1, left - 1, v)) return true;
    }
    entries[slot] = 1;
    return false;
  };
  for (int k = 0; k < n; ++k) {
    std::fill(entries.begin(), entries.end(), 1);
    if (rec(n - 1 - k, k, 0)) return entries;
  }
  throw ConstructionError("find_diagonal_form: no diagonal form found over the prime pool");
}

IntMatrix maximal_overlattice(const IntMatrix& gram, bool even) {
  IntMatrix g = lll_gram(gram).gram;
  while (auto next = overlattice_step(g, even)) g = lll_gram(*next).gram;
  return g;
}

GramLattice maximal_overlattice(const GramLattice& l) { return GramLattice(maximal_overlattice(l.gram(), false)); }

std::uint64_t seed_from_string(const std::string& s, std::uint64_t salt) {
  std::uint64_t h = 1469598103934665603ULL ^ salt;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::vector<long>> random_subspace(int n, int k, long p, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(0, p - 1);
  std::vector<std::vector<long>> vecs;
  while (static_cast<int>(vecs.size()) < k) {
    std::vector<long> v(n);
    for (auto& x : v) x = dist(rng);
    auto trial = vecs;
    trial.push_back(v);
    if (static_cast<int>(span_mod(trial, p).size()) == static_cast<int>(trial.size())) vecs = std::move(trial);
  }
  return vecs;
}

namespace {

LocalSymbol half_local(const IntMatrix& g2, long p) {
  RatMatrix b = to_rational(g2);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) b(i, j) /= 2;
  return canonical_local(local_symbol(jordan_decompose(b, p)));
}

// Gram matrix of {x in M : x.f = 0 mod p} on the basis e_i - (f_i/f_j) e_j (i != j), p e_j.
IntMatrix hyperplane_sublattice(const IntMatrix& g, long p, const std::vector<long>& f) {
  int n = g.rows();
  int j = 0;
  while (f[j] % p == 0) ++j;
  Int inv, fj(f[j]), pp(p);
  mpz_invert(inv.get_mpz_t(), fj.get_mpz_t(), pp.get_mpz_t());
  std::vector<long> c(n);
  for (int i = 0; i < n; ++i) c[i] = (f[i] % p) * inv.get_si() % p;
  IntMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      Int v;
      if (i == j && k == j) v = g(j, j) * p * p;
      else if (i == j || k == j) {
        int o = i == j ? k : i;
        v = (g(o, j) - c[o] * g(j, j)) * p;
      } else {
        v = g(i, k) - c[k] * g(i, j) - c[i] * g(j, k) + c[i] * c[k] * g(j, j);
      }
      out(i, k) = v;
      out(k, i) = v;
    }
  return out;
}

// Projective points of F_p^n with leading coordinate 1, in order, until f returns true.
bool for_each_functional(int n, long p, const std::function<bool(const std::vector<long>&)>& f) {
  std::vector<long> v(n);
  for (int lead = 0; lead < n; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    while (true) {
      if (f(v)) return true;
      int t = n - 1;
      while (t > lead && v[t] == p - 1) v[t--] = 0;
      if (t == lead) break;
      ++v[t];
    }
  }
  return false;
}

double functional_count(int n, long p) { return (std::pow(double(p), n) - 1) / double(p - 1); }

// Descends m index-p steps keeping one lattice per local symbol. The sublattices reachable
// from a lattice depend only on its local isometry class, so with all hyperplanes at each
// step this finds the target whenever it exists.
std::optional<IntMatrix> descend_by_levels(const IntMatrix& g2, long p, const LocalSymbol& target, int m,
                                           std::mt19937_64& rng, long samples, bool exhaustive) {
  int n = g2.rows();
  std::uniform_int_distribution<long> dist(0, p - 1);
  std::map<LocalSymbol, IntMatrix> level = {{half_local(g2, p), g2}};
  for (int step = 1; step <= m; ++step) {
    std::map<LocalSymbol, IntMatrix> next;
    std::optional<IntMatrix> hit;
    for (auto& [sym, g] : level) {
      auto visit = [&](const std::vector<long>& f) {
        IntMatrix cand = hyperplane_sublattice(g, p, f);
        LocalSymbol s = half_local(cand, p);
        if (step == m) {
          if (s == target) hit = lll_gram(cand).gram;
          return hit.has_value();
        }
        // p^s L'^# <= L' <= L_i <= L gives p^s L_i^# <= L_i, so deeper scales are dead ends.
        if (s.max_scale() > target.max_scale()) return false;
        if (!next.count(s)) next.emplace(s, lll_gram(cand).gram);
        return false;
      };
      if (exhaustive) {
        for_each_functional(n, p, visit);
      } else {
        // Half of the samples are orthogonal complements w^perp; they form a small part of all
        // hyperplanes when g is far from unimodular at p, but are needed to move rank between scales.
        Int unit = ipow(Int(p), valuation(content(g), p));
        auto zero = [](const std::vector<long>& f) { return std::all_of(f.begin(), f.end(), [](long x) { return x == 0; }); };
        for (long a = 0; a < samples && !hit; ++a) {
          std::vector<long> f(n);
          for (auto& x : f) x = dist(rng);
          if (a % 2) {
            std::vector<long> w = f;
            for (int i = 0; i < n; ++i) {
              Int t = 0;
              for (int k = 0; k < n; ++k) t += g(k, i) / unit * w[k];
              f[i] = mpz_fdiv_ui(t.get_mpz_t(), p);
            }
          }
          if (!zero(f)) visit(f);
        }
      }
      if (hit) return hit;
    }
    level = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

IntMatrix sublattice_with_local_symbol(const IntMatrix& g2, long p, const LocalSymbol& target_in, std::mt19937_64& rng,
                                       const ConstructOptions& opt) {
  int n = g2.rows();
  LocalSymbol target = canonical_local(target_in);
  if (half_local(g2, p) == target) return g2;
  int v_cur = valuation(determinant(g2), p) - (p == 2 ? n : 0);
  int diff = target.valuation() - v_cur;
  if (diff < 0 || diff % 2) throw ConstructionError("sublattice_with_local_symbol: target determinant not reachable");
  int m = diff / 2;
  long budget = opt.attempts_per_unit * n * p;
  auto accept = [&](const IntMatrix& cand) { return half_local(cand, p) == target; };

  if (p != 2) {
    int k = n - m;
    if (k < 0) throw ConstructionError("sublattice_with_local_symbol: index exceeds p^n");
    for (long a = 0; a < budget; ++a) {
      IntMatrix cand = congruent(sublattice_basis(n, p, random_subspace(n, k, p, rng)), g2);
      if (accept(cand)) return lll_gram(cand).gram;
    }
  } else {
    // 4L <= L' <= L as two successive steps through L1 = L' + 2L.
    if (m > 2 * n) throw ConstructionError("sublattice_with_local_symbol: index exceeds 4^n");
    std::uniform_int_distribution<int> pick(std::max(0, n - m), std::min(n, 2 * n - m));
    for (long a = 0; a < budget; ++a) {
      int k1 = pick(rng);
      IntMatrix g1 = congruent(sublattice_basis(n, 2, random_subspace(n, k1, 2, rng)), g2);
      IntMatrix cand = congruent(sublattice_basis(n, 2, random_subspace(n, 2 * n - m - k1, 2, rng)), g1);
      if (accept(cand)) return lll_gram(cand).gram;
    }
  }
  if (auto found = descend_by_levels(g2, p, target, m, rng, budget, false)) return *found;
  if (functional_count(n, p) <= 20000)
    if (auto found = descend_by_levels(g2, p, target, m, rng, budget, true)) return *found;
  throw ConstructionError("sublattice_with_local_symbol: no sublattice with symbol " + describe(target) +
                          " found at p=" + std::to_string(p));
}

GramLattice construct_representative(const GenusSymbol& sym_in, const ConstructOptions& opt) {
  std::string problem = validity_problem(sym_in);
  if (!problem.empty()) throw std::invalid_argument("construct_representative: invalid symbol: " + problem);
  GenusSymbol sym = canonical(sym_in);
  if (!is_primitive(sym) || !is_squarefree(sym))
    throw std::invalid_argument("construct_representative: symbol must be primitive and square-free");
  int n = sym.n;
  auto diag = find_diagonal_form(space_invariants(sym));
  IntMatrix g2(n, n);
  for (int i = 0; i < n; ++i) g2(i, i) = 2 * diag[i];
  g2 = maximal_overlattice(g2, true);

  std::mt19937_64 rng(seed_from_string(print_symbol(sym), opt.seed));
  std::vector<long> primes;
  for (auto& l : sym.locals)
    if (l.p != 2) primes.push_back(l.p);
  primes.push_back(2);
  for (long p : primes) g2 = sublattice_with_local_symbol(g2, p, *sym.local(p), rng, opt);

  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (mpz_odd_p(g2(i, j).get_mpz_t())) throw std::logic_error("construct_representative: result not integral");
      g(i, j) = g2(i, j) / 2;
    }
  GramLattice out = lll_reduce(GramLattice(g));
  if (symbol_from_lattice(out) != sym)
    throw std::logic_error("construct_representative: symbol check failed for " + print_symbol(sym));
  return out;
}

}  // namespace scl
