#include "scl/genus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "scl/construct.hpp"

namespace scl {

int LocalSymbol::rank() const {
  int r = 0;
  for (auto& c : cs) r += c.rank;
  return r;
}

int LocalSymbol::valuation() const {
  int v = 0;
  for (auto& c : cs) v += c.scale * c.rank;
  return v;
}

int LocalSymbol::min_scale() const { return cs.empty() ? 0 : cs.front().scale; }
int LocalSymbol::max_scale() const { return cs.empty() ? 0 : cs.back().scale; }

const Constituent* LocalSymbol::at(int scale) const {
  for (auto& c : cs)
    if (c.scale == scale) return &c;
  return nullptr;
}

const LocalSymbol* GenusSymbol::local(long p) const {
  for (auto& l : locals)
    if (l.p == p) return &l;
  return nullptr;
}

LocalSymbol GenusSymbol::local_at(long p) const {
  if (auto* l = local(p)) return *l;
  if (p == 2) throw std::out_of_range("genus symbol has no 2-adic part");
  LocalSymbol l;
  l.p = p;
  Int d = 1;
  for (auto& x : locals) d *= ipow(Int(x.p), x.valuation());
  l.cs.push_back({0, n, legendre(d, p), false, 0});
  return l;
}

namespace {

int eps_of_unit(const Rat& u, long p) {
  if (p == 2) return jacobi2(Int(unit_residue(u, 8)));
  return legendre(Int(unit_residue(u, p)), p);
}

void sort_locals(GenusSymbol& s) {
  std::sort(s.locals.begin(), s.locals.end(), [](const LocalSymbol& a, const LocalSymbol& b) { return a.p < b.p; });
}

// Unit multisets realizing a type I constituent, searched in increasing order.
std::optional<std::vector<long>> odd_units(int rank, int eps, int oddity) {
  static const long units[4] = {1, 3, 5, 7};
  std::vector<long> pick(rank, 0);
  std::function<bool(int, int, long, int)> rec = [&](int pos, int start, long sum, int sign) -> bool {
    if (pos == rank) return sum % 8 == oddity && sign == eps;
    for (int k = start; k < 4; ++k) {
      pick[pos] = units[k];
      if (rec(pos + 1, k, sum + units[k], sign * ((units[k] == 1 || units[k] == 7) ? 1 : -1))) return true;
    }
    return false;
  };
  if (rank > 0 && rec(0, 0, 0, 1)) return pick;
  return std::nullopt;
}

}  // namespace

bool realizable_2adic(int rank, int eps, bool odd, int oddity) {
  if (rank <= 0 || (eps != 1 && eps != -1) || oddity < 0 || oddity > 7) return false;
  if (!odd) return rank % 2 == 0 && oddity == 0;
  return odd_units(rank, eps, oddity).has_value();
}

LocalSymbol local_symbol(const JordanDecomposition& j) {
  LocalSymbol s;
  s.p = j.p;
  for (auto& b : j.blocks) {
    Constituent c;
    c.scale = b.scale;
    c.rank = b.rank;
    c.eps = eps_of_unit(determinant(b.unit_gram), j.p);
    if (j.p == 2 && b.odd_entries > 0) {
      c.odd = true;
      long t = 0;
      for (int i = 0; i < b.rank; ++i) {
        bool single = true;
        for (int k = 0; k < b.rank; ++k)
          if (k != i && b.unit_gram(i, k) != 0) single = false;
        if (single) t += unit_residue(b.unit_gram(i, i), 8);
      }
      c.oddity = static_cast<int>(t % 8);
    }
    s.cs.push_back(c);
  }
  return s;
}

LocalSymbol local_symbol(const GramLattice& l, long p) { return local_symbol(jordan_decompose(l, p)); }

GenusSymbol symbol_from_lattice(const GramLattice& l) {
  GenusSymbol s;
  s.n = l.dim();
  s.locals.push_back(local_symbol(l, 2));
  for (long p : prime_divisors(determinant(l)))
    if (p != 2) s.locals.push_back(local_symbol(l, p));
  return canonical(s);
}

namespace {

// Oddities of a compartment spread as the lexicographically least realizable tuple with the given total.
bool distribute(std::vector<Constituent*>& mem, int total) {
  std::vector<int> pick(mem.size());
  std::function<bool(size_t, int)> rec = [&](size_t k, int sum) -> bool {
    if (k == mem.size()) return sum % 8 == total;
    for (int t = 0; t < 8; ++t) {
      if (!realizable_2adic(mem[k]->rank, mem[k]->eps, true, t)) continue;
      pick[k] = t;
      if (rec(k + 1, sum + t)) return true;
    }
    return false;
  };
  if (!rec(0, 0)) return false;
  for (size_t k = 0; k < mem.size(); ++k) mem[k]->oddity = pick[k];
  return true;
}

LocalSymbol canonical_2adic_uncached(const LocalSymbol& s_in) {
  LocalSymbol s = s_in;
  int lo = s.min_scale(), hi = s.max_scale();
  int width = hi - lo + 1;
  std::vector<int> idx(width, -1);
  for (size_t k = 0; k < s.cs.size(); ++k) idx[s.cs[k].scale - lo] = static_cast<int>(k);
  auto is_odd = [&](int m) { return m >= 0 && m < width && idx[m] >= 0 && s.cs[idx[m]].odd; };

  std::vector<int> comp(width, -1);
  int ncomp = 0;
  for (int m = 0; m < width; ++m) {
    if (!is_odd(m)) continue;
    comp[m] = (m > 0 && is_odd(m - 1)) ? comp[m - 1] : ncomp++;
  }
  std::vector<std::vector<Constituent*>> members(ncomp);
  for (int m = 0; m < width; ++m)
    if (is_odd(m)) members[comp[m]].push_back(&s.cs[idx[m]]);

  std::vector<int> nz;
  for (int m = 0; m < width; ++m)
    if (idx[m] >= 0) nz.push_back(m);
  // For each linked pair of neighbouring constituents, the compartments whose total moves by 4.
  std::vector<std::pair<size_t, std::vector<int>>> walks;
  for (size_t x = 0; x + 1 < nz.size(); ++x) {
    bool linked = true;
    std::vector<int> shift(ncomp, 0);
    for (int m = nz[x]; m < nz[x + 1]; ++m) {
      if (!is_odd(m) && !is_odd(m + 1)) linked = false;
      else shift[is_odd(m) ? comp[m] : comp[m + 1]] ^= 1;
    }
    if (!linked) continue;
    std::vector<int> moved;
    for (int c = 0; c < ncomp; ++c)
      if (shift[c]) moved.push_back(c);
    walks.push_back({x, moved});
  }

  // State: signs of the nonzero constituents followed by compartment totals.
  auto apply = [&](const std::vector<int>& st) {
    for (size_t x = 0; x < nz.size(); ++x) s.cs[idx[nz[x]]].eps = st[x];
    for (int c = 0; c < ncomp; ++c)
      if (!distribute(members[c], st[nz.size() + c])) return false;
    for (auto& c : s.cs)
      if (!realizable_2adic(c.rank, c.eps, c.odd, c.oddity)) return false;
    return true;
  };
  std::vector<int> start;
  for (int m : nz) start.push_back(s.cs[idx[m]].eps);
  for (int c = 0; c < ncomp; ++c) {
    int t = 0;
    for (auto* k : members[c]) t += k->oddity;
    start.push_back(t % 8);
  }
  if (!apply(start)) throw std::logic_error("canonical_2adic: symbol not realizable: " + describe(s_in));
  std::set<std::vector<int>> seen = {start};
  std::vector<std::vector<int>> todo = {start};
  std::optional<LocalSymbol> best;
  while (!todo.empty()) {
    auto st = todo.back();
    todo.pop_back();
    apply(st);
    if (!best || s < *best) best = s;
    for (auto& [x, moved] : walks) {
      auto nx = st;
      nx[x] = -nx[x];
      nx[x + 1] = -nx[x + 1];
      for (int c : moved) nx[nz.size() + c] = (nx[nz.size() + c] + 4) % 8;
      if (seen.count(nx) || !apply(nx)) continue;
      seen.insert(nx);
      todo.push_back(nx);
    }
  }
  return *best;
}

}  // namespace

LocalSymbol canonical_2adic(const LocalSymbol& s) {
  if (s.cs.empty()) return s;
  static std::mutex mu;
  static std::map<LocalSymbol, LocalSymbol> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
  }
  LocalSymbol out = canonical_2adic_uncached(s);
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > 200000) cache.clear();
  cache.emplace(s, out);
  return out;
}

LocalSymbol canonical_local(const LocalSymbol& s) { return s.p == 2 ? canonical_2adic(s) : s; }

GenusSymbol canonical(const GenusSymbol& s) {
  GenusSymbol out = s;
  for (auto& l : out.locals) l = canonical_local(l);
  return out;
}

bool symbols_equal(const GenusSymbol& a, const GenusSymbol& b) { return canonical(a) == canonical(b); }

bool locals_equal(const LocalSymbol& a, const LocalSymbol& b) { return canonical_local(a) == canonical_local(b); }

Int determinant(const GenusSymbol& s) {
  Int d = 1;
  for (auto& l : s.locals) d *= ipow(Int(l.p), l.valuation());
  return d;
}

bool is_even(const GenusSymbol& s) {
  auto* l = s.local(2);
  if (!l) return false;
  auto* c = l->at(0);
  return c && !c->odd;
}

bool is_primitive(const GenusSymbol& s) {
  for (auto& l : s.locals)
    if (!l.at(0)) return false;
  return true;
}

bool is_squarefree(const GenusSymbol& s) {
  for (auto& l : s.locals)
    if (l.max_scale() >= 2) return false;
  return true;
}

int p_excess(const LocalSymbol& s) {
  long total = 0;
  for (auto& c : s.cs) {
    long q = mpz_fdiv_ui(ipow(Int(s.p), c.scale).get_mpz_t(), 8);
    total += c.rank * (q - 1);
    if (c.scale % 2 == 1 && c.eps == -1) total += 4;
  }
  return static_cast<int>(((total % 8) + 8) % 8);
}

int two_signature(const LocalSymbol& s) {
  long total = 0;
  for (auto& c : s.cs) {
    if (c.odd) total += c.oddity;
    if (c.scale % 2 != 0 && c.eps == -1) total += 4;
  }
  return static_cast<int>(((total % 8) + 8) % 8);
}

std::string validity_problem(const GenusSymbol& s) {
  if (s.n <= 0) return "dimension must be positive";
  const LocalSymbol* two = s.local(2);
  if (!two) return "missing 2-adic symbol";
  for (size_t i = 0; i < s.locals.size(); ++i) {
    auto& l = s.locals[i];
    if (!is_prime(l.p)) return "local symbol at non-prime " + std::to_string(l.p);
    if (i > 0 && s.locals[i - 1].p >= l.p) return "local symbols not sorted";
    if (l.rank() != s.n) return "rank mismatch at p=" + std::to_string(l.p);
    for (size_t k = 0; k < l.cs.size(); ++k) {
      auto& c = l.cs[k];
      if (c.rank <= 0) return "empty constituent";
      if (k > 0 && l.cs[k - 1].scale >= c.scale) return "constituents not sorted by scale";
      if (c.eps != 1 && c.eps != -1) return "bad sign";
      if (l.p != 2 && (c.odd || c.oddity != 0)) return "oddity at odd prime";
      if (l.p == 2 && !realizable_2adic(c.rank, c.eps, c.odd, c.oddity))
        return "2-adic constituent of scale " + std::to_string(c.scale) + " not realizable";
    }
  }
  Int det = determinant(s);
  int excess = 0;
  for (auto& l : s.locals) {
    Int unit = strip(det, l.p);
    int prod = 1;
    for (auto& c : l.cs) prod *= c.eps;
    int expect = l.p == 2 ? jacobi2(unit) : legendre(unit, l.p);
    if (prod != expect) return "determinant inconsistent with signs at p=" + std::to_string(l.p);
    if (l.p != 2) excess += p_excess(l);
  }
  if ((two_signature(*two) - s.n - excess) % 8 != 0) return "oddity relation fails";
  return "";
}

bool is_valid_genus_symbol(const GenusSymbol& s) { return validity_problem(s).empty(); }

GenusSymbol scale_symbol(const GenusSymbol& s_in, long p, int k) {
  GenusSymbol s = s_in;
  if (k == 0) return s;
  if (!s.local(p)) {
    if (p == 2) throw std::invalid_argument("scale_symbol: missing 2-adic symbol");
    LocalSymbol l;
    l.p = p;
    l.cs.push_back({0, s.n, legendre(determinant(s_in), p), false, 0});
    s.locals.push_back(l);
    sort_locals(s);
  }
  for (auto& l : s.locals) {
    if (l.p == p) {
      for (auto& c : l.cs) c.scale += k;
      continue;
    }
    if (k % 2 == 0) continue;
    for (auto& c : l.cs) {
      if (l.p == 2) {
        if (c.rank % 2) c.eps *= jacobi2(Int(p));
        if (c.odd) c.oddity = static_cast<int>(c.oddity * p % 8);
      } else if (c.rank % 2) {
        c.eps *= legendre(Int(p), l.p);
      }
    }
  }
  std::erase_if(s.locals, [](const LocalSymbol& l) { return l.p != 2 && l.cs.size() == 1 && l.cs[0].scale == 0; });
  return canonical(s);
}

GenusSymbol rescale_symbol(const GenusSymbol& s_in) {
  GenusSymbol s = s_in;
  std::vector<std::pair<long, int>> shifts;
  for (auto& l : s.locals)
    if (l.min_scale() != 0) shifts.push_back({l.p, l.min_scale()});
  for (auto [p, m] : shifts) s = scale_symbol(s, p, -m);
  return canonical(s);
}

std::vector<Rat> local_diagonal(const LocalSymbol& s) {
  std::vector<Rat> out;
  for (auto& c : s.cs) {
    Rat q = rpow(Rat(s.p), c.scale);
    if (s.p != 2) {
      long nonres = 2;
      while (legendre(Int(nonres), s.p) != -1) ++nonres;
      for (int i = 0; i + 1 < c.rank; ++i) out.push_back(q);
      out.push_back(q * (c.eps == 1 ? 1 : nonres));
    } else if (c.odd) {
      auto units = odd_units(c.rank, c.eps, c.oddity);
      if (!units) throw std::invalid_argument("local_diagonal: unrealizable constituent");
      for (long u : *units) out.push_back(q * u);
    } else {
      // H = <1,-1>, V = [[2,1],[1,2]] = <2,6> over Q_2.
      for (int i = 0; i + 2 < c.rank; i += 2) {
        out.push_back(q);
        out.push_back(-q);
      }
      if (c.eps == 1) {
        out.push_back(q);
        out.push_back(-q);
      } else {
        out.push_back(q * 2);
        out.push_back(q * 6);
      }
    }
  }
  return out;
}

SpaceInvariants space_invariants(const GenusSymbol& s) {
  SpaceInvariants inv;
  inv.n = s.n;
  inv.det_class = squarefree_part(determinant(s));
  for (auto& l : s.locals) {
    auto d = local_diagonal(l);
    if (hasse_invariant(d, l.p) == -1) inv.hasse_minus.insert(l.p);
  }
  return inv;
}

std::vector<LocalSymbol> enumerate_squarefree_local(long p, int n) {
  std::vector<LocalSymbol> out;
  if (p != 2) {
    for (int r0 = n - 1; r0 >= 1; --r0)
      for (int e0 : {1, -1})
        for (int e1 : {1, -1}) {
          LocalSymbol l;
          l.p = p;
          l.cs = {{0, r0, e0, false, 0}, {1, n - r0, e1, false, 0}};
          out.push_back(l);
        }
    return out;
  }
  auto options = [](int scale, int rank) {
    std::vector<Constituent> v;
    for (int e : {1, -1}) {
      if (realizable_2adic(rank, e, false, 0)) v.push_back({scale, rank, e, false, 0});
      for (int t = 0; t < 8; ++t)
        if (realizable_2adic(rank, e, true, t)) v.push_back({scale, rank, e, true, t});
    }
    return v;
  };
  std::set<LocalSymbol> seen;
  for (int r0 = n; r0 >= 1; --r0) {
    for (auto& c0 : options(0, r0)) {
      if (r0 == n) {
        LocalSymbol l{2, {c0}};
        if (seen.insert(canonical_2adic(l)).second) out.push_back(canonical_2adic(l));
        continue;
      }
      for (auto& c1 : options(1, n - r0)) {
        LocalSymbol l{2, {c0, c1}};
        auto c = canonical_2adic(l);
        if (seen.insert(c).second) out.push_back(c);
      }
    }
  }
  return out;
}

std::string symbol_key(const GenusSymbol& s) { return print_symbol(canonical(rescale_symbol(s))); }

std::string describe(const LocalSymbol& s) {
  std::string out = "p=" + std::to_string(s.p) + ":";
  for (auto& c : s.cs) {
    out += " [" + std::to_string(c.scale) + " " + (c.eps == 1 ? "+" : "-") + std::to_string(c.rank);
    if (c.odd) out += " t" + std::to_string(c.oddity);
    out += "]";
  }
  return out;
}

}  // namespace scl
