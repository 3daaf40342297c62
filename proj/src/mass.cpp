#include "scl/mass.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace scl {

namespace {

// 1 / M_p(species): 2 prod_{k<s}(1 - p^-2k), times (1 - sign p^-s) for even |species|.
Rat species_factor(int species, long p) {
  if (species == 0) return 1;
  int a = std::abs(species);
  int s = (a + 1) / 2;
  Rat inv = 2;
  for (int k = 1; k < s; ++k) inv *= 1 - Rat(1) / Rat(ipow(Int(p), 2 * k));
  if (a % 2 == 0) inv *= 1 - Rat(species > 0 ? 1 : -1) / Rat(ipow(Int(p), s));
  return 1 / inv;
}

// Species of the p^i-modular pieces at p = 2, over all scales from min-1 to max+1
// including empty ones (Conway-Sloane, SPLAG ch. 16, table 2).
std::vector<int> species_2adic(const LocalSymbol& l) {
  std::vector<int> out;
  auto odd_at = [&](int i) {
    auto* c = l.at(i);
    return c && c->odd;
  };
  for (int i = l.min_scale() - 1; i <= l.max_scale() + 1; ++i) {
    const Constituent* c = l.at(i);
    int r = c ? c->rank : 0;
    bool odd = c && c->odd;
    bool free = !odd_at(i - 1) && !odd_at(i + 1);
    int o = c ? (c->oddity + (c->eps == -1 ? 4 : 0)) % 8 : 0;
    int t = (!odd || r % 2 == 1) ? r / 2 : r / 2 - 1;
    int sp;
    if (free && (o == 0 || o == 1 || o == 7)) sp = 2 * t;
    else if (free && (o == 3 || o == 4 || o == 5)) sp = -2 * t;
    else sp = 2 * t + 1;
    out.push_back(sp);
  }
  return out;
}

// |L(s, chi_D0)| from generalized Bernoulli numbers; chi_D0(-1) = (-1)^s is required.
ExactReal l_value(int s, const Int& d0) {
  static std::mutex mu;
  static std::map<std::pair<int, Int>, ExactReal> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({s, d0});
    if (it != memo.end()) return it->second;
  }
  Int f = abs(d0);
  if (!f.fits_slong_p()) throw std::runtime_error("l_value: conductor too large");
  long fl = f.get_si();
  std::vector<Int> power_sum(s + 1, 0);
  for (long a = 1; a <= fl; ++a) {
    int chi = mpz_kronecker_si(d0.get_mpz_t(), a);
    if (chi == 0) continue;
    Int ap = 1;
    for (int j = 0; j <= s; ++j) {
      if (chi > 0) power_sum[j] += ap;
      else power_sum[j] -= ap;
      ap *= a;
    }
  }
  // B_{s,chi} = sum_k C(s,k) B_k f^(k-1) sum_a chi(a) a^(s-k)
  Rat b = 0;
  for (int k = 0; k <= s; ++k) b += Rat(binomial(s, k)) * bernoulli(k) * rpow(Rat(f), k - 1) * Rat(power_sum[s - k]);
  // |L(s,chi)| = sqrt(f)/2 (2 pi / f)^s |B_{s,chi}| / s!
  Rat c = abs(b) * rpow(Rat(2), s) / (2 * rpow(Rat(f), s) * Rat(factorial(s)));
  ExactReal v = ExactReal(c) * ExactReal::sqrt_of(f) * ExactReal::pi_power(2 * s);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(s, d0), v);
  return v;
}

// prod over odd primes p not dividing D of (1 - (D/p) p^-s)^{-1}.
ExactReal zeta_d(int s, const Int& D) {
  Int d = squarefree_part(D);
  Int d0 = (mpz_fdiv_ui(d.get_mpz_t(), 4) == 1) ? d : 4 * d;
  ExactReal l;
  if (d0 == 1) {
    if (s % 2 != 0) throw std::logic_error("zeta_d: trivial character with odd s");
    l = zeta_even(s / 2);
  } else {
    l = l_value(s, d0);
  }
  int chi2 = mpz_kronecker_si(d0.get_mpz_t(), 2);
  Rat corr = 1 - Rat(chi2) / Rat(ipow(Int(2), s));
  for (long p : prime_divisors(D)) {
    if (p == 2 || mpz_divisible_ui_p(d0.get_mpz_t(), p)) continue;
    int chi = mpz_kronecker_si(d0.get_mpz_t(), p);
    corr *= 1 - Rat(chi) / Rat(ipow(Int(p), s));
  }
  return l * ExactReal(corr);
}

}  // namespace

ExactReal standard_mass(int n, const Int& D) {
  if (n < 3) throw std::invalid_argument("standard_mass: dimension must be at least 3");
  if (D == 0) throw std::invalid_argument("standard_mass: D must be nonzero");
  int s = (n + 1) / 2;
  ExactReal v = ExactReal(2) * ExactReal::pi_power(-n * (n + 1) / 2);
  for (int j = 1; j <= n; ++j) v = v * gamma_half(j);
  for (int k = 1; k < s; ++k) v = v * zeta_even(k);
  if (n % 2 == 0) v = v * zeta_d(s, D);
  return v;
}

Int mass_discriminant(const GenusSymbol& sym) {
  int s = (sym.n + 1) / 2;
  Int d = determinant(sym);
  return s % 2 ? Int(-d) : d;
}

namespace {

ExactReal compute_local_factor(const LocalSymbol& l) {
  long p = l.p;
  int n = l.rank();
  std::vector<int> species;
  if (p == 2) {
    species = species_2adic(l);
  } else {
    for (auto& c : l.cs) {
      int sq = legendre(Int(c.rank / 2 % 2 ? -1 : 1), p);
      species.push_back(c.rank % 2 == 0 && c.eps != sq ? -c.rank : c.rank);
    }
  }
  Rat m = 1;
  for (int sp : species) m *= species_factor(sp, p);
  long cross = 0;
  for (size_t i = 0; i < l.cs.size(); ++i)
    for (size_t j = i + 1; j < l.cs.size(); ++j)
      cross += static_cast<long>(l.cs[j].scale - l.cs[i].scale) * l.cs[i].rank * l.cs[j].rank;
  if (p == 2) {
    // 2^(n(I,I) - n(II)): adjacent pairs of type I constituents, total rank of type II ones.
    int n_ii = 0, n_type2 = 0;
    for (auto& c : l.cs) {
      if (!c.odd) n_type2 += c.rank;
      auto* next = l.at(c.scale + 1);
      if (c.odd && next && next->odd) ++n_ii;
    }
    m *= rpow(Rat(2), n_ii - n_type2);
  }
  int s = (n + 1) / 2;
  Rat stdinv = 2;
  for (int j = 2; j <= s; ++j) stdinv *= 1 - Rat(1) / Rat(ipow(Int(p), 2 * j - 2));
  ExactReal v(m * stdinv * Rat(ipow(Int(p), cross / 2)));
  if (cross % 2) v = v * ExactReal::sqrt_of(p);
  return v;
}

}  // namespace

ExactReal local_factor(const LocalSymbol& l) {
  static std::mutex mu;
  static std::map<LocalSymbol, ExactReal> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(l);
    if (it != memo.end()) return it->second;
  }
  ExactReal v = compute_local_factor(l);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(l, v);
  return v;
}

ExactReal local_factor(const GenusSymbol& sym, long p) {
  if (auto* l = sym.local(p)) return local_factor(*l);
  LocalSymbol triv;
  triv.p = p;
  triv.cs.push_back(Constituent{0, sym.n, 1, false, 0});
  if (p == 2) throw std::invalid_argument("local_factor: symbol has no 2-adic part");
  return local_factor(triv);
}

Rat mass(const GenusSymbol& sym) {
  std::string problem = validity_problem(sym);
  if (!problem.empty()) throw std::invalid_argument("mass: invalid symbol: " + problem);
  ExactReal v = standard_mass(sym.n, mass_discriminant(sym));
  for (auto& l : sym.locals) v = v * local_factor(l);
  return v.to_rational();
}

bool mass_condition(const Rat& m) {
  if (m <= 0 || m > Rat(1, 2)) return false;
  Rat inv = 1 / m;
  return inv.get_den() == 1 && mpz_even_p(inv.get_num_mpz_t());
}

bool mass_condition(const GenusSymbol& sym) { return mass_condition(mass(sym)); }

}  // namespace scl
