#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <stdexcept>

#include "scl/mass.hpp"

namespace scl {

namespace {

// 2 pi^{-n(n+1)/4} prod Gamma(j/2) prod_{k=1}^{s-1} zeta(2k)
ExactReal standard_core(int n) {
  int s = (n + 1) / 2;
  ExactReal v = ExactReal(2) * ExactReal::pi_power(-n * (n + 1) / 2);
  for (int j = 1; j <= n; ++j) v = v * gamma_half(j);
  for (int k = 1; k < s; ++k) v = v * zeta_even(k);
  return v;
}

// 1/2 (1 + 1/p)^{-2} (1 - p^-2)^{s-1} times p^{e/2}.
ExactReal local_bound_core(int n, long p, int half_exponent) {
  int s = (n + 1) / 2;
  Rat c = Rat(1, 2) * Rat(p * p, (p + 1) * (p + 1)) * rpow(1 - Rat(1, p * p), s - 1);
  ExactReal v(c * Rat(ipow(Int(p), half_exponent / 2)));
  if (half_exponent % 2) v = v * ExactReal::sqrt_of(p);
  return v;
}

void check_dim(int n) {
  if (n < 3) throw std::invalid_argument("mass bounds need dimension at least 3");
}

}  // namespace

Interval s_lower(int n, int digits) {
  check_dim(n);
  Interval v = standard_core(n).enclose(digits);
  if (n % 2 == 0) {
    // zeta_D(s) >= zeta(2s) / zeta(s)
    int s = n / 2;
    v = v * zeta_even(s).enclose(digits) / zeta_interval(s, digits);
  }
  return v;
}

ExactReal t_min(int n) {
  check_dim(n);
  std::optional<ExactReal> best;
  for (auto& l : enumerate_squarefree_local(2, n)) {
    ExactReal f = local_factor(l);
    if (!best || compare(f, *best) < 0) best = f;
  }
  return *best;
}

Interval a_bound(int n, long p, int digits) {
  check_dim(n);
  Interval v = local_bound_core(n, p, n - 1).enclose(digits);
  if (n % 2 == 0) {
    int s = n / 2;
    v = v * zeta_even(s).enclose(digits) / pow(zeta_interval(s, digits), 2);
  }
  return v;
}

Interval b_bound(int n, long p, int digits) {
  check_dim(n);
  Interval v = local_bound_core(n, p, 2 * (n - 1)).enclose(digits);
  if (n % 2 == 0) {
    int s = n / 2;
    v = v * zeta_even(s).enclose(digits) / pow(zeta_interval(s, digits), 2);
  }
  return v;
}

std::set<long> B_set(int n) {
  std::set<long> out;
  // a_n(p) increases with p, so the scan stops at the first p with a_n(p) >= 1.
  for (long p = 3;; p = next_prime(p)) {
    if (!decide_at_most([&](int d) { return a_bound(n, p, d); }, 1, true)) break;
    out.insert(p);
  }
  return out;
}

long maxprime(int n) {
  auto b = B_set(n);
  ExactReal t = t_min(n);
  auto base = [&](int d) {
    Interval c = s_lower(n, d) * t.enclose(d);
    for (long q : b) c = c * a_bound(n, q, d);
    return c;
  };
  long best = 0;
  for (long p = 3;; p = next_prime(p)) {
    if (!decide_at_most([&](int d) { return base(d) * a_bound(n, p, d); }, Rat(1, 2))) break;
    best = p;
  }
  return best;
}

MassBounds mass_bounds(int n) {
  MassBounds m;
  m.n = n;
  m.s_lower = s_lower(n);
  m.t_min = t_min(n);
  m.B_set = B_set(n);
  m.maxprime = maxprime(n);
  return m;
}

namespace {

// s_lower(n) * a_n(q), memoized.
Interval mass_floor(int n, long q, int digits) {
  static std::mutex mu;
  static std::map<std::tuple<int, long, int>, Interval> memo;
  auto key = std::make_tuple(n, q, digits);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  Interval v = (s_lower(n, digits) * a_bound(n, q, digits)).rounded(4 * digits + 16);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, v);
  return v;
}

}  // namespace

Interval minimal_mass(const LocalSymbol& u, const std::vector<LocalSymbol>& v, long q, int digits) {
  ExactReal f = local_factor(u);
  for (auto& l : v) f = f * local_factor(l);
  return mass_floor(u.rank(), q, digits) * f.enclose(digits);
}

bool minimal_mass_at_most(const LocalSymbol& u, const std::vector<LocalSymbol>& v, long q, const Rat& bound) {
  ExactReal f = local_factor(u);
  for (auto& l : v) f = f * local_factor(l);
  // All factors are positive; compare squares to stay rational.
  Rat f2 = f.coefficient() * f.coefficient() * f.radical();
  Rat b2 = bound * bound;
  for (int digits = 20; digits <= 160; digits *= 2) {
    Interval fl = mass_floor(u.rank(), q, digits);
    if (fl.hi * fl.hi * f2 <= b2) return true;
    if (fl.lo * fl.lo * f2 > b2) return false;
  }
  throw std::runtime_error("minimal_mass_at_most: comparison undecidable at maximal precision");
}

}  // namespace scl
