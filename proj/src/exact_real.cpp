#include "scl/exact_real.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace scl {

namespace {

const char* kPiDigits =
    "31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679"
    "82148086513282306647093844609550582231725359408128481117450284102701938521105559644622948954930381964";
constexpr int kPiDigitCount = 199;

Int pow10(int d) { return ipow(Int(10), d); }

}  // namespace

Interval::Interval(const Rat& l, const Rat& h) : lo(l), hi(h) {
  if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
}

std::string Interval::str(int digits) const {
  auto dec = [&](const Rat& x) {
    Int s = pow10(digits);
    Rat y = x * s;
    Int f = y.get_num() / y.get_den();
    std::string sign = f < 0 ? "-" : "";
    Int a = abs(f);
    std::string t = a.get_str();
    if (static_cast<int>(t.size()) <= digits) t = std::string(digits + 1 - t.size(), '0') + t;
    return sign + t.substr(0, t.size() - digits) + "." + t.substr(t.size() - digits);
  };
  return "[" + dec(lo) + ", " + dec(hi) + "]";
}

Interval Interval::rounded(int bits) const {
  auto round = [&](const Rat& x, bool up) {
    if (x == 0) return x;
    long mag = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
    long k = bits - mag;
    Rat scaled = x;
    if (k >= 0) scaled *= Rat(ipow(Int(2), k));
    else scaled /= Rat(ipow(Int(2), -k));
    Int f;
    if (up) mpz_cdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    else mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rat r(f);
    if (k >= 0) r /= Rat(ipow(Int(2), k));
    else r *= Rat(ipow(Int(2), -k));
    return r;
  };
  return Interval(round(lo, false), round(hi, true));
}

Interval operator+(const Interval& a, const Interval& b) { return Interval(a.lo + b.lo, a.hi + b.hi); }

Interval operator*(const Interval& a, const Interval& b) {
  Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return Interval(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0 && b.hi >= 0) throw std::domain_error("Interval division by an interval containing 0");
  return a * Interval(1 / b.hi, 1 / b.lo);
}

Interval pow(const Interval& a, int e) {
  if (e < 0) return Interval(1) / pow(a, -e);
  Interval r(1);
  for (int i = 0; i < e; ++i) r = r * a;
  return r;
}

Interval pi_interval(int digits) {
  if (digits > kPiDigitCount - 1) throw std::runtime_error("pi_interval: precision beyond stored digits");
  Int num(std::string(kPiDigits, digits + 1));
  Int den = pow10(digits);
  return Interval(Rat(num, den), Rat(num + 1, den));
}

Interval sqrt_interval(const Rat& x, int digits) {
  if (x < 0) throw std::domain_error("sqrt_interval: negative argument");
  // floor(sqrt(x * 100^d)) / 10^d <= sqrt(x) <= (that + 1) / 10^d
  Int s = pow10(digits);
  Rat y = x * s * s;
  Int r = isqrt(y.get_num() / y.get_den());
  return Interval(Rat(r, s), Rat(r + 1, s));
}

Interval zeta_interval(int s, int digits) {
  if (s < 2) throw std::domain_error("zeta_interval: s must be at least 2");
  if (s % 2 == 0) return zeta_even(s / 2).enclose(digits);
  // Euler-Maclaurin at N; for real s the remainder is bounded by the first omitted term.
  long N = std::max(10, digits);
  Rat sum = 0;
  for (long k = 1; k < N; ++k) sum += Rat(1) / Rat(ipow(Int(k), s));
  Rat nn(N);
  sum += 1 / (Rat(s - 1) * rpow(nn, s - 1)) + 1 / (2 * rpow(nn, s));
  Rat eps(1, pow10(digits + 2));
  Rat rising = s;  // s (s+1) ... (s+2j-2)
  for (int j = 1;; ++j) {
    Rat term = bernoulli(2 * j) / Rat(factorial(2 * j)) * rising / rpow(nn, s + 2 * j - 1);
    if (abs(term) < eps) return Interval(sum - abs(term), sum + abs(term));
    sum += term;
    rising *= Rat((s + 2 * j - 1) * (s + 2 * j));
    if (j > 4 * digits + 100) throw std::runtime_error("zeta_interval: no convergence");
  }
}

ExactReal ExactReal::sqrt_of(const Int& a) {
  if (a <= 0) throw std::domain_error("ExactReal::sqrt_of: argument must be positive");
  ExactReal r;
  Int sq = squarefree_part(a);
  r.rad_ = sq;
  r.q_ = Rat(isqrt(a / sq));
  return r;
}

ExactReal ExactReal::pi_power(int half_pi) {
  ExactReal r;
  r.half_pi_ = half_pi;
  return r;
}

Rat ExactReal::to_rational() const {
  if (!is_rational()) throw std::logic_error("ExactReal::to_rational: value is not rational: " + str());
  return q_;
}

Interval ExactReal::enclose(int digits) const {
  int extra = 6 + std::abs(half_pi_);
  Interval v(q_);
  if (rad_ != 1) v = v * sqrt_interval(Rat(rad_), digits + extra);
  if (half_pi_ != 0) {
    Interval pi = pi_interval(digits + extra);
    Interval pw = scl::pow(pi, half_pi_ / 2);
    if (half_pi_ % 2 != 0) {
      Interval root(sqrt_interval(pi.lo, digits + extra).lo, sqrt_interval(pi.hi, digits + extra).hi);
      pw = pw * (half_pi_ > 0 ? root : Interval(1) / root);
    }
    v = v * pw;
  }
  return v.rounded(4 * digits + 16);
}

std::string ExactReal::str() const {
  std::string s = to_string(q_);
  if (rad_ != 1) s += "*sqrt(" + rad_.get_str() + ")";
  if (half_pi_ != 0) s += "*pi^(" + std::to_string(half_pi_) + "/2)";
  return s;
}

ExactReal ExactReal::operator*(const ExactReal& o) const {
  ExactReal r;
  Int g;
  mpz_gcd(g.get_mpz_t(), rad_.get_mpz_t(), o.rad_.get_mpz_t());
  r.q_ = q_ * o.q_ * g;
  r.rad_ = (rad_ / g) * (o.rad_ / g);
  r.half_pi_ = half_pi_ + o.half_pi_;
  return r;
}

ExactReal ExactReal::operator/(const ExactReal& o) const {
  if (o.q_ == 0) throw std::domain_error("ExactReal: division by zero");
  ExactReal inv;
  inv.q_ = 1 / (o.q_ * o.rad_);
  inv.rad_ = o.rad_;
  inv.half_pi_ = -o.half_pi_;
  return *this * inv;
}

ExactReal ExactReal::pow(int e) const {
  if (e < 0) return ExactReal(1) / pow(-e);
  ExactReal r(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

int compare(const ExactReal& a, const ExactReal& b) {
  if (a.half_pi() != b.half_pi()) throw std::invalid_argument("compare: different powers of pi");
  int sa = sgn(a.coefficient()), sb = sgn(b.coefficient());
  if (sa != sb) return sa < sb ? -1 : 1;
  Rat x = a.coefficient() * a.coefficient() * a.radical();
  Rat y = b.coefficient() * b.coefficient() * b.radical();
  int c = x < y ? -1 : (x > y ? 1 : 0);
  return sa >= 0 ? c : -c;
}

Rat bernoulli(int k) {
  static std::mutex mu;
  static std::vector<Rat> memo = {Rat(1)};
  if (k < 0) throw std::invalid_argument("bernoulli: negative index");
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(memo.size()) <= k) {
    int m = static_cast<int>(memo.size());
    Rat s = 0;
    for (int j = 0; j < m; ++j) s += Rat(binomial(m + 1, j)) * memo[j];
    memo.push_back(-s / (m + 1));
  }
  return memo[k];
}

ExactReal zeta_even(int k) {
  if (k < 1) throw std::invalid_argument("zeta_even: k must be positive");
  // zeta(2k) = (-1)^(k+1) B_2k (2pi)^2k / (2 (2k)!)
  Rat c = bernoulli(2 * k) * Rat(ipow(Int(2), 2 * k)) / (2 * Rat(factorial(2 * k)));
  if (k % 2 == 0) c = -c;
  return ExactReal(c) * ExactReal::pi_power(4 * k);
}

ExactReal gamma_half(int j) {
  if (j < 1) throw std::invalid_argument("gamma_half: j must be positive");
  if (j % 2 == 0) return ExactReal(Rat(factorial(j / 2 - 1)));
  long m = (j - 1) / 2;
  // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
  Rat c(factorial(2 * m), ipow(Int(4), m) * factorial(m));
  c.canonicalize();
  return ExactReal(c) * ExactReal::pi_power(1);
}

}  // namespace scl
