#pragma once

#include <string>

#include "scl/arith.hpp"

namespace scl {

// Closed interval [lo, hi] with rational endpoints.
struct Interval {
  Rat lo, hi;

  Interval() = default;
  Interval(const Rat& x) : lo(x), hi(x) {}
  Interval(const Rat& l, const Rat& h);

  bool certainly_below(const Rat& x) const { return hi < x; }
  bool certainly_at_most(const Rat& x) const { return hi <= x; }
  bool certainly_above(const Rat& x) const { return lo > x; }
  Rat width() const { return hi - lo; }
  // Outward rounding to dyadic endpoints with about the given number of significant bits.
  Interval rounded(int bits) const;
  std::string str(int digits = 12) const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
// b must not contain 0.
Interval operator/(const Interval& a, const Interval& b);
Interval pow(const Interval& a, int e);

// Enclosures with width at most about 10^-digits.
Interval pi_interval(int digits);
Interval sqrt_interval(const Rat& x, int digits);
Interval zeta_interval(int s, int digits);

// Value q * pi^(half_pi/2) * sqrt(rad) with rad a positive square-free integer.
class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(const Rat& q) : q_(q) {}

  static ExactReal sqrt_of(const Int& a);
  static ExactReal pi_power(int half_pi);

  const Rat& coefficient() const { return q_; }
  int half_pi() const { return half_pi_; }
  const Int& radical() const { return rad_; }

  bool is_rational() const { return half_pi_ == 0 && rad_ == 1; }
  // Throws std::logic_error unless is_rational().
  Rat to_rational() const;
  Interval enclose(int digits) const;
  std::string str() const;

  ExactReal operator*(const ExactReal& o) const;
  ExactReal operator/(const ExactReal& o) const;
  ExactReal pow(int e) const;

 private:
  Rat q_ = 1;
  int half_pi_ = 0;
  Int rad_ = 1;
};

// Compares two values without pi factors (or with equal pi powers); -1, 0, 1.
int compare(const ExactReal& a, const ExactReal& b);

// Bernoulli numbers with B_1 = -1/2; memoized, thread-safe.
Rat bernoulli(int k);
// zeta(2k) exactly.
ExactReal zeta_even(int k);
// Gamma(j/2) for j >= 1.
ExactReal gamma_half(int j);

}  // namespace scl
