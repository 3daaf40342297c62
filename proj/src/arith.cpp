#include "scl/arith.hpp"

#include <stdexcept>

namespace scl {

bool is_prime(long p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

long next_prime(long p) {
  long q = p + 1;
  while (!is_prime(q)) ++q;
  return q;
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<char> sieve(static_cast<size_t>(bound) + 1, 1);
  for (long i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (long j = i * i; j <= bound; j += i) sieve[j] = 0;
  }
  return out;
}

std::map<Int, int> factor(const Int& n_in) {
  std::map<Int, int> out;
  Int n = abs(n_in);
  if (n == 0) throw std::invalid_argument("factor: zero");
  for (unsigned long d = 2; d < 2000000; d += (d == 2 ? 1 : 2)) {
    if (n == 1) break;
    if (Int(d) * d > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      out[Int(d)]++;
      n /= d;
    }
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
      throw std::runtime_error("factor: cofactor too large for trial division");
    out[n]++;
  }
  return out;
}

std::vector<long> prime_divisors(const Int& n) {
  std::vector<long> out;
  for (auto& [p, e] : factor(n)) out.push_back(p.get_si());
  return out;
}

int valuation(const Int& a, long p) {
  if (a == 0) return kInfiniteValuation;
  Int t = a;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

int valuation(const Rat& a, long p) {
  if (a == 0) return kInfiniteValuation;
  return valuation(a.get_num(), p) - valuation(a.get_den(), p);
}

Int strip(const Int& a, long p) {
  if (a == 0) return a;
  Int t = a;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
  return t;
}

int legendre(const Int& a, long p) {
  Int pp(p);
  return mpz_legendre(Int(a % pp + pp).get_mpz_t(), pp.get_mpz_t());
}

int kronecker(const Int& a, const Int& b) { return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t()); }

int jacobi2(const Int& u) {
  long r = mpz_fdiv_ui(u.get_mpz_t(), 8);
  if (r % 2 == 0) throw std::invalid_argument("jacobi2: even argument");
  return (r == 1 || r == 7) ? 1 : -1;
}

long unit_residue(const Rat& u, long m) {
  Int mm(m), inv;
  Int den = u.get_den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mm.get_mpz_t()) == 0)
    throw std::invalid_argument("unit_residue: denominator not invertible");
  Int r = u.get_num() * inv;
  return mpz_fdiv_ui(r.get_mpz_t(), m);
}

Int squarefree_part(const Int& a) {
  Int out = a < 0 ? Int(-1) : Int(1);
  for (auto& [p, e] : factor(a))
    if (e % 2) out *= p;
  return out;
}

Int isqrt(const Int& a) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

bool is_square(const Int& a) { return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()); }

Int factorial(long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Int binomial(long n, long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rat rpow(const Rat& b, long e) {
  Rat base = e < 0 ? Rat(1) / b : b;
  unsigned long k = e < 0 ? -e : e;
  Rat r(ipow(base.get_num(), k), ipow(base.get_den(), k));
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace scl
