#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace scl {

using Int = mpz_class;
using Rat = mpq_class;

bool is_prime(long p);
long next_prime(long p);
std::vector<long> primes_up_to(long bound);

// Trial division; throws if a cofactor above the sieve limit is not prime.
std::map<Int, int> factor(const Int& n);
std::vector<long> prime_divisors(const Int& n);

// p-adic valuation; v_p(0) is reported as a large sentinel.
int valuation(const Int& a, long p);
int valuation(const Rat& a, long p);
constexpr int kInfiniteValuation = 1 << 20;

// a / p^v_p(a), sign kept.
Int strip(const Int& a, long p);

// Legendre symbol (a|p) for odd prime p; 0 when p | a.
int legendre(const Int& a, long p);
int kronecker(const Int& a, const Int& b);

// +1 iff the odd unit u is congruent to 1 or 7 mod 8.
int jacobi2(const Int& u);

// Residue of a p-adic unit rational num/den modulo m (m a power of p).
long unit_residue(const Rat& u, long m);

Int squarefree_part(const Int& a);
Int isqrt(const Int& a);
bool is_square(const Int& a);

Int factorial(long n);
Int binomial(long n, long k);
Int ipow(const Int& b, unsigned long e);
Rat rpow(const Rat& b, long e);

std::string to_string(const Rat& q);

}  // namespace scl
