#pragma once

#include <set>
#include <vector>

#include "scl/exact_real.hpp"
#include "scl/genus.hpp"

namespace scl {

// Exact standard mass std_n(D), D = (-1)^ceil(n/2) det.
ExactReal standard_mass(int n, const Int& D);
Int mass_discriminant(const GenusSymbol& sym);

// m_p(L) * std_p(L)^{-1} for the local symbol at p; n is the rank.
ExactReal local_factor(const LocalSymbol& l);
ExactReal local_factor(const GenusSymbol& sym, long p);

// Exact mass (sum of 1/#Aut over the genus).
Rat mass(const GenusSymbol& sym);

// mass <= 1/2 and 1/mass an even integer.
bool mass_condition(const Rat& m);
bool mass_condition(const GenusSymbol& sym);

// Lower bound for std_n(D) over all D.
Interval s_lower(int n, int digits = 30);
// Smallest 2-adic local factor among square-free 2-adic symbols of rank n.
ExactReal t_min(int n);
// Local bounds: mass(L) >= a_n(p) mass(K) for a square-free p-part and >= b_n(p) mass(K) for len_p = 3.
Interval a_bound(int n, long p, int digits = 30);
Interval b_bound(int n, long p, int digits = 30);

std::set<long> B_set(int n);
long maxprime(int n);

struct MassBounds {
  int n = 0;
  Interval s_lower;
  ExactReal t_min;
  std::set<long> B_set;
  long maxprime = 0;
};
MassBounds mass_bounds(int n);

// Lower bound for the mass of any genus whose 2-adic symbol is u, whose odd local symbols
// include v, and which has a further nontrivial square-free q-part.
Interval minimal_mass(const LocalSymbol& u, const std::vector<LocalSymbol>& v, long q, int digits = 30);
// minimal_mass(u, v, q) <= bound, decided exactly.
bool minimal_mass_at_most(const LocalSymbol& u, const std::vector<LocalSymbol>& v, long q, const Rat& bound);

// Decides x <= bound (or x < bound) for a value given by an enclosure function of the
// precision, escalating precision until the enclosure is decisive.
template <class F>
bool decide_at_most(F enclose, const Rat& bound, bool strict = false) {
  for (int digits = 20; digits <= 160; digits *= 2) {
    Interval v = enclose(digits);
    if (strict ? v.hi < bound : v.hi <= bound) return true;
    if (strict ? v.lo >= bound : v.lo > bound) return false;
  }
  throw std::runtime_error("decide_at_most: comparison undecidable at maximal precision");
}

}  // namespace scl
