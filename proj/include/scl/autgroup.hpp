#pragma once

#include <vector>

#include "scl/lattice.hpp"

namespace scl {

struct ShortVectorSet {
  Int bound;
  // One vector per +- pair, coordinates relative to the lattice basis.
  std::vector<std::vector<long>> vectors;
  std::vector<Int> norms;
};

// All nonzero v with Q(v) = v G v^T <= bound, enumerated with exact rational bounds.
ShortVectorSet short_vectors(const GramLattice& l, const Int& bound);

// Order of the isometry group of the lattice.
Int aut_group_order(const GramLattice& l);

// mass(genus of l) == 1 / #Aut(l).
bool is_single_class(const GramLattice& l);

}  // namespace scl
