#pragma once

#include <vector>

#include "scl/lattice.hpp"

namespace scl {

// One p^scale-modular constituent. The stored Gram is the unit part (block / p^scale),
// block diagonal with 1x1 entries and, at p = 2, 2x2 even blocks.
struct JordanBlock {
  int scale = 0;
  int rank = 0;
  RatMatrix unit_gram;
  int odd_entries = 0;  // number of 1x1 pieces; at p = 2 nonzero means type I
};

struct JordanDecomposition {
  long p = 0;
  std::vector<JordanBlock> blocks;  // strictly increasing scales
};

// Exact rational elimination with p-integral transforms; works for rational Gram
// matrices (negative scales allowed).
JordanDecomposition jordan_decompose(const RatMatrix& gram, long p);
JordanDecomposition jordan_decompose(const GramLattice& l, long p);

int len_p(const GramLattice& l, long p);
bool is_padically_squarefree(const GramLattice& l, long p);
bool is_squarefree(const GramLattice& l);
bool is_strongly_primitive(const GramLattice& l);

}  // namespace scl
