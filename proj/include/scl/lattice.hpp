#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "scl/matrix.hpp"

namespace scl {

// Positive definite integral lattice given by its Gram matrix.
class GramLattice {
 public:
  GramLattice() = default;
  explicit GramLattice(IntMatrix gram);

  int dim() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const Int& operator()(int i, int j) const { return gram_(i, j); }

  bool operator==(const GramLattice& o) const { return gram_ == o.gram_; }

  static GramLattice identity(int n);
  static GramLattice diagonal(const std::vector<long>& d);

 private:
  IntMatrix gram_;
};

bool is_symmetric(const IntMatrix& m);
bool is_positive_definite(const IntMatrix& m);

Int determinant(const GramLattice& l);
// Gram matrix of the dual lattice in the dual basis.
RatMatrix dual(const GramLattice& l);

Int content(const IntMatrix& m);
bool is_primitive(const GramLattice& l);
bool is_even(const GramLattice& l);
GramLattice rescale_primitive(const IntMatrix& gram);
GramLattice rescale_primitive(const RatMatrix& gram);

// Lattice spanned by rational coordinate rows (relative to the basis of l), rescaled to be primitive.
GramLattice span_rescaled(const GramLattice& l, const RatMatrix& rows);

GramLattice partial_dual(const GramLattice& l, long p);

// {x in L : x mod p in W} where W is spanned by the given vectors of F_p^n.
GramLattice sublattice_from_fp_subspace(const GramLattice& l, long p, const std::vector<std::vector<long>>& subspace);
// Basis rows of that sublattice in coordinates of l.
IntMatrix sublattice_basis(int n, long p, const std::vector<std::vector<long>>& subspace);

// Overlattice search in L^#/L. With scale 1 the test is integrality of beta;
// with even=true the overlattice must stay even.
bool admits_overlattice(const IntMatrix& gram, bool even);
// Gram matrix of an overlattice of prime index with the same property, if one exists.
std::optional<IntMatrix> overlattice_step(const IntMatrix& gram, bool even);
bool is_maximal(const GramLattice& l);
bool is_qf_maximal(const GramLattice& l);

GramLattice lll_reduce(const GramLattice& l);

GramLattice read_gram(std::istream& in);
std::string write_gram(const GramLattice& l);

}  // namespace scl
