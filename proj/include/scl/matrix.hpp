#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scl/arith.hpp"

namespace scl {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix p(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (int j = 0; j < o.c_; ++j) p(i, j) += (*this)(i, k) * o(k, j);
      }
    return p;
  }

  void swap_rows(int i, int j) {
    for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rational(const IntMatrix& m);

// B * G * B^T.
IntMatrix congruent(const IntMatrix& b, const IntMatrix& g);
RatMatrix congruent(const RatMatrix& b, const RatMatrix& g);

Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);

// Row-style Hermite normal form of the lattice spanned by the rows; zero rows dropped.
IntMatrix hermite_basis(const IntMatrix& gens);
// Same for rational generators (common denominator cleared and restored).
RatMatrix hermite_basis(const RatMatrix& gens);

struct LllResult {
  IntMatrix gram;       // reduced Gram matrix
  IntMatrix transform;  // rows: reduced basis in terms of the input basis
};
// LLL with delta = 3/4 on a positive definite integral Gram matrix, exact rationals.
LllResult lll_gram(const IntMatrix& gram);

// Basis (rows, entries in [0,p)) of {x in F_p^rows : x * M = 0 mod p}.
std::vector<std::vector<long>> left_kernel_mod(const IntMatrix& m, long p);
// Echelon basis of the F_p span of the given vectors.
std::vector<std::vector<long>> span_mod(std::vector<std::vector<long>> vecs, long p);

std::string format(const IntMatrix& m);

}  // namespace scl
