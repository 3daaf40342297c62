#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "scl/lattice.hpp"

namespace scl::test {

inline IntMatrix matrix(std::initializer_list<std::initializer_list<long>> rows) {
  int r = static_cast<int>(rows.size());
  int c = static_cast<int>(rows.begin()->size());
  IntMatrix m(r, c);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline GramLattice e8() {
  return GramLattice(matrix({{2, -1, 0, 0, 0, 0, 0, 0},
                             {-1, 2, -1, 0, 0, 0, 0, 0},
                             {0, -1, 2, -1, 0, 0, 0, -1},
                             {0, 0, -1, 2, -1, 0, 0, 0},
                             {0, 0, 0, -1, 2, -1, 0, 0},
                             {0, 0, 0, 0, -1, 2, -1, 0},
                             {0, 0, 0, 0, 0, -1, 2, 0},
                             {0, 0, -1, 0, 0, 0, 0, 2}}));
}

// Root lattice D_n (n >= 3) in the standard Dynkin basis.
inline GramLattice d_n(int n) {
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  for (int i = 0; i + 2 < n; ++i) g(i, i + 1) = g(i + 1, i) = -1;
  g(n - 3, n - 1) = g(n - 1, n - 3) = -1;
  return GramLattice(g);
}

inline GramLattice a_n(int n) {
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  for (int i = 0; i + 1 < n; ++i) g(i, i + 1) = g(i + 1, i) = -1;
  return GramLattice(g);
}

inline GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
  int n = a.dim(), m = b.dim();
  IntMatrix g(n + m, n + m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = a(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(n + i, n + j) = b(i, j);
  return GramLattice(g);
}

// Product of random elementary operations, signs and a permutation.
inline IntMatrix random_unimodular(int n, std::mt19937_64& rng, int steps = 0) {
  if (steps == 0) steps = 3 * n;
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    long c = coef(rng);
    for (int k = 0; k < n; ++k) u(i, k) += c * u(j, k);
  }
  for (int i = n - 1; i > 0; --i) u.swap_rows(i, std::uniform_int_distribution<int>(0, i)(rng));
  for (int i = 0; i < n; ++i)
    if (rng() & 1)
      for (int k = 0; k < n; ++k) u(i, k) = -u(i, k);
  return u;
}

inline GramLattice rebase(const GramLattice& l, const IntMatrix& u) { return GramLattice(congruent(u, l.gram())); }

// B * B^T for a random nonsingular integer B with small entries.
inline GramLattice random_lattice(int n, std::mt19937_64& rng, long range = 2) {
  std::uniform_int_distribution<long> d(-range, range);
  for (;;) {
    IntMatrix b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = d(rng);
    if (determinant(b) == 0) continue;
    return GramLattice(b * b.transpose());
  }
}

}  // namespace scl::test
