#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "scl/autgroup.hpp"
#include "scl/mass.hpp"
#include "support.hpp"

using namespace scl;

namespace {

// Vectors up to sign with Q(v) <= bound, by scanning the box |v_i| <= sqrt(bound * (G^-1)_ii).
std::set<std::vector<long>> box_search(const GramLattice& l, long bound) {
  int n = l.dim();
  RatMatrix inv = dual(l);
  std::vector<long> r(n);
  for (int i = 0; i < n; ++i) r[i] = static_cast<long>(std::floor(std::sqrt(bound * inv(i, i).get_d()))) + 1;
  std::set<std::vector<long>> out;
  std::vector<long> v(n);
  for (int i = 0; i < n; ++i) v[i] = -r[i];
  for (;;) {
    Int q = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q += l(i, j) * v[i] * v[j];
    if (q > 0 && q <= bound) {
      std::vector<long> w = v;
      auto lead = std::find_if(w.begin(), w.end(), [](long x) { return x != 0; });
      if (*lead < 0)
        for (auto& x : w) x = -x;
      out.insert(w);
    }
    int k = 0;
    while (k < n && ++v[k] > r[k]) v[k++] = -r[k];
    if (k == n) break;
  }
  return out;
}

std::set<std::vector<long>> normalized(const ShortVectorSet& s) {
  std::set<std::vector<long>> out;
  for (auto w : s.vectors) {
    auto lead = std::find_if(w.begin(), w.end(), [](long x) { return x != 0; });
    if (*lead < 0)
      for (auto& x : w) x = -x;
    out.insert(w);
  }
  return out;
}

}  // namespace

TEST(ShortVectors, Examples) {
  EXPECT_EQ(short_vectors(GramLattice::identity(4), 1).vectors.size(), 4u);
  EXPECT_EQ(short_vectors(GramLattice::identity(4), 2).vectors.size(), 4u + 12u);
  ShortVectorSet roots = short_vectors(scl::test::e8(), 2);
  EXPECT_EQ(roots.vectors.size(), 120u);
  for (auto& q : roots.norms) EXPECT_EQ(q, 2);
}

TEST(ShortVectors, AgreeWithBoxSearch) {
  std::mt19937_64 rng(71);
  int tested = 0;
  while (tested < 20) {
    int n = 2 + tested % 3;
    GramLattice l = scl::test::random_lattice(n, rng, 2);
    if (determinant(l) > 100) continue;
    ++tested;
    for (long bound : {1L, 3L, 6L, 10L}) {
      ShortVectorSet s = short_vectors(l, bound);
      EXPECT_EQ(normalized(s), box_search(l, bound)) << format(l.gram()) << " bound=" << bound;
      EXPECT_EQ(s.norms.size(), s.vectors.size());
    }
  }
}

TEST(AutGroup, IdentityLattices) {
  for (int n = 3; n <= 10; ++n) EXPECT_EQ(aut_group_order(GramLattice::identity(n)), ipow(Int(2), n) * factorial(n)) << n;
}

TEST(AutGroup, RootLattices) {
  EXPECT_EQ(aut_group_order(scl::test::e8()), Int(696729600));
  EXPECT_EQ(aut_group_order(scl::test::d_n(4)), Int(1152));
  EXPECT_EQ(aut_group_order(scl::test::a_n(2)), Int(12));
  EXPECT_EQ(aut_group_order(scl::test::a_n(3)), Int(48));
  EXPECT_EQ(aut_group_order(scl::test::d_n(5)), Int(3840));
  EXPECT_EQ(aut_group_order(GramLattice::diagonal({1, 1, 3})), Int(16));
}

TEST(AutGroup, InvariantUnderRebasing) {
  std::mt19937_64 rng(72);
  for (auto& l : {scl::test::d_n(4), scl::test::a_n(4), GramLattice::diagonal({1, 2, 2, 5})}) {
    Int want = aut_group_order(l);
    for (int t = 0; t < 5; ++t) {
      GramLattice m = lll_reduce(scl::test::rebase(l, scl::test::random_unimodular(l.dim(), rng)));
      EXPECT_EQ(aut_group_order(m), want);
      EXPECT_EQ(aut_group_order(scl::test::rebase(l, scl::test::random_unimodular(l.dim(), rng))), want);
    }
  }
}

TEST(SingleClass, Examples) {
  EXPECT_TRUE(is_single_class(GramLattice::identity(8)));
  EXPECT_TRUE(is_single_class(scl::test::e8()));
  EXPECT_TRUE(is_single_class(scl::test::d_n(4)));
  // The genus of Z^9 also holds E8 + Z.
  EXPECT_FALSE(is_single_class(GramLattice::identity(9)));
  EXPECT_FALSE(is_single_class(GramLattice::identity(10)));
}
