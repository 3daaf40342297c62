#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "scl/construct.hpp"
#include "scl/genus.hpp"
#include "scl/lattice.hpp"
#include "support.hpp"

using namespace scl;
using scl::test::matrix;

namespace {

// Searches L^#/L coset by coset (coordinates in (1/d)Z^n mod Z^n) for a nonzero class x
// with beta(x,x) integral (or even, when even is set).
bool brute_force_has_overlattice(const GramLattice& l, bool even) {
  int n = l.dim();
  long d = determinant(l).get_si();
  std::vector<long> c(n, 0);
  for (;;) {
    int k = 0;
    while (k < n && ++c[k] == d) c[k++] = 0;
    if (k == n) return false;
    bool dual = true;
    for (int i = 0; i < n && dual; ++i) {
      Int s = 0;
      for (int j = 0; j < n; ++j) s += l(i, j) * c[j];
      dual = s % d == 0;
    }
    if (!dual) continue;
    Int norm = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) norm += l(i, j) * c[i] * c[j];
    Int m = even ? 2 * d * d : d * d;
    if (norm % m == 0) return true;
  }
}

}  // namespace

TEST(GramLattice, Determinants) {
  EXPECT_EQ(determinant(GramLattice::identity(8)), 1);
  EXPECT_EQ(determinant(GramLattice::diagonal({1, 1, 3})), 3);
  EXPECT_EQ(determinant(scl::test::e8()), 1);
  EXPECT_EQ(determinant(scl::test::d_n(8)), 4);
  EXPECT_EQ(determinant(scl::test::a_n(4)), 5);
}

TEST(GramLattice, RejectsNonSymmetric) { EXPECT_ANY_THROW(GramLattice(matrix({{1, 1}, {0, 1}}))); }

TEST(Dual, InverseGram) {
  RatMatrix d = dual(GramLattice::diagonal({1, 1, 4}));
  EXPECT_EQ(d(2, 2), Rat(1, 4));
  EXPECT_EQ(d(0, 0), 1);
  EXPECT_EQ(dual(GramLattice::identity(5)), to_rational(IntMatrix::identity(5)));
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    GramLattice l = scl::test::random_lattice(4, rng);
    RatMatrix di = dual(l);
    Int det = determinant(l);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_EQ(Rat(di(i, j) * Rat(det)).get_den(), 1);
    EXPECT_EQ(to_rational(l.gram()) * di, to_rational(IntMatrix::identity(4)));
  }
}

TEST(Rescale, PrimitiveExamples) {
  EXPECT_EQ(rescale_primitive(matrix({{4, 0, 0}, {0, 4, 0}, {0, 0, 4}})), GramLattice::identity(3));
  RatMatrix r = to_rational(IntMatrix::identity(3));
  r(2, 2) = Rat(1, 3);
  EXPECT_EQ(rescale_primitive(r), GramLattice::diagonal({3, 3, 1}));
  GramLattice e8 = scl::test::e8();
  EXPECT_EQ(rescale_primitive(e8.gram()), e8);
  EXPECT_TRUE(is_primitive(GramLattice::identity(4)));
  EXPECT_FALSE(is_primitive(GramLattice::diagonal({2, 2, 2})));
  EXPECT_TRUE(is_primitive(GramLattice::diagonal({2, 3})));
  EXPECT_TRUE(is_even(e8));
  EXPECT_FALSE(is_even(GramLattice::identity(2)));
}

TEST(PartialDual, Examples) {
  GramLattice l = GramLattice::diagonal({1, 1, 3});
  GramLattice d = partial_dual(l, 3);
  EXPECT_EQ(determinant(d), 9);
  EXPECT_EQ(symbol_from_lattice(d), symbol_from_lattice(GramLattice::diagonal({1, 3, 3})));
  EXPECT_EQ(partial_dual(l, 5), l);
  // Applying it twice returns to the genus of L.
  GramLattice d8 = scl::test::d_n(8);
  EXPECT_EQ(symbol_key(symbol_from_lattice(partial_dual(partial_dual(d8, 2), 2))), symbol_key(symbol_from_lattice(d8)));
}

TEST(PartialDual, PrimeSupportAwayFromP) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 30; ++t) {
    GramLattice l = scl::test::random_lattice(3 + t % 3, rng);
    if (!is_primitive(l)) continue;
    for (long p : prime_divisors(determinant(l))) {
      GramLattice d = partial_dual(l, p);
      EXPECT_TRUE(is_primitive(d));
      auto a = prime_divisors(determinant(l)), b = prime_divisors(determinant(d));
      std::erase(a, p);
      std::erase(b, p);
      EXPECT_EQ(a, b);
      // Away from p the local structure only changes by the p-power rescaling.
      for (long q : a) {
        bool same = false;
        for (int k = 0; k <= 4 && !same; ++k) {
          IntMatrix g = l.gram();
          for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j) g(i, j) *= ipow(Int(p), k);
          same = locals_equal(local_symbol(GramLattice(g), q), local_symbol(d, q));
        }
        EXPECT_TRUE(same) << format(l.gram()) << " p=" << p << " q=" << q;
      }
    }
  }
}

TEST(Sublattice, FromSubspace) {
  GramLattice l = GramLattice::identity(3);
  EXPECT_EQ(determinant(sublattice_from_fp_subspace(l, 2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 1);
  IntMatrix zero = sublattice_basis(3, 2, {});
  EXPECT_EQ(congruent(zero, l.gram()), matrix({{4, 0, 0}, {0, 4, 0}, {0, 0, 4}}));
  std::mt19937_64 rng(23);
  for (long p : {2L, 3L, 5L})
    for (int k = 0; k <= 3; ++k) {
      auto w = random_subspace(3, k, p, rng);
      IntMatrix b = sublattice_basis(3, p, w);
      // det(L') = det(L) * index^2 with index p^(n-k).
      EXPECT_EQ(determinant(congruent(b, l.gram())), ipow(Int(p), 2 * (3 - k)));
    }
}

TEST(Maximal, Examples) {
  for (int n = 1; n <= 8; ++n) EXPECT_TRUE(is_maximal(GramLattice::identity(n)));
  EXPECT_FALSE(is_maximal(GramLattice::diagonal({1, 1, 4})));
  EXPECT_TRUE(is_maximal(scl::test::e8()));
  EXPECT_TRUE(is_qf_maximal(scl::test::e8()));
  EXPECT_FALSE(is_maximal(scl::test::d_n(8)));
  // Z^n is odd; the quadratic form of 2Z^4 has the D4^# enlargement.
  EXPECT_FALSE(is_qf_maximal(GramLattice::identity(4)));
  EXPECT_TRUE(is_qf_maximal(GramLattice::identity(3)));
}

TEST(Maximal, AgreesWithCosetSearch) {
  std::mt19937_64 rng(24);
  int tested = 0;
  while (tested < 60) {
    GramLattice l = scl::test::random_lattice(3, rng, 2);
    Int d = determinant(l);
    if (d > 40) continue;
    ++tested;
    EXPECT_EQ(is_maximal(l), !brute_force_has_overlattice(l, false)) << format(l.gram());
    if (is_even(l)) EXPECT_EQ(admits_overlattice(l.gram(), true), brute_force_has_overlattice(l, true));
  }
}

TEST(Maximal, OverlatticeReachesMaximal) {
  EXPECT_EQ(maximal_overlattice(GramLattice::identity(4)), GramLattice::identity(4));
  EXPECT_EQ(determinant(maximal_overlattice(GramLattice::diagonal({1, 1, 4}))), 1);
  std::mt19937_64 rng(25);
  for (int t = 0; t < 20; ++t) {
    GramLattice l = scl::test::random_lattice(4, rng, 2);
    GramLattice m = maximal_overlattice(l);
    EXPECT_TRUE(is_maximal(m));
    Int q = determinant(l) / determinant(m);
    EXPECT_EQ(q * determinant(m), determinant(l));
    EXPECT_TRUE(is_square(q));
  }
}

TEST(GramIo, RoundTrip) {
  GramLattice e8 = scl::test::e8();
  std::istringstream in(write_gram(e8));
  EXPECT_EQ(read_gram(in), e8);
  std::istringstream bad("2\n1 0\n0 -1\n");
  EXPECT_THROW(read_gram(bad), std::invalid_argument);
  std::istringstream junk("2\n1 x\n0 1\n");
  EXPECT_THROW(read_gram(junk), std::invalid_argument);
  std::istringstream shrt("3\n1 0 0\n");
  EXPECT_THROW(read_gram(shrt), std::invalid_argument);
}

TEST(LllReduce, KeepsGenus) {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 10; ++t) {
    GramLattice l = scl::test::random_lattice(5, rng);
    GramLattice r = lll_reduce(l);
    EXPECT_EQ(determinant(r), determinant(l));
    EXPECT_EQ(canonical(symbol_from_lattice(r)), canonical(symbol_from_lattice(l)));
  }
}
