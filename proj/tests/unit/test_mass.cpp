#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>

#include "scl/mass.hpp"
#include "scl/watson.hpp"
#include "support.hpp"

using namespace scl;

namespace {

Rat mass_of(const std::string& s) { return mass(parse_symbol(s)); }

Rat inverse_aut_of_identity(int n) { return Rat(1) / Rat(ipow(2, n) * factorial(n)); }

// All valid square-free dimension-n symbols with 2-adic symbol u and odd parts at the given primes.
std::vector<GenusSymbol> squarefree_genera(int n, const LocalSymbol& u, const std::vector<long>& primes) {
  std::vector<GenusSymbol> out;
  std::vector<std::vector<LocalSymbol>> options;
  for (long p : primes) options.push_back(enumerate_squarefree_local(p, n));
  std::vector<size_t> idx(primes.size(), 0);
  for (;;) {
    GenusSymbol g;
    g.n = n;
    g.locals.push_back(u);
    for (size_t i = 0; i < primes.size(); ++i) g.locals.push_back(options[i][idx[i]]);
    if (is_valid_genus_symbol(g)) out.push_back(g);
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace

TEST(Mass, TableSpotValues) {
  EXPECT_EQ(mass_of("I_{8,0}"), Rat(1, 10321920));
  EXPECT_EQ(mass_of("II_{8,0}"), Rat(1, 696729600));
  EXPECT_EQ(mass_of("II_{10,0}(3^{-1})"), Rat(1, 8360755200L));
  EXPECT_EQ(mass_of("II_{9,0}(2_1^{+1})"), Rat(1, 1393459200L));
  EXPECT_EQ(mass_of("I_{4,0}"), Rat(1, 384));
  EXPECT_EQ(mass_of("II_{7,0}(2_7^{-1})"), Rat(1, 2903040));
  EXPECT_EQ(mass_of("II_{9,0}(8_1^{-1})"), Rat(1, 11612160));
}

TEST(Mass, IdentityLattices) {
  for (int n = 3; n <= 8; ++n) EXPECT_EQ(mass(symbol_from_lattice(GramLattice::identity(n))), inverse_aut_of_identity(n));
  // Z^9 and E8 + Z; Z^10 and E8 + Z^2.
  Rat e8 = Rat(1, 696729600);
  EXPECT_EQ(mass_of("I_{9,0}"), inverse_aut_of_identity(9) + e8 / 2);
  EXPECT_EQ(mass_of("I_{10,0}"), inverse_aut_of_identity(10) + e8 / 8);
}

TEST(Mass, RootLattices) {
  EXPECT_EQ(mass(symbol_from_lattice(scl::test::d_n(4))), Rat(1, 1152));
  EXPECT_EQ(mass(symbol_from_lattice(scl::test::e8())), Rat(1, 696729600));
}

TEST(Mass, EveryTableEntryIsInverseAutomorphismOrder) {
  std::ifstream in(std::string(SCL_DATA_DIR) + "/appendix_tables.json");
  auto doc = nlohmann::json::parse(in);
  int checked = 0;
  for (auto& e : doc.at("entries")) {
    Rat m = mass(parse_symbol(e.at("symbol").get<std::string>()));
    EXPECT_EQ(m, Rat(1) / Rat(Int(e.at("aut").get<std::string>()))) << e.at("symbol");
    ++checked;
  }
  EXPECT_EQ(checked, 458);
}

TEST(Mass, StandardMassIndependentOfDForOddN) {
  for (int n : {3, 5, 7, 9}) EXPECT_EQ(compare(standard_mass(n, 3), standard_mass(n, 35)), 0);
  EXPECT_NE(compare(standard_mass(4, 1), standard_mass(4, 5)), 0);
}

TEST(Mass, Condition) {
  EXPECT_TRUE(mass_condition(Rat(1, 384)));
  EXPECT_FALSE(mass_condition(Rat(1, 3)));
  EXPECT_FALSE(mass_condition(Rat(17, 32)));
  EXPECT_FALSE(mass_condition(Rat(2, 384)));
  EXPECT_TRUE(mass_condition(Rat(1, 2)));
}

TEST(ExactReal, ConstantsAndBernoulli) {
  EXPECT_EQ(bernoulli(1), Rat(-1, 2));
  EXPECT_EQ(bernoulli(2), Rat(1, 6));
  EXPECT_EQ(bernoulli(4), Rat(-1, 30));
  EXPECT_EQ(bernoulli(12), Rat(-691, 2730));
  EXPECT_EQ(bernoulli(7), 0);
  ExactReal z2 = zeta_even(1);
  EXPECT_EQ(z2.coefficient(), Rat(1, 6));
  EXPECT_EQ(z2.half_pi(), 4);
  Interval pi = pi_interval(30);
  EXPECT_LT(pi.lo, Rat(Int("314159265358979324"), Int("100000000000000000")));
  EXPECT_GT(pi.hi, Rat(Int("314159265358979323"), Int("100000000000000000")));
  Interval r2 = sqrt_interval(2, 20);
  EXPECT_LE(r2.lo * r2.lo, 2);
  EXPECT_GE(r2.hi * r2.hi, 2);
  // Gamma(1/2)^2 = pi
  ExactReal g = gamma_half(1);
  EXPECT_EQ((g * g).half_pi(), 2);
  EXPECT_EQ((g * g).coefficient(), 1);
  EXPECT_EQ(gamma_half(6).to_rational(), 2);  // Gamma(3)
}

TEST(Bounds, KnownValuesForSmallDimensions) {
  const std::vector<std::string> t = {"1/8", "1/24", "1/8", "1/72", "1/16", "1/272", "1/32", "1/1056"};
  const std::vector<long> maxp = {61, 467, 73, 283, 139, 373, 193, 421};
  for (int n = 3; n <= 10; ++n) {
    MassBounds b = mass_bounds(n);
    EXPECT_EQ(to_string(b.t_min.to_rational()), t[n - 3]) << n;
    EXPECT_EQ(b.maxprime, maxp[n - 3]) << n;
    std::set<long> want;
    if (n <= 4) want = {3};
    EXPECT_EQ(b.B_set, want) << n;
  }
}

TEST(Bounds, TwoAdicMinimumIsAttained) {
  // t(3) is the smallest 2-adic local factor among square-free 2-adic symbols of rank 3.
  ExactReal t = t_min(3);
  bool hit = false;
  for (auto& u : enumerate_squarefree_local(2, 3)) {
    int c = compare(local_factor(u), t);
    EXPECT_GE(c, 0);
    hit = hit || c == 0;
  }
  EXPECT_TRUE(hit);
  EXPECT_EQ(t.to_rational(), Rat(1, 8));
}

TEST(Bounds, MinimalMassIsMonotoneAndPrunesBeyondMaxprime) {
  LocalSymbol u = local_symbol(GramLattice::identity(5), 2);
  Rat prev = 0;
  for (long q : {3L, 5L, 7L, 11L, 13L, 29L, 73L, 79L}) {
    Interval m = minimal_mass(u, {}, q);
    EXPECT_GE(m.hi, prev);
    prev = m.lo;
  }
  EXPECT_FALSE(minimal_mass_at_most(u, {}, 79, Rat(1, 2)));
}

TEST(Bounds, LowerBoundsAreSoundInDimensionFive) {
  const int n = 5;
  int checked = 0;
  for (auto& u : enumerate_squarefree_local(2, n)) {
    std::vector<std::vector<long>> prime_sets;
    for (long p = 3; p <= 73; p = next_prime(p)) prime_sets.push_back({p});
    prime_sets.push_back({3, 5});
    prime_sets.push_back({3, 7});
    prime_sets.push_back({5, 7});
    GenusSymbol k;
    k.n = n;
    k.locals.push_back(u);
    bool k_valid = is_valid_genus_symbol(k);
    Rat k_mass = k_valid ? mass(k) : Rat(0);
    for (auto& primes : prime_sets) {
      for (auto& g : squarefree_genera(n, u, primes)) {
        Rat m = mass(g);
        std::vector<LocalSymbol> prefix;
        long prev = 2;
        for (size_t j = 0; j < primes.size(); ++j) {
          for (long q : {primes[j], next_prime(prev)}) {
            Interval lower = minimal_mass(u, prefix, q);
            ASSERT_LE(lower.lo, m) << print_symbol(g) << " q=" << q;
          }
          prefix.push_back(g.locals[j + 1]);
          prev = primes[j];
        }
        if (k_valid && primes.size() == 1) EXPECT_LE(a_bound(n, primes[0]).lo * Interval(k_mass).lo, m) << print_symbol(g);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(Bounds, WatsonPreimageBoundIsSound) {
  // mass(L) >= b_n(p) mass(K) for preimages with a length-3 Jordan decomposition at p.
  for (const char* text : {"I_{5,0}", "II_{8,0}", "I_{6,0}(3^{+1})", "II_{7,0}(2_7^{-1})"}) {
    GenusSymbol k = canonical(parse_symbol(text));
    Rat mk = mass(k);
    for (long p : {3L, 5L, 7L}) {
      if (k.local(p)) continue;
      for (auto& l : watson_preimage_symbols(k, p)) {
        const LocalSymbol* lp = l.local(p);
        if (!lp || lp->max_scale() != 2) continue;
        EXPECT_LE(b_bound(k.n, p).lo * Interval(mk).lo, mass(l)) << print_symbol(l);
      }
    }
  }
}
