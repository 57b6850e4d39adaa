#include <gtest/gtest.h>

#include <random>

#include "lieint/rootsys.hpp"

using namespace lieint;

namespace {

std::vector<std::string> all_simple_types_up_to_rank8() {
  std::vector<std::string> out;
  for (int n = 1; n <= 8; ++n) out.push_back("A" + std::to_string(n));
  for (int n = 2; n <= 8; ++n) out.push_back("B" + std::to_string(n));
  for (int n = 3; n <= 8; ++n) out.push_back("C" + std::to_string(n));
  for (int n = 4; n <= 8; ++n) out.push_back("D" + std::to_string(n));
  for (const char* s : {"E6", "E7", "E8", "F4", "G2"}) out.push_back(s);
  return out;
}

Rational q(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

}  // namespace

TEST(RootSystem, A1Basics) {
  const RootSystem rs = RootSystem::parse("A1");
  EXPECT_EQ(rs.rank(), 1u);
  ASSERT_EQ(rs.positive_roots().size(), 1u);
  EXPECT_EQ(rs.positive_roots()[0], (IntVector{2}));
  EXPECT_EQ(rs.rho(), (IntVector{1}));
  EXPECT_EQ(rs.dim_g(), 3u);
}

TEST(RootSystem, A2Tables) {
  const RootSystem rs = RootSystem::parse("A2");
  EXPECT_EQ(rs.num_positive_roots(), 3u);
  EXPECT_EQ(rs.dim_g(), 8u);
  EXPECT_EQ(rs.cartan()(0, 0), 2);
  EXPECT_EQ(rs.cartan()(0, 1), -1);
  EXPECT_EQ(rs.cartan()(1, 0), -1);
  EXPECT_EQ(rs.cartan()(1, 1), 2);
}

TEST(RootSystem, ProductIsDirectSum) {
  const RootSystem rs = RootSystem::parse("A1xA1");
  EXPECT_EQ(rs.rank(), 2u);
  EXPECT_EQ(rs.num_positive_roots(), 2u);
  EXPECT_EQ(rs.dim_g(), 6u);
  EXPECT_EQ(rs.cartan()(0, 1), 0);
}

TEST(RootSystem, ParseGrammar) {
  EXPECT_EQ(RootSystem::parse("a2").name(), "A2");
  EXPECT_EQ(RootSystem::parse("A1,G2").name(), "A1xG2");
  EXPECT_EQ(RootSystem::parse(" b3 x A1 ").name(), "B3xA1");
  EXPECT_THROW(RootSystem::parse("B1"), ConfigError);
  EXPECT_THROW(RootSystem::parse("C2"), ConfigError);
  EXPECT_THROW(RootSystem::parse("D3"), ConfigError);
  EXPECT_THROW(RootSystem::parse("E9"), ConfigError);
  EXPECT_THROW(RootSystem::parse("H3"), ConfigError);
  EXPECT_THROW(RootSystem::parse("A"), ConfigError);
  EXPECT_THROW(RootSystem::parse("A1x"), ConfigError);
  EXPECT_THROW(RootSystem::parse(""), ConfigError);
}

TEST(RootSystem, KnownPositiveRootCounts) {
  const std::map<std::string, std::size_t> expected{{"G2", 6}, {"F4", 24}, {"E6", 36}, {"E7", 63}, {"E8", 120},
                                                    {"B3", 9},  {"C4", 16}, {"D5", 20}, {"A7", 28}};
  for (const auto& [name, d] : expected) EXPECT_EQ(RootSystem::parse(name).num_positive_roots(), d) << name;
}

TEST(RootSystem, StructuralInvariantsAllTypes) {
  for (const auto& name : all_simple_types_up_to_rank8()) {
    const RootSystem rs = RootSystem::parse(name);
    SCOPED_TRACE(name);
    EXPECT_EQ(rs.dim_g(), 2 * rs.num_positive_roots() + rs.rank());
    // Symmetrizable: C_ij d_j = C_ji d_i.
    for (std::size_t i = 0; i < rs.rank(); ++i)
      for (std::size_t j = 0; j < rs.rank(); ++j)
        EXPECT_EQ(rs.cartan()(i, j) * rs.symmetrizer()[j], rs.cartan()(j, i) * rs.symmetrizer()[i]);
    for (const auto& c : rs.positive_root_coefficients())
      for (auto x : c) EXPECT_GE(x, 0);
    // Coroot of alpha pairs to 2 with alpha.
    for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < rs.rank(); ++i) s += rs.positive_roots()[k][i] * rs.positive_coroots()[k][i];
      EXPECT_EQ(s, 2);
    }
  }
}

TEST(FundamentalGroup, OrderMatchesCartanDeterminant) {
  for (const auto& name : all_simple_types_up_to_rank8()) {
    const RootSystem rs = RootSystem::parse(name);
    const FundamentalGroup pi = fundamental_group(rs);
    const Rational det = determinant(to_rational(rs.cartan()));
    std::int64_t prod = 1;
    for (auto d : pi.elementary_divisors) prod *= d;
    EXPECT_EQ(Rational(static_cast<long long>(pi.order())), abs(det)) << name;
    EXPECT_EQ(static_cast<std::size_t>(prod), pi.order()) << name;
  }
}

TEST(FundamentalGroup, RepresentativesLieInCoweightLatticeAndAreDistinctModI) {
  for (const auto& name : all_simple_types_up_to_rank8()) {
    const RootSystem rs = RootSystem::parse(name);
    const FundamentalGroup pi = fundamental_group(rs);
    SCOPED_TRACE(name);
    EXPECT_TRUE(pi.elements[pi.identity].is_integral());
    for (const auto& psi : pi.elements) {
      for (const auto& root : rs.positive_roots())
        EXPECT_TRUE(is_integer(pairing(Weight::from_ints(root), psi)));
      for (const auto& c : psi.coords) {
        EXPECT_GE(c, 0);
        EXPECT_LT(c, 1);
      }
    }
    for (std::size_t i = 0; i < pi.order(); ++i)
      for (std::size_t j = i + 1; j < pi.order(); ++j) {
        RationalVector diff(rs.rank());
        for (std::size_t k = 0; k < rs.rank(); ++k) diff[k] = pi.elements[i].coords[k] - pi.elements[j].coords[k];
        EXPECT_FALSE(Covector(diff).is_integral());
      }
  }
}

TEST(FundamentalGroup, Examples) {
  const auto a1 = fundamental_group(RootSystem::parse("A1"));
  ASSERT_EQ(a1.order(), 2u);
  EXPECT_EQ(a1.elements[0].coords, (RationalVector{q(0)}));
  EXPECT_EQ(a1.elements[1].coords, (RationalVector{q(1, 2)}));
  EXPECT_EQ(fundamental_group(RootSystem::parse("A2")).order(), 3u);
  EXPECT_EQ(fundamental_group(RootSystem::parse("G2")).order(), 1u);
  EXPECT_EQ(fundamental_group(RootSystem::parse("A1xA2")).order(), 6u);
  // D_n with n even: Z/2 x Z/2.
  auto d4 = fundamental_group(RootSystem::parse("D4"));
  std::sort(d4.elementary_divisors.begin(), d4.elementary_divisors.end());
  EXPECT_EQ(d4.elementary_divisors, (std::vector<std::int64_t>{1, 1, 2, 2}));
}

TEST(Pairing, Examples) {
  const RootSystem a1 = RootSystem::parse("A1");
  EXPECT_EQ(pairing(Weight::from_ints({2}), Covector::from_ints({1})), 2);
  const Weight omega = Weight::from_ints({1});
  EXPECT_EQ(pairing(omega, fundamental_group(a1).elements[1]), q(1, 2));
  const RootSystem b3 = RootSystem::parse("B3");
  for (std::size_t i = 0; i < 3; ++i) {
    IntVector e(3, 0);
    e[i] = 1;
    EXPECT_EQ(pairing(Weight::from_ints(b3.rho()), Covector::from_ints(e)), 1);
  }
  EXPECT_THROW(pairing(Weight::from_ints({1, 2}), Covector::from_ints({1})), ConfigError);
}

TEST(Kappa, Examples) {
  const RootSystem a1 = RootSystem::parse("A1");
  EXPECT_EQ(kappa(a1, Covector::from_ints({1})), 2);
  const RootSystem a2 = RootSystem::parse("A2");
  // x pairing 1 with both simple roots: coroot coordinates (1, 1).
  EXPECT_EQ(kappa(a2, Covector::from_ints({1, 1})), 2);
  // x on the wall of alpha_1: <alpha_1, x> = 2 x1 - x2 = 0.
  EXPECT_EQ(kappa(a2, Covector::from_ints({1, 2})), 0);
}

TEST(Kappa, AntiInvariantUnderWeyl) {
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5), pick(0, 7);
  for (const char* name : {"A1", "A2", "B2", "G2", "A3", "B3", "C3", "A1xA2", "D4", "F4"}) {
    const RootSystem rs = RootSystem::parse(name);
    for (int trial = 0; trial < 20; ++trial) {
      RationalVector x(rs.rank());
      for (auto& c : x) c = make_rational(num(gen), den(gen));
      const Rational k0 = kappa(rs, Covector(x));
      RationalVector y = x;
      int sign = 1;
      for (int step = 0; step < 5; ++step) {
        rs.reflect_covector(y, static_cast<std::size_t>(pick(gen)) % rs.rank());
        sign = -sign;
      }
      EXPECT_EQ(kappa(rs, Covector(y)), sign * k0) << name;
    }
  }
}

TEST(WeylOrbit, Examples) {
  const RootSystem a1 = RootSystem::parse("A1");
  const auto orb = a1.weyl_orbit(Weight::from_ints({1}));
  EXPECT_EQ(orb, (std::set<Weight>{Weight::from_ints({1}), Weight::from_ints({-1})}));
  EXPECT_EQ(a1.weyl_group_order(), 2);
  const RootSystem a2 = RootSystem::parse("A2");
  EXPECT_EQ(a2.weyl_orbit(Weight::from_ints(a2.rho())).size(), 6u);
  EXPECT_EQ(a2.weyl_orbit(Weight::from_ints({0, 0})).size(), 1u);
}

TEST(WeylOrbit, SizesDivideGroupOrderAndRegularOrbitsAreFree) {
  for (const char* name : {"A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A1xB2", "D4", "F4", "A4"}) {
    const RootSystem rs = RootSystem::parse(name);
    const BigInt w = rs.weyl_group_order();
    const auto regular = rs.weyl_orbit(Weight::from_ints(rs.rho()));
    EXPECT_EQ(BigInt(regular.size()), w) << name;
    IntVector wall = rs.rho();
    wall[0] = 0;
    const auto sing = rs.weyl_orbit(Weight::from_ints(wall));
    EXPECT_EQ(w % sing.size(), 0) << name;
    EXPECT_LT(BigInt(sing.size()), w) << name;
  }
}

TEST(WeylOrbit, DominantRepresentativeAndSign) {
  const RootSystem a2 = RootSystem::parse("A2");
  const auto dom = a2.to_dominant(IntVector{-1, -1});
  EXPECT_EQ(dom.weight, (IntVector{1, 1}));
  EXPECT_EQ(dom.sign, -1);  // longest element of S_3 is odd
  EXPECT_FALSE(dom.singular);
  const auto wall = a2.to_dominant(IntVector{-1, 0});
  EXPECT_TRUE(wall.singular);
  const auto [w, s] = a2.to_dominant(Weight(RationalVector{q(-1, 2), q(1)}));
  EXPECT_EQ(w.coords, (RationalVector{q(1, 2), q(1, 2)}));
  EXPECT_EQ(s, -1);
}

TEST(RootLattice, Membership) {
  const RootSystem a1 = RootSystem::parse("A1");
  EXPECT_FALSE(a1.in_root_lattice(Weight::from_ints({1})));
  EXPECT_TRUE(a1.in_root_lattice(Weight::from_ints({2})));
  EXPECT_EQ(a1.root_lattice_order(Weight::from_ints({1})), 2);
  const RootSystem a2 = RootSystem::parse("A2");
  EXPECT_TRUE(a2.in_root_lattice(Weight::from_ints({1, 1})));
  EXPECT_EQ(a2.root_lattice_order(Weight::from_ints({1, 0})), 3);
  const RootSystem g2 = RootSystem::parse("G2");
  EXPECT_TRUE(g2.in_root_lattice(Weight::from_ints({1, 0})));
}

TEST(SmithNormalForm, DivisibilityChainAndTransform) {
  IntMatrix m(3, 3);
  const std::int64_t vals[9] = {2, 4, 4, -6, 6, 12, 10, -4, -16};
  for (int i = 0; i < 9; ++i) m(static_cast<std::size_t>(i / 3), static_cast<std::size_t>(i % 3)) = vals[i];
  const SmithForm snf = smith_normal_form(m);
  std::vector<std::int64_t> d = snf.divisors;
  EXPECT_EQ(d, (std::vector<std::int64_t>{2, 6, 12}));
  EXPECT_EQ(abs(determinant(to_rational(snf.col_transform))), 1);
}
