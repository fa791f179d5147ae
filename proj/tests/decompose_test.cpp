#include <gtest/gtest.h>

#include "support/test_support.hpp"
#include "tilekit/decompose.hpp"
#include "tilekit/error.hpp"
#include "tilekit/verify.hpp"

namespace tilekit {
namespace {

using testing::tile;
using testing::v;

const Tile kSquare = tile(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
const Tile kLiftedSquare = tile(3, {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});

PeriodicRationalFunction square_cotile() {
  return PeriodicRationalFunction::indicator(PeriodicSet(Lattice::diagonal({2, 2, 1}), {v({0, 0, 0})}));
}

PeriodicRationalFunction evens() {
  return PeriodicRationalFunction::indicator(PeriodicSet(Lattice::diagonal({2}), {v({0})}));
}

// 1_{2Z} - 1_{{0,1,2} + 9Z}
PeriodicRationalFunction six_point_cotile() {
  std::vector<Rational> vals;
  for (long x = 0; x < 18; ++x) vals.push_back(Rational(x % 2 == 0 ? 1 : 0) - Rational(x % 9 < 3 ? 1 : 0));
  return PeriodicRationalFunction(Lattice::diagonal({18}), vals);
}

TEST(Primorial, SmallBounds) {
  EXPECT_EQ(primorial(0), 1);
  EXPECT_EQ(primorial(1), 1);
  EXPECT_EQ(primorial(4), 6);
  EXPECT_EQ(primorial(12), 2310);
}

TEST(ComputeQ, RangeWidthTimesSize) {
  EXPECT_EQ(compute_q(square_cotile(), 4), 6);
  EXPECT_EQ(compute_q(square_cotile(), 1), 1);
  EXPECT_EQ(compute_q(six_point_cotile(), 6), 2310);
  EXPECT_THROW(compute_q(Rational(1, 2) * evens(), 2), Error);
}

TEST(DilationCheck, SquareTilesUnderDilation) {
  for (long r : {1, 7, 13, 19}) {
    EXPECT_TRUE(dilation_check(kSquare, square_cotile(), 1, r));
    EXPECT_TRUE(dilation_check(kLiftedSquare, square_cotile(), 1, r));
  }
}

TEST(DilationCheck, ProbeWithEvenFactorFails) {
  EXPECT_FALSE(dilation_check(Tile::integers({0, 1}), evens(), 1, 2));
  EXPECT_TRUE(dilation_check(Tile::integers({0, 1}), evens(), 1, 3));
}

TEST(DilationCheck, RequiresTheTilingEquation) {
  EXPECT_THROW(dilation_check(Tile::integers({0, 2}), evens(), 1, 3), Error);
}

TEST(OrbitPeriod, OrderOfQv) {
  EXPECT_EQ(orbit_period(Lattice::diagonal({2}), 2, v({1})), 1);
  EXPECT_EQ(orbit_period(Lattice::diagonal({18}), 2, v({1})), 9);
}

TEST(BuildDecomposition, DominoOnEvens) {
  const auto tree = build_decomposition(TileTuple({Tile::integers({0, 1})}), evens());
  EXPECT_EQ(tree.q, 2);
  const auto& phi = tree.at({v({1})});
  EXPECT_TRUE(same_function(phi, evens().shifted(v({1}))));
  EXPECT_TRUE(same_function(evens(), PeriodicRationalFunction::constant(1, 1) - phi));
  EXPECT_TRUE(verify_decomposition(tree).ok());
}

TEST(BuildDecomposition, SquarePairAllProperties) {
  const TileTuple t({kSquare, kLiftedSquare});
  const auto tree = build_decomposition(t, square_cotile());
  EXPECT_EQ(tree.q, 6);
  std::size_t depth_two = 0;
  for (const auto& [chain, phi] : tree.nodes) {
    if (chain.size() != 2) continue;
    ++depth_two;
    EXPECT_GE(phi.min(), 0);
    EXPECT_LE(phi.max(), 1);
    // the tuple is independent, so each depth-2 function has rank-2 periods
    EXPECT_GE(stabilizer(phi).rank(), 2u);
  }
  EXPECT_EQ(depth_two, 9u);
  const auto rep = verify_decomposition(tree);
  EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
}

TEST(BuildDecomposition, FiniteAveragesMatchStoredLimit) {
  const TileTuple t({Tile::integers({0, 1, 3, 4, 6, 7})});
  const auto f = six_point_cotile();
  const auto tree = build_decomposition(t, f);
  for (const auto& w : t[0].starred()) {
    const Integer m = orbit_period(f.lattice(), tree.q, w);
    // average over two full periods
    PeriodicRationalFunction acc = PeriodicRationalFunction::constant(1, 0);
    for (Integer n = 1; n <= 2 * m; ++n) acc = acc + f.shifted((1 + n * tree.q) * w);
    EXPECT_TRUE(same_function(Rational(1) / Rational(2 * m) * acc, tree.at({w})));
  }
  EXPECT_TRUE(verify_decomposition(tree).ok());
}

TEST(BuildDecomposition, LevelTwoPair) {
  const TileTuple t({Tile::integers({0, 1, 2, 3}), Tile::integers({0, 1, 4, 5})});
  const auto tree = build_decomposition(t, evens(), std::nullopt, {2, 2});
  EXPECT_EQ(decomposition_constant(tree, 1), 2);
  EXPECT_EQ(decomposition_constant(tree, 2), 2 - 2 * 3);
  const auto rep = verify_decomposition(tree);
  EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
}

TEST(BuildDecomposition, SingletonTile) {
  const auto tree = build_decomposition(TileTuple({Tile::integers({0})}), PeriodicRationalFunction::constant(1, 1));
  EXPECT_EQ(tree.nodes.size(), 1u);
  EXPECT_TRUE(verify_decomposition(tree).ok());
}

TEST(BuildDecomposition, RejectsNonCotiles) {
  EXPECT_THROW(build_decomposition(TileTuple({Tile::integers({0, 2})}), evens()), Error);
  EXPECT_THROW(build_decomposition(TileTuple({Tile::integers({0, 1})}), evens(), std::size_t{2}), Error);
}

TEST(DecompositionConstant, LevelOneAlternatingSum) {
  const TileTuple t({kSquare, kLiftedSquare});
  const auto tree = build_decomposition(t, square_cotile(), std::size_t{1});
  EXPECT_EQ(decomposition_constant(tree, 1), 1);
  EXPECT_EQ(tree.nodes.size(), 4u);
}

TEST(PsiBySpan, SquarePair) {
  const TileTuple t({kSquare, kLiftedSquare});
  const auto tree = build_decomposition(t, square_cotile());
  const auto r = psi_by_span(tree, span_classes(t));
  EXPECT_FALSE(r.psi.empty());
  EXPECT_TRUE(r.partition_identity);
  EXPECT_TRUE(r.hyperplane_stabilizers);
}

TEST(PsiBySpan, RequiresPropertyStar) {
  const TileTuple t({Tile::integers({0, 1})});
  const auto tree = build_decomposition(t, evens());
  EXPECT_THROW(psi_by_span(tree, SpanClassification{}), Error);
}

TEST(DiscreteDerivative, Definition) {
  const auto d = discrete_derivative(evens(), v({1}));
  EXPECT_EQ(d(v({0})), 1);
  EXPECT_EQ(d(v({1})), -1);
}

TEST(PolynomialMap, Examples) {
  EXPECT_TRUE(is_polynomial_map(PeriodicRationalFunction::constant(2, 5), Lattice::identity(2), 0));
  EXPECT_TRUE(is_polynomial_map(evens(), Lattice::diagonal({2}), 0));
  for (std::size_t r = 0; r <= 3; ++r) EXPECT_FALSE(is_polynomial_map(evens(), Lattice::identity(1), r));
  EXPECT_THROW(is_polynomial_map(evens(), Lattice::zero(1), 0), Error);
}

TEST(PolynomialMap, GeneratorTestAgreesWithAllDirections) {
  // periodic functions are bounded, so they are polynomial only when constant
  // on cosets; compare against derivatives along every short vector
  const PeriodicRationalFunction f(Lattice::diagonal({2, 2}), {1, 0, 0, 1});
  for (const auto& gamma : {Lattice::diagonal({2, 2}), testing::lattice(2, {{1, 1}, {0, 2}}), Lattice::identity(2)}) {
    bool all = true;
    for (long a = -2; a <= 2; ++a) {
      for (long b = -2; b <= 2; ++b) {
        if (gamma.contains(v({a, b})) && !equals_constant(discrete_derivative(f, v({a, b})), 0)) all = false;
      }
    }
    EXPECT_EQ(is_polynomial_map(f, gamma, 0), all);
  }
}

TEST(BoundedPolyCheck, PolynomialImpliesConstantOnCosets) {
  const PeriodicRationalFunction f(Lattice::diagonal({2, 2}), {1, 0, 0, 1});
  for (const auto& gamma : {Lattice::diagonal({2, 2}), testing::lattice(2, {{1, 1}, {0, 2}}), Lattice::identity(2)}) {
    const auto r = bounded_poly_is_constant_check(f, gamma, 4);
    EXPECT_EQ(r.degree.has_value(), r.constant_on_cosets);
  }
}

}  // namespace
}  // namespace tilekit
