#include <gtest/gtest.h>

#include "support/test_support.hpp"
#include "tilekit/error.hpp"
#include "tilekit/tiles.hpp"

namespace tilekit {
namespace {

using testing::tile;
using testing::v;

TEST(Tile, SortedAndDeduplicated) {
  const Tile f = Tile::integers({3, 0, 1, 3});
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f.points().front(), v({0}));
  EXPECT_TRUE(f.is_normalized());
  EXPECT_EQ(f.diameter(), 3);
  EXPECT_EQ(f.starred().size(), 2u);
}

TEST(Tile, RejectsEmptyAndMixedDimensions) {
  EXPECT_THROW(Tile(2, {}), Error);
  EXPECT_THROW(Tile(2, {v({0, 0}), v({1})}), Error);
}

TEST(Tile, NormalizeShiftsLexMinToOrigin) {
  const auto n = normalize(tile(2, {{3, 1}, {2, 5}, {4, 0}}));
  EXPECT_TRUE(n.tile.is_normalized());
  EXPECT_EQ(n.translation, v({2, 5}));
  EXPECT_EQ(translate(n.tile, n.translation), tile(2, {{3, 1}, {2, 5}, {4, 0}}));
}

TEST(Tile, DilateAndDifferenceSet) {
  EXPECT_EQ(dilate(Tile::integers({0, 1, 3}), 2), Tile::integers({0, 2, 6}));
  EXPECT_THROW(dilate(Tile::integers({0, 1}), 0), Error);
  EXPECT_EQ(difference_set(Tile::integers({0, 1, 3})), Tile::integers({-3, -2, -1, 0, 1, 2, 3}));
}

TEST(TileTuple, RequiresNormalizedTiles) {
  EXPECT_THROW(TileTuple({Tile::integers({1, 2})}), Error);
  EXPECT_THROW(TileTuple(std::vector<Tile>{}), Error);
  EXPECT_NO_THROW(TileTuple({Tile::integers({0, 2})}));
}

TEST(WeightedTile, MergesAndDropsZeros) {
  const WeightedTile g(1, {{v({0}), 2}, {v({1}), 1}, {v({0}), -2}});
  ASSERT_EQ(g.terms().size(), 1u);
  EXPECT_EQ(g.total(), 1);
  const WeightedTile h = WeightedTile::indicator(Tile::integers({0, 1})) - WeightedTile::delta(v({1}));
  EXPECT_EQ(h, WeightedTile::delta(v({0})));
}

TEST(PeriodicRationalFunction, EvaluationAndShift) {
  const PeriodicRationalFunction f(Lattice::diagonal({3}), {1, 2, 3});
  EXPECT_EQ(f(v({4})), 2);
  EXPECT_EQ(f(v({-1})), 3);
  const auto g = f.shifted(v({1}));
  EXPECT_EQ(g(v({1})), f(v({0})));
  EXPECT_EQ(f.min(), 1);
  EXPECT_EQ(f.max(), 3);
  EXPECT_TRUE(f.is_integer_valued());
  EXPECT_FALSE(f.is_indicator());
}

TEST(PeriodicRationalFunction, ArithmeticOnCommonLattice) {
  const auto a = PeriodicRationalFunction::indicator(PeriodicSet(Lattice::diagonal({2}), {v({0})}));
  const auto b = PeriodicRationalFunction::indicator(PeriodicSet(Lattice::diagonal({3}), {v({0})}));
  const auto s = a + b;
  EXPECT_EQ(s.lattice(), Lattice::diagonal({6}));
  EXPECT_EQ(s(v({0})), 2);
  EXPECT_EQ(s(v({3})), 1);
  EXPECT_TRUE(same_function(s - b, a));
  EXPECT_TRUE(same_function(Rational(1, 2) * (a + a), a));
}

TEST(PeriodicRationalFunction, ConvolutionWithTile) {
  const auto f = PeriodicRationalFunction::indicator(PeriodicSet(Lattice::diagonal({2}), {v({0})}));
  EXPECT_TRUE(equals_constant(convolve(WeightedTile::indicator(Tile::integers({0, 1})), f), 1));
  const auto g = convolve(WeightedTile::indicator(Tile::integers({0, 2})), f);
  EXPECT_EQ(g(v({0})), 2);
  EXPECT_EQ(g(v({1})), 0);
}

TEST(PeriodicRationalFunction, StabilizerAndSupport) {
  const PeriodicRationalFunction f(Lattice::diagonal({4, 1}), {1, 0, 1, 0});
  EXPECT_EQ(stabilizer(f), Lattice::diagonal({2, 1}));
  const PeriodicSet s = f.support();
  EXPECT_TRUE(s.contains(v({2, 5})));
  EXPECT_FALSE(s.contains(v({1, 5})));
  EXPECT_THROW(PeriodicRationalFunction(Lattice::diagonal({4}), {Rational(1, 2), 0, 0, 0}).support(), Error);
}

}  // namespace
}  // namespace tilekit
