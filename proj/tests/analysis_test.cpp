#include <gtest/gtest.h>

#include "support/test_support.hpp"
#include "tilekit/analysis.hpp"
#include "tilekit/error.hpp"

namespace tilekit {
namespace {

using testing::tile;
using testing::v;

const Tile kSquare = tile(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
const Tile kLiftedSquare = tile(3, {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});

TEST(RationalSubspace, SpanIsCanonical) {
  const auto a = RationalSubspace::span(3, std::vector<Vec>{v({2, 0, 0}), v({1, 1, 0})});
  const auto b = RationalSubspace::span(3, std::vector<Vec>{v({0, 3, 0}), v({5, 0, 0}), v({1, 1, 0})});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_TRUE(a.contains(v({7, -4, 0})));
  EXPECT_FALSE(a.contains(v({0, 0, 1})));
  EXPECT_EQ(RationalSubspace::zero(3).dim(), 0u);
}

TEST(Rank, OverRationals) {
  EXPECT_EQ(rank(3, std::vector<Vec>{v({1, 2, 3}), v({2, 4, 6})}), 1u);
  EXPECT_EQ(rank(3, std::vector<Vec>{v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 1})}), 3u);
}

TEST(Selections, ProductOfStarredSets) {
  const auto s = selections(TileTuple({kSquare, kLiftedSquare}));
  EXPECT_EQ(s.size(), 9u);
  for (const auto& sel : s) EXPECT_EQ(sel.size(), 2u);
}

TEST(Independence, SquarePairInThreeDimensions) {
  EXPECT_TRUE(is_independent_tuple(TileTuple({kSquare, kLiftedSquare})).independent);
}

TEST(Independence, ParallelPointsGiveWitness) {
  const auto r = is_independent_tuple(TileTuple({tile(2, {{0, 0}, {1, 0}}), tile(2, {{0, 0}, {2, 0}})}));
  EXPECT_FALSE(r.independent);
  ASSERT_EQ(r.witness.size(), 2u);
  EXPECT_EQ(rank(2, r.witness), 1u);
}

TEST(Independence, TooManyTiles) {
  const Tile a = tile(2, {{0, 0}, {1, 0}});
  const auto r = is_independent_tuple(TileTuple({a, a, a}));
  EXPECT_FALSE(r.independent);
  EXPECT_EQ(r.witness.size(), 3u);
}

TEST(PropertyStar, HoldsForSquarePair) {
  EXPECT_TRUE(has_property_star(TileTuple({kSquare, kLiftedSquare})).holds);
}

TEST(PropertyStar, VacuousInTheSameDimensionTwo) {
  EXPECT_TRUE(has_property_star(TileTuple({tile(2, {{0, 0}, {1, 0}, {3, 0}})})).holds);
}

TEST(PropertyStar, FailsWhenTwoFirstPointsShareASpan) {
  // span{(1,0,0),(1,1,1)} = span{(0,1,1),(1,1,1)}
  const TileTuple t({tile(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 1}}), tile(3, {{0, 0, 0}, {1, 1, 1}})});
  ASSERT_TRUE(is_independent_tuple(t).independent);
  const auto r = has_property_star(t);
  EXPECT_FALSE(r.holds);
  EXPECT_NE(r.witness_a, r.witness_b);
  EXPECT_EQ(RationalSubspace::span(3, r.witness_a), RationalSubspace::span(3, r.witness_b));
}

TEST(PropertyStar, Preconditions) {
  EXPECT_THROW(has_property_star(TileTuple({kSquare})), Error);
  const Tile flat = tile(3, {{0, 0, 0}, {1, 0, 0}});
  EXPECT_THROW(has_property_star(TileTuple({flat, flat})), Error);
}

TEST(SpanClasses, GroupSelectionsByHyperplane) {
  const auto c = span_classes(TileTuple({kSquare, kLiftedSquare}));
  std::size_t total = 0;
  for (const auto& [span, members] : c.classes) {
    EXPECT_EQ(span.dim(), 2u);
    total += members.size();
  }
  EXPECT_EQ(total, 9u);
}

TEST(VwDimension, ProjectionModuloSubspace) {
  const std::vector<Vec> vectors{v({1, 0}), v({0, 1})};
  const std::vector<Vec> shifts{v({0, 0}), v({0, 0})};
  const auto x_axis = RationalSubspace::span(2, std::vector<Vec>{v({1, 0})});
  EXPECT_EQ(vw_dimension(vectors, shifts, {0}, x_axis), 0u);
  EXPECT_EQ(vw_dimension(vectors, shifts, {1}, x_axis), 1u);
  EXPECT_EQ(vw_dimension(vectors, shifts, {0, 1}, RationalSubspace::zero(2)), 2u);
  EXPECT_EQ(vw_dimension(vectors, std::vector<Vec>{v({0, 1}), v({0, 0})}, {0}, x_axis), 1u);
}

}  // namespace
}  // namespace tilekit
