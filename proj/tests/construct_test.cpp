#include <gtest/gtest.h>

#include <random>

#include "support/test_support.hpp"
#include "tilekit/construct.hpp"
#include "tilekit/error.hpp"
#include "tilekit/verify.hpp"

namespace tilekit {
namespace {

using testing::tile;
using testing::v;

RationalSubspace line(std::initializer_list<long> dir) {
  return RationalSubspace::span(dir.size(), std::vector<Vec>{make_vec(dir)});
}

TEST(TranslateByLattice, Examples) {
  const Tile f = Tile::integers({0, 1});
  const Lattice l = Lattice::diagonal({2});
  EXPECT_EQ(translate_by_lattice(f, {}, l), f);
  const Tile g = translate_by_lattice(f, {{v({1}), v({2})}}, l);
  EXPECT_EQ(g, Tile::integers({0, 3}));
  EXPECT_TRUE(is_tiling(g, PeriodicSet(l, {v({0})})));
  EXPECT_THROW(translate_by_lattice(f, {{v({1}), v({1})}}, l), Error);
}

TEST(TranslateByLattice, SquareKeepsTiling) {
  const Tile f = tile(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  const Lattice l = Lattice::diagonal({2, 2, 1});
  const Tile g = translate_by_lattice(f, {{v({1, 0, 0}), v({2, 0, 0})}}, l);
  EXPECT_EQ(g.size(), 4u);
  EXPECT_TRUE(is_tiling(g, PeriodicSet(l, {v({0, 0, 0})})));
}

TEST(LatticePointOrder, ShellsThenLexicographic) {
  LatticePointOrder order(Lattice::identity(2));
  EXPECT_EQ(order.next(), v({0, 0}));
  EXPECT_EQ(order.next(), v({-1, -1}));
  EXPECT_EQ(order.next(), v({-1, 0}));
  EXPECT_EQ(order.next(), v({-1, 1}));
  EXPECT_EQ(order.next(), v({0, -1}));
}

TEST(AvoidSubspaces, PinnedExamples) {
  EXPECT_EQ(avoid_subspaces(Lattice::identity(2), {}), v({0, 0}));
  EXPECT_EQ(avoid_subspaces(Lattice::identity(2), {{v({0, 0}), line({1, 0})}}), v({-1, -1}));
  EXPECT_EQ(avoid_subspaces(Lattice::diagonal({2, 2}), {{v({0, 0}), line({1, 0})}, {v({0, 0}), line({0, 1})}}),
            v({-2, -2}));
}

TEST(AvoidSubspaces, NeverReturnsAPointInAnInputSubspace) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<AffineSubspace> subs;
    for (int k = 0; k < 6; ++k) {
      const Vec base = v({testing::rand_in(rng, -2, 2), testing::rand_in(rng, -2, 2), testing::rand_in(rng, -2, 2)});
      const Vec dir = v({testing::rand_in(rng, -2, 2), testing::rand_in(rng, -2, 2), testing::rand_in(rng, -2, 2)});
      subs.push_back({base, RationalSubspace::span(3, std::vector<Vec>{dir})});
    }
    const Lattice l = testing::random_sublattice(rng, 3, testing::rand_in(rng, 1, 6));
    const Vec x = avoid_subspaces(l, subs);
    EXPECT_TRUE(l.contains(x));
    for (const auto& s : subs) EXPECT_FALSE(s.contains(x));
  }
}

TEST(AvoidSubspaces, RejectsFullSubspaces) {
  EXPECT_THROW(avoid_subspaces(Lattice::identity(1), {{v({0}), line({1})}}), Error);
}

TEST(ForcingAssignment, Empty) {
  EXPECT_TRUE(forcing_assignment({}, Lattice::identity(2), {line({1, 0})}).empty());
}

TEST(ForcingAssignment, SingleVectorOffTheAxis) {
  const auto g = forcing_assignment({v({1, 0})}, Lattice::identity(2), {line({1, 0})});
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], v({-1, -1}));
  EXPECT_EQ(vw_dimension({v({1, 0})}, g, {0}, line({1, 0})), 1u);
}

TEST(ForcingAssignment, GeneralPositionInThreeDimensions) {
  const std::vector<Vec> vectors{v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 0}), v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 0})};
  const std::vector<RationalSubspace> ws{RationalSubspace::zero(3), line({1, 0, 0}), line({0, 1, 0}), line({1, 1, 0})};
  const auto g = forcing_assignment(vectors, Lattice::diagonal({2, 2, 1}), ws);
  ASSERT_EQ(g.size(), 6u);
  for (const auto& x : g) EXPECT_TRUE(Lattice::diagonal({2, 2, 1}).contains(x));
}

TEST(BrotherTiles, DominoInThePlane) {
  const Tile f = tile(2, {{0, 0}, {1, 0}});
  const PeriodicSet a(Lattice::diagonal({2, 1}), {v({0, 0})});
  const auto b = brother_tiles(f, a);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], tile(2, {{0, 0}, {1, -1}}));
  EXPECT_TRUE(is_tiling(b[0], a));
  EXPECT_TRUE(is_independent_tuple(TileTuple({b[0], f})).independent);
  EXPECT_EQ(brother_tiles(f, a), b);
}

TEST(BrotherTiles, SquareInThreeDimensions) {
  const Tile f = tile(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  const PeriodicSet a(Lattice::diagonal({2, 2, 1}), {v({0, 0, 0})});
  const auto b = brother_tiles(f, a);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_TRUE(is_joint_cotile(TileTuple({b[0], b[1], f}), a));
  EXPECT_TRUE(is_independent_tuple(TileTuple({b[0], b[1], f})).independent);
  EXPECT_TRUE(has_property_star(TileTuple({b[0], f})).holds);
}

TEST(BrotherTiles, Errors) {
  const PeriodicSet a(Lattice::diagonal({2, 1}), {v({0, 0})});
  try {
    brother_tiles(tile(2, {{0, 0}}), PeriodicSet::whole_space(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTrivialTile);
  }
  try {
    brother_tiles(tile(2, {{0, 0}, {0, 1}}), a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotATiling);
  }
  try {
    brother_tiles(tile(2, {{1, 0}, {2, 0}}), a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotNormalized);
  }
}

TEST(EquivCondition, PlaneTileGetsACertificate) {
  const Tile f = tile(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const auto c = equiv_condition(f, 8);
  ASSERT_TRUE(c.cotile.has_value());
  EXPECT_EQ(c.brothers.size(), 1u);
  ASSERT_TRUE(c.star_tuple.has_value());
  EXPECT_TRUE(is_joint_cotile(*c.star_tuple, *c.cotile));
}

TEST(EquivCondition, ThreeDimensionalCertificateHasPropertyStar) {
  const Tile f = tile(3, {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}});
  const auto c = equiv_condition(f, 6);
  ASSERT_TRUE(c.cotile.has_value());
  ASSERT_TRUE(c.star_tuple.has_value());
  EXPECT_EQ(c.star_tuple->size(), 2u);
  EXPECT_TRUE(has_property_star(*c.star_tuple).holds);
  EXPECT_TRUE(is_joint_cotile(*c.star_tuple, *c.cotile));
}

TEST(EquivCondition, NonTileHasNoCertificate) {
  const auto c = equiv_condition(Tile::integers({0, 1, 3, 4, 6, 7}), 24);
  EXPECT_FALSE(c.cotile.has_value());
  EXPECT_TRUE(c.brothers.empty());
}

}  // namespace
}  // namespace tilekit
