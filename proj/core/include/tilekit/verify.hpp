#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tilekit/lattice.hpp"
#include "tilekit/tiles.hpp"

namespace tilekit {

struct Defect {
  Vec residue;
  Rational value;  // the convolution value found there
};

struct TilingReport {
  static constexpr std::size_t kMaxDefects = 32;

  bool ok = true;
  std::size_t defect_count = 0;
  std::vector<Defect> defects;  // at most kMaxDefects, in residue order
};

// Compares g * f against the constant level on the fundamental domain of f.
TilingReport check_level(const WeightedTile& g, const PeriodicRationalFunction& f, const Rational& level);

TilingReport check_tiling(const Tile& f, const PeriodicSet& a);
bool is_tiling(const Tile& f, const PeriodicSet& a);

struct JointReport {
  bool ok = true;
  std::optional<std::size_t> failing_tile;
  TilingReport report;  // for the failing tile
  bool equal_sizes = true;
};

JointReport check_joint_cotile(const TileTuple& t, const PeriodicSet& a);
bool is_joint_cotile(const TileTuple& t, const PeriodicSet& a);

bool is_level_tiling(const WeightedTile& g, const PeriodicRationalFunction& f, const Rational& level);
bool is_level_tiling(const Tile& f, const PeriodicRationalFunction& fn, const Rational& level);

Rational mean(const PeriodicRationalFunction& f);

}  // namespace tilekit
