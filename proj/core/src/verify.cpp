#include "tilekit/verify.hpp"

namespace tilekit {

TilingReport check_level(const WeightedTile& g, const PeriodicRationalFunction& f, const Rational& level) {
  const PeriodicRationalFunction c = convolve(g, f);
  TilingReport r;
  for (std::size_t i = 0; i < c.values().size(); ++i) {
    if (c.values()[i] == level) continue;
    r.ok = false;
    ++r.defect_count;
    if (r.defects.size() < TilingReport::kMaxDefects) r.defects.push_back({c.group().residue(i), c.values()[i]});
  }
  return r;
}

TilingReport check_tiling(const Tile& f, const PeriodicSet& a) {
  return check_level(WeightedTile::indicator(f), PeriodicRationalFunction::indicator(a), Rational(1));
}

bool is_tiling(const Tile& f, const PeriodicSet& a) { return check_tiling(f, a).ok; }

JointReport check_joint_cotile(const TileTuple& t, const PeriodicSet& a) {
  JointReport out;
  for (const auto& tile : t.tiles()) out.equal_sizes = out.equal_sizes && tile.size() == t[0].size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    TilingReport r = check_tiling(t[i], a);
    if (!r.ok) {
      out.ok = false;
      out.failing_tile = i;
      out.report = std::move(r);
      break;
    }
  }
  return out;
}

bool is_joint_cotile(const TileTuple& t, const PeriodicSet& a) { return check_joint_cotile(t, a).ok; }

bool is_level_tiling(const WeightedTile& g, const PeriodicRationalFunction& f, const Rational& level) {
  return check_level(g, f, level).ok;
}

bool is_level_tiling(const Tile& f, const PeriodicRationalFunction& fn, const Rational& level) {
  return is_level_tiling(WeightedTile::indicator(f), fn, level);
}

Rational mean(const PeriodicRationalFunction& f) {
  Rational s = 0;
  for (const auto& v : f.values()) s += v;
  s /= Rational(static_cast<unsigned long>(f.values().size()));
  return s;
}

}  // namespace tilekit
