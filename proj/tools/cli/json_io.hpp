#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tilekit/layered.hpp"
#include "tilekit/lattice.hpp"
#include "tilekit/tiles.hpp"
#include "tilekit/torsion.hpp"

namespace tilekit::cli {

using nlohmann::json;

inline constexpr const char* kSchema = "tilekit/1";

// Malformed or schema-violating input; maps to the usage exit code.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json load_file(const std::string& path);

json to_json(const Integer& x);
json to_json(const Rational& x);
json to_json(const Vec& v);
json to_json(const Lattice& l);
json to_json(const PeriodicSet& a);
json to_json(const Tile& f);
json to_json(const TileTuple& t);
json to_json(const PeriodicRationalFunction& f);
json to_json(const LayeredFunction& f);
json to_json(const MixedTile& f);
json to_json(const MixedPeriodicSet& a);

Integer integer_from(const json& j, const std::string& where);
Rational rational_from(const json& j, const std::string& where);
Vec vec_from(const json& j, std::size_t dim, const std::string& where);
Lattice lattice_from(const json& j);
PeriodicSet periodic_set_from(const json& j);
Tile tile_from(const json& j);
// Accepts {"tiles": [...]} or a single tile; each tile is translated to contain 0.
TileTuple tuple_from(const json& j);
PeriodicRationalFunction function_from(const json& j);
LayeredFunction layered_from(const json& j);
MixedTile mixed_tile_from(const json& j);
MixedPeriodicSet mixed_set_from(const json& j);

// A co-tile file holds either a set ("members") or a function ("values").
using Cotile = std::variant<PeriodicSet, PeriodicRationalFunction>;
Cotile cotile_from(const json& j);

}  // namespace tilekit::cli
