#include "cli/json_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tilekit::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

const json& array_field(const json& j, const char* key, const std::string& where) {
  const json& a = field(j, key, where);
  if (!a.is_array()) fail(where + "/" + key, "expected an array");
  return a;
}

std::size_t size_from(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

// Unwraps {"key": {...}} envelopes emitted by other subcommands.
const json& unwrap(const json& j, const char* key) {
  if (j.is_object() && j.contains(key) && j.at(key).is_object()) return j.at(key);
  return j;
}

std::vector<LayeredFunction::Symbol> symbols_from(const json& j, const std::vector<std::size_t>& perm,
                                                  const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of layers");
  std::vector<LayeredFunction::Symbol> out;
  for (std::size_t n = 0; n < j.size(); ++n) {
    const std::string w = where + "/" + std::to_string(n);
    if (!j[n].is_array() || j[n].size() != perm.size())
      fail(w, "expected " + std::to_string(perm.size()) + " values, one per residue");
    LayeredFunction::Symbol s(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) s[perm[k]] = rational_from(j[n][k], w + "/" + std::to_string(k));
    out.push_back(std::move(s));
  }
  return out;
}

json symbols_to_json(const std::vector<LayeredFunction::Symbol>& layers) {
  json out = json::array();
  for (const auto& s : layers) {
    json row = json::array();
    for (const auto& x : s) row.push_back(to_json(x));
    out.push_back(std::move(row));
  }
  return out;
}

// perm[k] = canonical index of the k-th listed residue; identity when absent.
std::vector<std::size_t> residue_order(const json& j, const QuotientGroup& g, std::size_t dim, const std::string& where) {
  std::vector<std::size_t> perm(g.size());
  if (!j.contains("residues")) {
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    return perm;
  }
  const json& r = array_field(j, "residues", where);
  if (r.size() != g.size()) fail(where + "/residues", "expected " + std::to_string(g.size()) + " residues");
  std::vector<char> seen(g.size(), 0);
  for (std::size_t k = 0; k < r.size(); ++k) {
    perm[k] = g.index_of(vec_from(r[k], dim, where + "/residues/" + std::to_string(k)));
    if (seen[perm[k]]++) fail(where + "/residues/" + std::to_string(k), "residue listed twice");
  }
  return perm;
}

}  // namespace

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

json to_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

json to_json(const Rational& x) {
  if (x.get_den() == 1) return to_json(Integer(x.get_num()));
  return json(x.get_str());
}

json to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const Lattice& l) {
  json basis = json::array();
  for (const auto& c : l.basis()) basis.push_back(to_json(c));
  return {{"dim", l.dim()}, {"basis", basis}};
}

json to_json(const PeriodicSet& a) {
  json members = json::array();
  for (const auto& m : a.members()) members.push_back(to_json(m));
  return {{"lattice", to_json(a.lattice())}, {"members", members}};
}

json to_json(const Tile& f) {
  json points = json::array();
  for (const auto& p : f.points()) points.push_back(to_json(p));
  return {{"dim", f.dim()}, {"points", points}};
}

json to_json(const TileTuple& t) {
  json tiles = json::array();
  for (const auto& f : t.tiles()) tiles.push_back(to_json(f));
  return {{"tiles", tiles}};
}

json to_json(const PeriodicRationalFunction& f) {
  json residues = json::array(), values = json::array();
  for (std::size_t k = 0; k < f.group().size(); ++k) {
    residues.push_back(to_json(f.group().residue(k)));
    values.push_back(to_json(f.values()[k]));
  }
  return {{"lattice", to_json(f.lattice())}, {"residues", residues}, {"values", values}};
}

json to_json(const LayeredFunction& f) {
  json residues = json::array();
  for (const auto& r : f.group().residues()) residues.push_back(to_json(r));
  return {{"gamma0", to_json(f.gamma0())},
          {"transversal", to_json(f.transversal())},
          {"residues", residues},
          {"left", symbols_to_json(f.left())},
          {"center", symbols_to_json(f.center())},
          {"right", symbols_to_json(f.right())},
          {"start", f.start()}};
}

json to_json(const MixedTile& f) {
  json points = json::array();
  for (const auto& [n, t] : f.points()) points.push_back({to_json(n), t});
  return {{"p", f.p()}, {"points", points}};
}

json to_json(const MixedPeriodicSet& a) {
  json fibers = json::array();
  for (const auto& s : a.fibers) fibers.push_back(to_json(s));
  return {{"p", a.p}, {"fibers", fibers}};
}

Integer integer_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) fail(where, "expected an integer, got \"" + j.get<std::string>() + "\"");
    return x;
  }
  fail(where, "expected an integer");
}

Rational rational_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(integer_from(j, where));
  if (j.is_string()) {
    Rational x;
    if (x.set_str(j.get<std::string>(), 10) != 0 || x.get_den() == 0)
      fail(where, "expected a rational like \"3/4\", got \"" + j.get<std::string>() + "\"");
    x.canonicalize();
    return x;
  }
  fail(where, "expected an integer or a rational string");
}

Vec vec_from(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an integer vector");
  if (j.size() != dim) fail(where, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from(j[i], where + "/" + std::to_string(i)));
  return v;
}

Lattice lattice_from(const json& j) {
  const std::size_t dim = size_from(field(j, "dim", "lattice"), "lattice/dim");
  if (dim == 0) fail("lattice/dim", "dimension must be positive");
  const json& b = array_field(j, "basis", "lattice");
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < b.size(); ++i) cols.push_back(vec_from(b[i], dim, "lattice/basis/" + std::to_string(i)));
  return hnf(dim, std::move(cols));
}

PeriodicSet periodic_set_from(const json& j0) {
  const json& j = unwrap(j0, "cotile");
  const Lattice l = lattice_from(field(j, "lattice", "cotile"));
  const json& m = array_field(j, "members", "cotile");
  std::vector<Vec> members;
  for (std::size_t i = 0; i < m.size(); ++i) members.push_back(vec_from(m[i], l.dim(), "cotile/members/" + std::to_string(i)));
  return PeriodicSet(l, std::move(members));
}

Tile tile_from(const json& j0) {
  const json& j = unwrap(j0, "tile");
  const std::size_t dim = size_from(field(j, "dim", "tile"), "tile/dim");
  if (dim == 0) fail("tile/dim", "dimension must be positive");
  const json& p = array_field(j, "points", "tile");
  if (p.empty()) fail("tile/points", "a tile needs at least one point");
  std::vector<Vec> points;
  for (std::size_t i = 0; i < p.size(); ++i) points.push_back(vec_from(p[i], dim, "tile/points/" + std::to_string(i)));
  return Tile(dim, std::move(points));
}

TileTuple tuple_from(const json& j) {
  if (!j.is_object() || !j.contains("tiles")) return TileTuple({normalize(tile_from(j)).tile});
  const json& a = array_field(j, "tiles", "tuple");
  if (a.empty()) fail("tuple/tiles", "expected at least one tile");
  std::vector<Tile> tiles;
  for (std::size_t i = 0; i < a.size(); ++i) {
    try {
      tiles.push_back(normalize(tile_from(a[i])).tile);
    } catch (const InputError& e) {
      fail("tuple/tiles/" + std::to_string(i), e.what());
    }
  }
  return TileTuple(std::move(tiles));
}

PeriodicRationalFunction function_from(const json& j0) {
  const json& j = unwrap(j0, "function");
  const Lattice l = lattice_from(field(j, "lattice", "function"));
  const auto g = quotient(l);
  const auto perm = residue_order(j, *g, l.dim(), "function");
  const json& v = array_field(j, "values", "function");
  if (v.size() != g->size()) fail("function/values", "expected " + std::to_string(g->size()) + " values, one per residue");
  std::vector<Rational> values(g->size());
  for (std::size_t k = 0; k < v.size(); ++k) values[perm[k]] = rational_from(v[k], "function/values/" + std::to_string(k));
  return PeriodicRationalFunction(l, std::move(values));
}

LayeredFunction layered_from(const json& j0) {
  const json& j = unwrap(j0, "layered");
  const Lattice g0 = lattice_from(field(j, "gamma0", "layered"));
  const Vec v = vec_from(field(j, "transversal", "layered"), g0.dim(), "layered/transversal");
  std::vector<Vec> gens = g0.basis();
  gens.push_back(v);
  const Lattice full = hnf(g0.dim(), gens);
  if (!full.is_full_rank()) fail("layered/transversal", "transversal lies in the span of gamma0");
  const auto g = quotient(full);
  const auto perm = residue_order(j, *g, g0.dim(), "layered");
  const json& start = field(j, "start", "layered");
  if (!start.is_number_integer()) fail("layered/start", "expected an integer");
  return LayeredFunction(g0, v, symbols_from(field(j, "left", "layered"), perm, "layered/left"),
                         symbols_from(field(j, "center", "layered"), perm, "layered/center"),
                         symbols_from(field(j, "right", "layered"), perm, "layered/right"), start.get<std::int64_t>());
}

MixedTile mixed_tile_from(const json& j0) {
  const json& j = unwrap(j0, "tile");
  const std::size_t p = size_from(field(j, "p", "tile"), "tile/p");
  const json& a = array_field(j, "points", "tile");
  std::vector<std::pair<Integer, unsigned long>> points;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string w = "tile/points/" + std::to_string(i);
    if (!a[i].is_array() || a[i].size() != 2) fail(w, "expected [n, t]");
    points.emplace_back(integer_from(a[i][0], w + "/0"), size_from(a[i][1], w + "/1"));
  }
  return MixedTile(p, std::move(points));
}

MixedPeriodicSet mixed_set_from(const json& j0) {
  const json& j = unwrap(j0, "cotile");
  MixedPeriodicSet a;
  a.p = size_from(field(j, "p", "cotile"), "cotile/p");
  const json& f = array_field(j, "fibers", "cotile");
  if (f.size() != a.p) fail("cotile/fibers", "expected one fiber per residue mod p");
  for (std::size_t t = 0; t < f.size(); ++t) {
    try {
      a.fibers.push_back(periodic_set_from(f[t]));
    } catch (const InputError& e) {
      fail("cotile/fibers/" + std::to_string(t), e.what());
    }
  }
  return a;
}

Cotile cotile_from(const json& j0) {
  const json* j = &j0;
  if (j->is_object() && j->contains("cotiles")) {
    const json& list = array_field(*j, "cotiles", "cotile");
    if (list.empty()) fail("cotile/cotiles", "the list of co-tiles is empty");
    j = &list[0];
  }
  const json& inner = unwrap(unwrap(*j, "cotile"), "function");
  if (inner.is_object() && inner.contains("values")) return function_from(inner);
  return periodic_set_from(inner);
}

}  // namespace tilekit::cli
