#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "cli/json_io.hpp"
#include "cli/render.hpp"
#include "tilekit/analysis.hpp"
#include "tilekit/construct.hpp"
#include "tilekit/decompose.hpp"
#include "tilekit/error.hpp"
#include "tilekit/solve.hpp"
#include "tilekit/torsion.hpp"
#include "tilekit/verify.hpp"

namespace tilekit::cli {

namespace {

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  std::string max_index;
  std::string render;
  long window = 6;
};

struct Outcome {
  json body = json::object();
  int code = kExitOk;
  std::optional<std::string> picture;
};

Integer parse_integer(const std::string& s, const std::string& option) {
  Integer x;
  if (s.empty() || x.set_str(s, 10) != 0) throw InputError(option + ": expected an integer, got \"" + s + "\"");
  return x;
}

Rational parse_rational(const std::string& s, const std::string& option) {
  Rational x;
  if (s.empty() || x.set_str(s, 10) != 0 || x.get_den() == 0)
    throw InputError(option + ": expected a rational number, got \"" + s + "\"");
  x.canonicalize();
  return x;
}

Integer require_max_index(const Globals& g) {
  if (g.max_index.empty()) throw InputError("--max-index is required for this search");
  const Integer n = parse_integer(g.max_index, "--max-index");
  if (n < 1) throw InputError("--max-index must be positive");
  return n;
}

json defects_json(const TilingReport& r) {
  json out = json::array();
  for (const auto& d : r.defects) out.push_back({{"residue", to_json(d.residue)}, {"value", to_json(d.value)}});
  return out;
}

void maybe_render(const Globals& g, Outcome& o, const Tile& f, const PeriodicSet& a) {
  if (g.render.empty()) return;
  o.picture = render_tiling(f, a, g.window, g.render == "svg" ? RenderFormat::kSvg : RenderFormat::kAscii);
}

json cotile_entry(const PeriodicSet& a) {
  json e = to_json(a);
  e["stabilizer"] = to_json(stabilizer(a));
  return e;
}

TilingReport first_level_failure(const TileTuple& t, const PeriodicRationalFunction& f, const Rational& level,
                                 std::optional<std::size_t>& failing) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    TilingReport r = check_level(WeightedTile::indicator(t[i]), f, level);
    if (!r.ok) {
      failing = i;
      return r;
    }
  }
  return {};
}

Outcome cmd_verify(const Globals& g, const std::string& tiles, const std::string& cotile, const std::string& level_s) {
  const TileTuple t = tuple_from(load_file(tiles));
  const Cotile c = cotile_from(load_file(cotile));
  const Rational level = parse_rational(level_s, "--level");
  Outcome o;
  std::optional<std::size_t> failing;
  TilingReport report;
  if (const auto* a = std::get_if<PeriodicSet>(&c)) {
    if (level == 1) {
      const JointReport j = check_joint_cotile(t, *a);
      failing = j.failing_tile;
      report = j.report;
      o.body["equal_sizes"] = j.equal_sizes;
    } else {
      report = first_level_failure(t, PeriodicRationalFunction::indicator(*a), level, failing);
    }
    maybe_render(g, o, t[0], *a);
  } else {
    report = first_level_failure(t, std::get<PeriodicRationalFunction>(c), level, failing);
  }
  const bool verdict = !failing.has_value() && report.ok;
  o.body["verdict"] = verdict;
  o.body["level"] = to_json(level);
  o.body["failing_tile"] = failing ? json(*failing) : json(nullptr);
  o.body["defect_count"] = report.defect_count;
  o.body["defects"] = defects_json(report);
  o.code = verdict ? kExitOk : kExitFalse;
  return o;
}

Outcome cmd_solve(const Globals& g, const std::string& tiles, bool all, unsigned threads) {
  const TileTuple t = tuple_from(load_file(tiles));
  const Integer max_index = require_max_index(g);
  SearchOptions opts;
  opts.mode = all ? SearchMode::kAll : SearchMode::kFirst;
  opts.threads = threads;
  const PeriodicSearchResult r = search_periodic_cotile(t, max_index, opts);
  Outcome o;
  json list = json::array();
  for (const auto& a : r.cotiles) list.push_back(cotile_entry(a));
  o.body["found"] = !r.cotiles.empty();
  o.body["max_index"] = to_json(max_index);
  o.body["lattices_searched"] = r.lattices_searched;
  o.body["cotiles"] = list;
  o.code = r.cotiles.empty() ? kExitFalse : kExitOk;
  if (!r.cotiles.empty()) maybe_render(g, o, t[0], r.cotiles.front());
  return o;
}

Outcome cmd_solve_z(const Globals& g, const std::string& tile) {
  const Tile f = tile_from(load_file(tile));
  const NormalizedTile n = normalize(f);
  const ZTilingResult r = search_Z_cotile(n.tile);
  Outcome o;
  o.body["verdict"] = r.cotile ? "TILES" : "NO-TILING";
  o.body["period_bound"] = to_json(r.period_bound);
  o.body["periods_examined"] = r.periods_examined;
  if (r.cotile) {
    const PeriodicSet a = r.cotile->translated(-n.translation);
    o.body["cotile"] = cotile_entry(a);
    maybe_render(g, o, f, a);
  } else {
    o.body["cotile"] = nullptr;
  }
  o.code = r.cotile ? kExitOk : kExitFalse;
  return o;
}

json selection_json(const std::vector<Vec>& s) {
  json out = json::array();
  for (const auto& v : s) out.push_back(to_json(v));
  return out;
}

Outcome cmd_independent(const std::string& tiles, bool with_cotiles) {
  const TileTuple t = tuple_from(load_file(tiles));
  const IndependenceResult r = is_independent_tuple(t);
  Outcome o;
  o.body["independent"] = r.independent;
  o.body["witness"] = selection_json(r.witness);
  if (with_cotiles) {
    o.body["period_lattice"] = to_json(independent_period_lattice(t));
    json list = json::array();
    for (const auto& a : all_joint_cotiles(t)) list.push_back(cotile_entry(a));
    o.body["cotiles"] = list;
  }
  o.code = r.independent ? kExitOk : kExitFalse;
  return o;
}

Outcome cmd_star(const std::string& tiles) {
  const TileTuple t = tuple_from(load_file(tiles));
  const PropertyStarResult r = has_property_star(t);
  Outcome o;
  o.body["property_star"] = r.holds;
  o.body["witness"] = r.holds ? json::array() : json::array({selection_json(r.witness_a), selection_json(r.witness_b)});
  o.body["span_classes"] = span_classes(t).classes.size();
  o.code = r.holds ? kExitOk : kExitFalse;
  return o;
}

PeriodicRationalFunction as_function(const Cotile& c) {
  if (const auto* a = std::get_if<PeriodicSet>(&c)) return PeriodicRationalFunction::indicator(*a);
  return std::get<PeriodicRationalFunction>(c);
}

Outcome cmd_decompose(const std::string& tiles, const std::string& cotile, std::optional<std::size_t> depth,
                      const std::vector<std::string>& levels_s) {
  const TileTuple t = tuple_from(load_file(tiles));
  const PeriodicRationalFunction f = as_function(cotile_from(load_file(cotile)));
  std::vector<Integer> levels;
  for (const auto& s : levels_s) levels.push_back(parse_integer(s, "--levels"));
  const DecompositionTree tree = build_decomposition(t, f, depth, levels);
  const DecompositionReport rep = verify_decomposition(tree);
  Outcome o;
  json nodes = json::object();
  for (const auto& [chain, fn] : tree.nodes) {
    nodes[selection_json(chain).dump()] = to_json(fn);
  }
  json constants = json::array();
  for (std::size_t i = 1; i <= tree.depth; ++i) constants.push_back(to_json(decomposition_constant(tree, i)));
  json levels_out = json::array();
  for (const auto& l : tree.levels) levels_out.push_back(to_json(l));
  o.body["q"] = to_json(tree.q);
  o.body["depth"] = tree.depth;
  o.body["levels"] = levels_out;
  o.body["constants"] = constants;
  o.body["tree"] = nodes;
  o.body["report"] = {{"ok", rep.ok()},
                      {"recursion", rep.recursion},
                      {"reconstruction", rep.reconstruction},
                      {"periods", rep.periods},
                      {"levels", rep.levels},
                      {"range", rep.range},
                      {"violations", rep.violations}};
  o.code = rep.ok() ? kExitOk : kExitFalse;
  return o;
}

Outcome cmd_dilate(const std::string& tile, const std::string& cotile, const std::vector<std::string>& rs,
                   const std::string& level_s) {
  const Tile f = tile_from(load_file(tile));
  const PeriodicRationalFunction fn = as_function(cotile_from(load_file(cotile)));
  const Rational level = parse_rational(level_s, "--level");
  if (level.get_den() != 1) throw InputError("--level: dilation needs an integer level");
  const Integer q = compute_q(fn, Integer(static_cast<unsigned long>(f.size())), level.get_num());
  Outcome o;
  json results = json::array();
  bool all = true;
  for (const auto& s : rs) {
    const Integer r = parse_integer(s, "--r");
    const bool holds = dilation_check(f, fn, level, r);
    all = all && holds;
    results.push_back({{"r", to_json(r)},
                       {"holds", holds},
                       {"guaranteed", floor_mod(r, q) == floor_mod(Integer(1), q)},
                       {"dilated_tile", to_json(dilate(f, r))}});
  }
  o.body["q"] = to_json(q);
  o.body["level"] = to_json(level);
  o.body["results"] = results;
  o.body["verdict"] = all;
  o.code = all ? kExitOk : kExitFalse;
  return o;
}

Outcome cmd_brothers(const Globals& g, const std::string& tile, const std::string& cotile) {
  const Tile f = tile_from(load_file(tile));
  Outcome o;
  PeriodicSet a;
  std::vector<Tile> brothers;
  if (cotile.empty()) {
    const EquivalenceCertificate cert = equiv_condition(f, require_max_index(g));
    if (!cert.cotile) {
      o.body["found"] = false;
      o.code = kExitFalse;
      return o;
    }
    a = *cert.cotile;
    brothers = cert.brothers;
  } else {
    const Cotile c = cotile_from(load_file(cotile));
    if (!std::holds_alternative<PeriodicSet>(c)) throw InputError("--cotile: brother tiles need a co-tile set");
    a = std::get<PeriodicSet>(c);
    brothers = brother_tiles(f, a);
  }
  std::vector<Tile> all = brothers;
  all.push_back(f);
  const TileTuple tuple(all);
  const bool joint = is_joint_cotile(tuple, a);
  const bool independent = is_independent_tuple(tuple).independent;
  std::vector<Tile> sub(brothers.begin(), brothers.end() - 1);
  sub.push_back(f);
  const bool star = has_property_star(TileTuple(sub)).holds;
  o.body["found"] = true;
  o.body["tiles"] = to_json(tuple)["tiles"];
  o.body["cotile"] = to_json(a);
  o.body["report"] = {{"joint_tiling", joint}, {"independent", independent}, {"property_star", star}};
  o.code = joint && independent && star ? kExitOk : kExitFalse;
  maybe_render(g, o, f, a);
  return o;
}

Outcome cmd_zp(long p, const std::string& tile, const std::string& cotile) {
  json tj = load_file(tile);
  if (tj.is_object() && !tj.contains("p") && p > 0) tj["p"] = p;
  const MixedTile f = mixed_tile_from(tj);
  if (p > 0 && static_cast<unsigned long>(p) != f.p())
    throw Error(ErrorCode::kDimensionMismatch, "--p differs from the modulus in the tile file");
  const Classification cls = classify(f);
  Outcome o;
  o.body["p"] = f.p();
  o.body["classification"] = cls.kind == FiberKind::kGeneric ? "GENERIC" : "FULL_FIBER";
  o.body["base"] = cls.base ? to_json(*cls.base) : json(nullptr);
  if (cotile.empty()) return o;
  const TorsionVerdict v = cotile_conclusion(f, mixed_set_from(load_file(cotile)));
  const bool verdict = cls.kind == FiberKind::kGeneric ? v.reconstructed : v.projection_tiles && v.base_tiles_z;
  o.body["z_period"] = to_json(v.z_period);
  o.body["reconstructed"] = v.reconstructed;
  o.body["projection"] = v.projection ? to_json(*v.projection) : json(nullptr);
  o.body["projection_tiles"] = v.projection_tiles;
  o.body["base_tiles_z"] = v.base_tiles_z;
  o.body["verdict"] = verdict;
  o.code = verdict ? kExitOk : kExitFalse;
  return o;
}

Outcome lifted(const Globals& g, const TileTuple& t, const PeriodicSet& a) {
  Outcome o;
  o.body["cotile"] = to_json(a);
  o.body["stabilizer"] = to_json(stabilizer(a));
  o.body["verdict"] = is_joint_cotile(t, a);
  maybe_render(g, o, t[0], a);
  return o;
}

Outcome cmd_lift(const Globals& g, const std::string& tiles, const std::string& cotile, const std::string& gamma0) {
  const TileTuple t = tuple_from(load_file(tiles));
  const json cj = load_file(cotile);
  if (!gamma0.empty()) {
    const json gj = load_file(gamma0);
    return lifted(g, t, lift_to_full_period(t, periodic_set_from(cj), lattice_from(gj.contains("gamma0") ? gj["gamma0"] : gj)));
  }
  return lifted(g, t, lift_to_full_period(t, layered_from(cj)));
}

std::vector<LayeredFunction> pieces_from(const std::string& path) {
  const json j = load_file(path);
  if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array())
    throw InputError(path + ": expected {\"pieces\": [...]}");
  std::vector<LayeredFunction> out;
  for (std::size_t i = 0; i < j["pieces"].size(); ++i) {
    try {
      out.push_back(layered_from(j["pieces"][i]));
    } catch (const InputError& e) {
      throw InputError(path + ": pieces/" + std::to_string(i) + "/" + e.what());
    }
  }
  return out;
}

Outcome cmd_piecewise(const Globals& g, const std::string& tiles, const std::string& pieces) {
  const TileTuple t = tuple_from(load_file(tiles));
  return lifted(g, t, piecewise_to_periodic(t, pieces_from(pieces)));
}

Outcome cmd_stabilizer(const std::string& pieces) {
  const CommonStabilizerResult r = common_stabilizer(pieces_from(pieces));
  Outcome o;
  o.body["all_d_periodic"] = r.all_d_periodic;
  o.body["gamma"] = r.gamma ? to_json(*r.gamma) : json(nullptr);
  return o;
}

// Seeded fixtures: tiles that lift every residue of a random lattice L, so
// that L itself is a joint co-tile.
Outcome cmd_fixture(const Globals& g, const std::string& kind, std::size_t d, long index) {
  if (d < 1 || d > 4) throw InputError("--dim must be between 1 and 4");
  if (index < 1 || index > 64) throw InputError("--index must be between 1 and 64");
  std::mt19937_64 rng(g.seed);
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  const auto lattices = enumerate_sublattices(d, Integer(index));
  const Lattice l = lattices[static_cast<std::size_t>(pick(0, static_cast<long>(lattices.size()) - 1))];
  auto transversal = [&] {
    std::vector<Vec> pts;
    for (const auto& r : quotient(l)->residues()) {
      Vec p = r;
      if (!is_zero(r)) {
        for (const auto& b : l.basis()) p += Integer(pick(-1, 1)) * b;
      }
      pts.push_back(p);
    }
    return Tile(d, pts);
  };
  const std::size_t count = kind == "independent" ? d : 1;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Tile> tiles;
    for (std::size_t i = 0; i < count; ++i) tiles.push_back(transversal());
    const TileTuple t(tiles);
    if (kind == "independent" && !is_independent_tuple(t).independent) continue;
    Outcome o;
    o.body["seed"] = g.seed;
    o.body["kind"] = kind;
    o.body["tiles"] = to_json(t)["tiles"];
    o.body["cotile"] = to_json(PeriodicSet(l, {zero_vec(d)}));
    return o;
  }
  Outcome o;
  o.body["found"] = false;
  o.code = kExitFalse;
  return o;
}

void emit(const Globals& g, const std::string& command, Outcome& o, std::ostream& out) {
  o.body["schema"] = kSchema;
  o.body["command"] = command;
  if (g.json) {
    if (o.picture) o.body["render"] = *o.picture;
    out << o.body.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : o.body.items()) {
    if (key == "schema") continue;
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  if (o.picture) out << *o.picture;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"tilekit: exact tools for translational tilings of Z^d"};
  app.name("tilekit");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--seed", g.seed, "Seed for randomized fixtures");
  app.add_option("--max-index", g.max_index, "Largest lattice index searched");
  app.add_option("--render", g.render, "Draw the tiling in the window [-n, n]^d")->check(CLI::IsMember({"ascii", "svg"}));
  app.add_option("--window", g.window, "Window radius n for --render")->check(CLI::NonNegativeNumber);

  std::string command;
  std::function<Outcome()> action;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&command, s] { command = s->get_name(); });
    return s;
  };

  std::string tiles, tile, cotile, level = "1", pieces, gamma0, kind = "independent";
  bool all = false, with_cotiles = false;
  unsigned threads = 1;
  std::size_t depth = 0, dim = 2;
  long p = 0, index = 4;
  std::vector<std::string> levels, rs;

  CLI::App* verify = sub("verify", "Check that the tiles tile jointly with a co-tile set or function");
  verify->add_option("--tiles", tiles)->required();
  verify->add_option("--cotile", cotile)->required();
  verify->add_option("--level", level, "Tiling level (integer or p/q)");

  CLI::App* solve = sub("solve", "Search periodic joint co-tiles up to --max-index");
  solve->add_option("--tiles", tiles)->required();
  solve->add_flag("--all", all, "List every co-tile instead of the first");
  solve->add_option("--threads", threads)->check(CLI::Range(1u, 256u));

  CLI::App* solve_z = sub("solve-z", "Decide whether a tile in Z tiles Z");
  solve_z->add_option("--tile", tile)->required();

  CLI::App* independent = sub("independent", "Test independence of a tile tuple");
  independent->add_option("--tiles", tiles)->required();
  independent->add_flag("--cotiles", with_cotiles, "Also list every joint co-tile of d independent tiles");

  CLI::App* star = sub("star", "Test property (*) of a (d-1)-tuple");
  star->add_option("--tiles", tiles)->required();

  CLI::App* decompose = sub("decompose", "Build and verify the periodic decomposition of a co-tile");
  decompose->add_option("--tiles", tiles)->required();
  decompose->add_option("--cotile", cotile)->required();
  decompose->add_option("--depth", depth);
  decompose->add_option("--levels", levels)->delimiter(',');

  CLI::App* dilate_cmd = sub("dilate", "Check that dilates rF still tile with the co-tile");
  dilate_cmd->add_option("--tile", tile)->required();
  dilate_cmd->add_option("--cotile", cotile)->required();
  dilate_cmd->add_option("--r", rs)->required()->delimiter(',');
  dilate_cmd->add_option("--level", level);

  CLI::App* brothers = sub("brothers", "Construct brother tiles for a tile and co-tile");
  brothers->add_option("--tile", tile)->required();
  brothers->add_option("--cotile", cotile, "Co-tile set; searched up to --max-index when absent");

  CLI::App* zp = sub("zp", "Classify a tile in Z x Z/pZ and check a co-tile");
  zp->add_option("--p", p)->check(CLI::PositiveNumber);
  zp->add_option("--tile", tile)->required();
  zp->add_option("--cotile", cotile);

  CLI::App* lift = sub("lift", "Turn a co-tile with a rank d-1 stabilizer into a periodic one");
  lift->add_option("--tiles", tiles)->required();
  lift->add_option("--cotile", cotile, "Layered co-tile, or a periodic set with --gamma0")->required();
  lift->add_option("--gamma0", gamma0, "Lattice file for a periodic --cotile");

  CLI::App* piecewise = sub("piecewise", "Turn a piecewise co-tile into a periodic one");
  piecewise->add_option("--tiles", tiles)->required();
  piecewise->add_option("--pieces", pieces)->required();

  CLI::App* stab = sub("stabilizer", "Common stabilizer of co-tile pieces");
  stab->add_option("--pieces", pieces)->required();

  CLI::App* fixture = sub("fixture", "Print a seeded random tile tuple with a known co-tile");
  fixture->add_option("--kind", kind)->check(CLI::IsMember({"independent", "single"}));
  fixture->add_option("--dim", dim);
  fixture->add_option("--index", index);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Outcome o;
    if (command == "verify") o = cmd_verify(g, tiles, cotile, level);
    else if (command == "solve") o = cmd_solve(g, tiles, all, threads);
    else if (command == "solve-z") o = cmd_solve_z(g, tile);
    else if (command == "independent") o = cmd_independent(tiles, with_cotiles);
    else if (command == "star") o = cmd_star(tiles);
    else if (command == "decompose") o = cmd_decompose(tiles, cotile, depth ? std::optional(depth) : std::nullopt, levels);
    else if (command == "dilate") o = cmd_dilate(tile, cotile, rs, level);
    else if (command == "brothers") o = cmd_brothers(g, tile, cotile);
    else if (command == "zp") o = cmd_zp(p, tile, cotile);
    else if (command == "lift") o = cmd_lift(g, tiles, cotile, gamma0);
    else if (command == "piecewise") o = cmd_piecewise(g, tiles, pieces);
    else if (command == "stabilizer") o = cmd_stabilizer(pieces);
    else o = cmd_fixture(g, kind, dim, index);
    emit(g, command, o, out);
    return o.code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (g.json) {
      out << json{{"schema", kSchema}, {"command", command}, {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}}.dump(2)
          << '\n';
    }
    return kExitContract;
  }
}

}  // namespace tilekit::cli
