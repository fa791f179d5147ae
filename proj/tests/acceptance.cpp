#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/json_io.hpp"
#include "tilekit/analysis.hpp"
#include "tilekit/construct.hpp"
#include "tilekit/decompose.hpp"
#include "tilekit/error.hpp"
#include "tilekit/solve.hpp"
#include "tilekit/torsion.hpp"
#include "tilekit/verify.hpp"

namespace fs = std::filesystem;
using namespace tilekit;

namespace {

const fs::path kFixtures = TILEKIT_FIXTURE_DIR;

// Thrown by check() with the failed expectation.
struct Failure {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

cli::json fixture(const std::string& name) { return cli::load_file((kFixtures / name).string()); }

// Every L-periodic joint co-tile by enumerating residue subsets. With
// exact_size only subsets of size |Z^d/L| / |F_1| are visited.
std::vector<PeriodicSet> brute_force(const TileTuple& t, const Lattice& l, bool exact_size) {
  const auto q = quotient(l);
  const std::size_t n = q->size();
  check(n <= 24, "brute force limited to quotients of order 24");
  std::vector<std::vector<std::uint32_t>> cover(t.size(), std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      std::uint32_t m = 0;
      bool injective = true;
      for (const auto& f : t[i].points()) {
        const std::uint32_t bit = std::uint32_t{1} << q->index_of(q->residue(a) + f);
        injective = injective && !(m & bit);
        m |= bit;
      }
      cover[i][a] = injective ? m : 0;
    }
  }
  const std::uint32_t full = n == 32 ? ~0u : (std::uint32_t{1} << n) - 1;
  auto tiles_all = [&](std::uint32_t s) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::uint32_t seen = 0;
      for (std::uint32_t rest = s; rest; rest &= rest - 1) {
        const std::uint32_t m = cover[i][static_cast<std::size_t>(std::countr_zero(rest))];
        if (m == 0 || (seen & m)) return false;
        seen |= m;
      }
      if (seen != full) return false;
    }
    return true;
  };
  std::vector<PeriodicSet> out;
  auto record = [&](std::uint32_t s) {
    std::vector<Vec> members;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) members.push_back(q->residue(static_cast<std::size_t>(std::countr_zero(rest))));
    out.emplace_back(l, std::move(members));
  };
  if (!exact_size) {
    for (std::uint64_t s = 1; s <= full; ++s) {
      if (tiles_all(static_cast<std::uint32_t>(s))) record(static_cast<std::uint32_t>(s));
    }
  } else if (n % t[0].size() == 0) {
    const std::size_t k = n / t[0].size();
    // Gosper's hack over all k-subsets
    std::uint64_t s = (std::uint64_t{1} << k) - 1;
    while (s <= full) {
      if (tiles_all(static_cast<std::uint32_t>(s))) record(static_cast<std::uint32_t>(s));
      const std::uint64_t c = s & (~s + 1);
      const std::uint64_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t index_of(const Lattice& l) { return static_cast<std::size_t>(l.index().value().get_ui()); }

Tile lifted_transversal(std::mt19937_64& rng, const Lattice& l) {
  std::vector<Vec> pts;
  for (const auto& r : quotient(l)->residues()) {
    Vec p = r;
    if (!is_zero(r)) {
      for (const auto& b : l.basis()) p += Integer(std::uniform_int_distribution<long>(-1, 1)(rng)) * b;
    }
    pts.push_back(p);
  }
  return Tile(l.dim(), pts);
}

Lattice random_lattice(std::mt19937_64& rng, std::size_t d, long n) {
  const auto all = enumerate_sublattices(d, Integer(n));
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

// ---------------------------------------------------------------------------

std::string square_pair_reproduction() {
  const TileTuple t = cli::tuple_from(fixture("square_pair_tiles.json"));
  const PeriodicSet a = cli::periodic_set_from(fixture("square_pair_cotile.json"));
  check(a.lattice() == Lattice::diagonal({2, 2, 1}), "co-tile lattice is 2Z x 2Z x Z");
  check(is_tiling(t[0], a) && is_tiling(t[1], a), "both squares tile with the co-tile");
  check(is_independent_tuple(t).independent, "pair is independent");
  check(has_property_star(t).holds, "pair has property (*)");
  const auto solved = solve_quotient(t, a.lattice(), SearchMode::kAll);
  check(solved.size() == 4, "exactly four co-tiles mod diag(2,2,1)");
  for (const auto& r : quotient(a.lattice())->residues()) {
    const PeriodicSet translate = a.translated(r);
    check(std::count(solved.begin(), solved.end(), translate) == 1, "translate by " + to_string(r) + " present");
  }
  check(solved == brute_force(t, a.lattice(), false), "matches all 2^4 residue subsets");
  return "4 co-tiles, brute force agrees";
}

std::string six_point_tile() {
  const Tile f = cli::tile_from(fixture("six_point_tile.json"));
  const ZTilingResult r = search_Z_cotile(f);
  check(!r.cotile.has_value(), "no tiling of Z");
  check(r.period_bound == 256, "period bound 2^(diam+1) = 256");
  std::size_t expected = 0;
  for (long p = 6; p <= 256; p += 6) {
    if (make_search_problem(TileTuple({f}), Lattice::diagonal({p})).injective) ++expected;
  }
  check(r.periods_examined == expected, "every injective period p <= 256 with 6 | p examined");
  const PeriodicRationalFunction fn = cli::function_from(fixture("six_point_function.json"));
  check(fn.lattice() == Lattice::diagonal({18}), "function lives on 18Z");
  check(fn.is_integer_valued(), "function is integer-valued");
  check(is_level_tiling(f, fn, Rational(1)), "1_F * f = 1");
  return std::to_string(r.periods_examined) + " periods examined";
}

std::string decomposition_exactness() {
  std::ostringstream note;
  auto run = [&](const std::string& label, const TileTuple& t, const PeriodicRationalFunction& f,
                 std::optional<std::size_t> depth, std::vector<Integer> levels) {
    const auto start = std::chrono::steady_clock::now();
    const DecompositionTree tree = build_decomposition(t, f, depth, levels);
    const DecompositionReport rep = verify_decomposition(tree);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(rep.ok(), label + ": " + (rep.violations.empty() ? std::string("report failed") : rep.violations.front()));
    check(secs < 5.0, label + " within 5 s");
    note << (note.tellp() > 0 ? "; " : "") << label << " " << tree.nodes.size() << " nodes";
  };
  const auto evens = PeriodicRationalFunction::indicator(PeriodicSet(Lattice::diagonal({2}), {make_vec({0})}));
  run("domino", TileTuple({Tile::integers({0, 1})}), evens, std::nullopt, {});
  run("square pair", cli::tuple_from(fixture("square_pair_tiles.json")),
      PeriodicRationalFunction::indicator(cli::periodic_set_from(fixture("square_pair_cotile.json"))), std::size_t{2}, {});
  run("level two", TileTuple({Tile::integers({0, 1, 2, 3}), Tile::integers({0, 1, 4, 5})}), evens, std::nullopt,
      {Integer(2), Integer(2)});
  return note.str();
}

std::string dilation() {
  const Tile f = cli::tuple_from(fixture("square_pair_tiles.json"))[0];
  const auto fn = PeriodicRationalFunction::indicator(cli::periodic_set_from(fixture("square_pair_cotile.json")));
  check(compute_q(fn, Integer(static_cast<unsigned long>(f.size()))) == 6, "q = 6");
  for (long r : {7, 13, 19}) check(dilation_check(f, fn, Rational(1), Integer(r)), "r = " + std::to_string(r) + " keeps the tiling");
  const auto evens = PeriodicRationalFunction::indicator(PeriodicSet(Lattice::diagonal({2}), {make_vec({0})}));
  check(!dilation_check(Tile::integers({0, 1}), evens, Rational(1), Integer(2)), "r = 2 breaks the domino tiling");
  return "r = 7, 13, 19 hold; r = 2 fails";
}

std::string independent_tuples_periodic() {
  std::mt19937_64 rng(2024);
  std::size_t compared = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = trial < 5 ? 2 : 3;
    const long n = std::uniform_int_distribution<long>(2, 4)(rng);
    const Lattice l = random_lattice(rng, d, n);
    std::optional<TileTuple> t;
    for (int attempt = 0; attempt < 1000 && !t; ++attempt) {
      std::vector<Tile> tiles;
      for (std::size_t i = 0; i < d; ++i) tiles.push_back(lifted_transversal(rng, l));
      TileTuple cand(tiles);
      if (is_independent_tuple(cand).independent) t = cand;
    }
    check(t.has_value(), "seeded independent tuple found");
    const PeriodicSet known(l, {zero_vec(d)});
    check(is_joint_cotile(*t, known), "seeded co-tile is a joint co-tile");

    const Lattice period = independent_period_lattice(*t);
    SearchOptions all;
    all.mode = SearchMode::kAll;
    const auto found = search_periodic_cotile(*t, Integer(20), all);
    bool has_known = false;
    for (const auto& a : found.cotiles) {
      check(stabilizer(a).rank() == d, "every co-tile has a rank-d stabilizer");
      check(stabilizer(a).contains(period), "every co-tile is periodic under the independent period lattice");
      check(is_joint_cotile(*t, a), "every listed co-tile verifies");
      has_known = has_known || same_set(a, known);
    }
    check(has_known, "known co-tile among the ALL-mode solutions");

    for (long m = n; m <= 20; m += n) {
      for (const auto& s : enumerate_sublattices(d, Integer(m))) {
        check(solve_quotient(*t, s, SearchMode::kAll) == brute_force(*t, s, true),
              "ALL mode equals brute force on index " + std::to_string(m));
        ++compared;
      }
    }
  }
  return std::to_string(compared) + " quotients compared";
}

std::string brother_round_trip() {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t d = trial < 2 ? 2 : 3;
    const Lattice l = random_lattice(rng, d, std::uniform_int_distribution<long>(2, 4)(rng));
    const Tile f = lifted_transversal(rng, l);
    const PeriodicSet a(l, {zero_vec(d)});
    const auto brothers = brother_tiles(f, a);
    check(brothers.size() == d - 1, "d - 1 brother tiles");
    std::vector<Tile> full = brothers;
    full.push_back(f);
    check(is_joint_cotile(TileTuple(full), a), "brothers and F tile jointly with A");
    check(is_independent_tuple(TileTuple(full)).independent, "(F_1..F_{d-1}, F) independent");
    std::vector<Tile> star(brothers.begin(), brothers.end() - 1);
    star.push_back(f);
    check(has_property_star(TileTuple(star)).holds, "(F_1..F_{d-2}, F) has property (*)");
  }
  return "5 seeded pairs";
}

std::string lifting() {
  const TileTuple domino = cli::tuple_from(fixture("domino_tile.json"));
  const LayeredFunction rows = cli::layered_from(fixture("domino_shifted_rows.json"));
  check(stabilizer(rows).rank() == 1, "input co-tile has a rank-1 stabilizer");
  const PeriodicSet lifted = lift_to_full_period(domino, rows);
  check(is_joint_cotile(domino, lifted), "lifted set is a co-tile");
  check(stabilizer(lifted).rank() == 2, "lifted set has a rank-2 stabilizer");

  const cli::json pieces_json = fixture("domino_half_plane_pieces.json")["pieces"];
  std::vector<LayeredFunction> pieces;
  for (const auto& p : pieces_json) pieces.push_back(cli::layered_from(p));
  check(pieces.size() == 2, "two pieces");
  const PeriodicSet glued = piecewise_to_periodic(domino, pieces);
  check(is_joint_cotile(domino, glued), "piecewise result is a co-tile");
  check(stabilizer(glued).rank() == 2, "piecewise result is 2-periodic");
  return "rank 1 -> 2; two pieces -> 2-periodic";
}

std::string ring_inverse_exhaustive() {
  std::size_t cases = 0;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    for (unsigned long mask = 1; mask + 1 < (1ul << p); ++mask) {
      std::vector<unsigned long> f0;
      for (unsigned long i = 0; i < p; ++i) {
        if (mask >> i & 1) f0.push_back(i);
      }
      const CyclicFunction g = ring_inverse(p, f0);
      check(cyclic_convolve(g, CyclicFunction::indicator(p, f0)) == CyclicFunction::delta(p, 0),
            "inverse for p = " + std::to_string(p) + ", mask " + std::to_string(mask));
      ++cases;
    }
  }
  check(cases == 164, "164 subsets");
  return "164 cases";
}

std::string corpus_oracle() {
  std::vector<TileTuple> corpus;
  for (const char* name : {"square_pair_tiles.json", "square_tile.json", "square_brothers.json", "six_point_tile.json",
                           "independent_pair_tiles.json", "domino_tile.json", "domino3_tile.json"}) {
    corpus.push_back(cli::tuple_from(fixture(name)));
  }
  std::size_t pairs = 0, with_solutions = 0;
  for (const auto& t : corpus) {
    const std::size_t d = t.dim();
    for (long n = 1; n <= 20; ++n) {
      for (const auto& l : enumerate_sublattices(d, Integer(n))) {
        const auto got = solve_quotient(t, l, SearchMode::kAll);
        check(got == brute_force(t, l, true), "mismatch on a lattice of index " + std::to_string(n));
        ++pairs;
        if (!got.empty()) ++with_solutions;
      }
    }
  }
  check(pairs >= 25, "at least 25 pairs");
  return std::to_string(pairs) + " pairs, " + std::to_string(with_solutions) + " with co-tiles";
}

std::string lattice_identities() {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = trial % 2 == 0 ? 2 : 3;
    const Lattice a = random_lattice(rng, d, std::uniform_int_distribution<long>(1, 12)(rng));
    const Lattice b = random_lattice(rng, d, std::uniform_int_distribution<long>(1, 12)(rng));
    check(intersect(a, b).index().value() * sum(a, b).index().value() == a.index().value() * b.index().value(),
          "index product identity");
  }
  const long sigma[] = {1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28};
  for (long n = 1; n <= 12; ++n) {
    check(static_cast<long>(enumerate_sublattices(2, Integer(n)).size()) == sigma[n - 1],
          "sigma(" + std::to_string(n) + ") sublattices of Z^2");
  }
  return "100 pairs, n <= 12";
}

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<std::string()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"square pair joint co-tile reproduction", 1.0, square_pair_reproduction},
      {"six-point tile has no tiling but a level-one integer co-tile", 10.0, six_point_tile},
      {"periodic decomposition is exact on three fixtures", 15.0, decomposition_exactness},
      {"dilation by r = 1 mod q preserves tiling", 60.0, dilation},
      {"independent tuples have only periodic co-tiles", 120.0, independent_tuples_periodic},
      {"brother tiles round trip", 60.0, brother_round_trip},
      {"lifting and piecewise gluing give periodic co-tiles", 10.0, lifting},
      {"ring inverse over Z/pZ is exact for every subset", 5.0, ring_inverse_exhaustive},
      {"quotient solver matches brute force on the corpus", 300.0, corpus_oracle},
      {"lattice index identities and sublattice counts", 60.0, lattice_identities},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    std::string status = "PASS", detail;
    try {
      detail = c.body();
    } catch (const Failure& f) {
      status = "FAIL";
      detail = f.what;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (status == "PASS" && secs >= c.limit_seconds) {
      status = "FAIL";
      detail = "exceeded " + std::to_string(c.limit_seconds) + " s";
    }
    if (status == "FAIL") ++failed;
    std::cout << status << " [" << std::setw(2) << i + 1 << "] " << c.name << " (" << std::fixed << std::setprecision(3)
              << secs << " s): " << detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
