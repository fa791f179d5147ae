#include "tilekit/solve.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

#include "tilekit/analysis.hpp"
#include "tilekit/decompose.hpp"
#include "tilekit/error.hpp"
#include "tilekit/verify.hpp"

namespace tilekit {

SearchProblem make_search_problem(const TileTuple& t, const Lattice& l) {
  if (t.dim() != l.dim()) throw Error(ErrorCode::kDimensionMismatch, "tiles and lattice differ in dimension");
  SearchProblem sp{t, l, {}, true, true};
  const auto q = quotient(l);
  for (const auto& tile : t.tiles()) {
    std::vector<std::size_t> idx;
    for (const auto& p : tile.points()) idx.push_back(q->index_of(p));
    std::vector<std::size_t> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) sp.injective = false;
    if (q->size() % tile.size() != 0 || tile.size() != t[0].size()) sp.divisible = false;
    sp.projected.push_back(std::move(idx));
  }
  return sp;
}

std::vector<PeriodicSet> solve_quotient(const TileTuple& t, const Lattice& l, SearchMode mode) {
  const SearchProblem sp = make_search_problem(t, l);
  if (!sp.feasible()) return {};
  const auto q = quotient(l);
  const std::size_t n = q->size();
  const std::size_t k = t.size();

  // add[i][j][a] = a + (point j of tile i); back[j][x] = x - (point j of tile 0)
  std::vector<std::vector<std::vector<std::size_t>>> add(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& p : t[i].points()) add[i].push_back(q->translation(p));
  }
  std::vector<std::vector<std::size_t>> back;
  for (const auto& p : t[0].points()) back.push_back(q->translation(-p));

  std::vector<std::vector<char>> covered(k, std::vector<char>(n, 0));
  auto fits = [&](std::size_t a) {
    for (std::size_t i = 0; i < k; ++i) {
      for (const auto& perm : add[i]) {
        if (covered[i][perm[a]]) return false;
      }
    }
    return true;
  };
  auto mark = [&](std::size_t a, char v) {
    for (std::size_t i = 0; i < k; ++i) {
      for (const auto& perm : add[i]) covered[i][perm[a]] = v;
    }
  };
  auto next_uncovered = [&](std::size_t from) {
    while (from < n && covered[0][from]) ++from;
    return from;
  };

  struct Frame {
    std::size_t x;
    std::size_t branch;
    std::size_t placed;
  };
  std::vector<Frame> stack;
  std::vector<PeriodicSet> out;
  std::size_t x = next_uncovered(0);
  bool descend = true;
  while (true) {
    if (descend) {
      if (x == n) {
        std::vector<Vec> members;
        for (const auto& f : stack) members.push_back(q->residue(f.placed));
        out.emplace_back(l, std::move(members));
        if (mode == SearchMode::kFirst) break;
        descend = false;
      } else {
        stack.push_back({x, 0, 0});
      }
    }
    if (!descend) {
      if (stack.empty()) break;
      mark(stack.back().placed, 0);
    }
    Frame& fr = stack.back();
    bool placed = false;
    while (fr.branch < back.size()) {
      const std::size_t a = back[fr.branch++][fr.x];
      if (fits(a)) {
        mark(a, 1);
        fr.placed = a;
        placed = true;
        break;
      }
    }
    if (placed) {
      x = next_uncovered(fr.x + 1);
      descend = true;
    } else {
      stack.pop_back();
      descend = false;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PeriodicSearchResult search_periodic_cotile(const TileTuple& t, const Integer& max_index,
                                            const SearchOptions& options) {
  if (max_index < 1) throw Error(ErrorCode::kInvalidArgument, "max_index must be at least 1");
  PeriodicSearchResult result;
  std::set<PeriodicSet> found;
  const Integer step = static_cast<unsigned long>(t[0].size());
  const unsigned threads = std::max(1u, options.threads);
  for (Integer n = step; n <= max_index; n += step) {
    const std::vector<Lattice> lattices = enumerate_sublattices(t.dim(), n);
    std::vector<std::vector<PeriodicSet>> per(lattices.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < lattices.size(); i = next++) {
        per[i] = solve_quotient(t, lattices[i], options.mode);
      }
    };
    if (threads == 1 || lattices.size() == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < std::min<std::size_t>(threads, lattices.size()); ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    result.lattices_searched += lattices.size();
    for (const auto& sols : per) {
      for (const auto& s : sols) {
        found.insert(s.canonical());
        if (options.mode == SearchMode::kFirst) break;
      }
      if (options.mode == SearchMode::kFirst && !found.empty()) break;
    }
    if (options.mode == SearchMode::kFirst && !found.empty()) break;
  }
  result.cotiles.assign(found.begin(), found.end());
  return result;
}

ZTilingResult search_Z_cotile(const Tile& f) {
  if (f.dim() != 1) throw Error(ErrorCode::kDimensionMismatch, "search_Z_cotile needs a tile in Z");
  if (!f.is_normalized()) throw Error(ErrorCode::kNotNormalized, "tile must contain 0");
  const TileTuple t({f});
  ZTilingResult out;
  const unsigned long diam = f.diameter().get_ui();
  mpz_ui_pow_ui(out.period_bound.get_mpz_t(), 2, diam + 1);
  const Integer step = static_cast<unsigned long>(f.size());
  for (Integer p = step; p <= out.period_bound; p += step) {
    const Lattice l = hnf(1, {Vec{p}});
    if (!make_search_problem(t, l).injective) continue;
    ++out.periods_examined;
    auto sols = solve_quotient(t, l, SearchMode::kFirst);
    if (!sols.empty()) {
      out.cotile = sols.front().canonical();
      break;
    }
  }
  return out;
}

Lattice independent_period_lattice(const TileTuple& t) {
  const std::size_t d = t.dim();
  if (t.size() != d) throw Error(ErrorCode::kWrongArity, "need exactly d tiles");
  if (!is_independent_tuple(t).independent) throw Error(ErrorCode::kNotIndependent, "tuple is not independent");
  std::size_t size = 0;
  for (const auto& tile : t.tiles()) size = std::max(size, tile.size());
  const Integer q = primorial(Integer(static_cast<unsigned long>(size)));
  std::optional<Lattice> l;
  for (const auto& sel : selections(t)) {
    std::vector<Vec> gens;
    for (const auto& v : sel) gens.push_back(q * v);
    const Lattice s = hnf(d, std::move(gens));
    l = l ? intersect(*l, s) : s;
  }
  return l ? *l : Lattice::identity(d);
}

std::vector<PeriodicSet> all_joint_cotiles(const TileTuple& t) {
  return solve_quotient(t, independent_period_lattice(t), SearchMode::kAll);
}

BlockGraph::BlockGraph(Lattice gamma0, Vec transversal, std::vector<LayerConstraint> constraints,
                       std::vector<Rational> cell_values)
    : gamma0_(std::move(gamma0)), transversal_(std::move(transversal)), cells_(std::move(cell_values)) {
  std::vector<Vec> gens = gamma0_.basis();
  gens.push_back(transversal_);
  group_ = quotient(hnf(gamma0_.dim(), gens));
  const std::size_t size = group_->size();
  geometry_ = LayeredFunction(gamma0_, transversal_, {Symbol(size, Rational(0))}, {}, {Symbol(size, Rational(0))}, 0);

  std::vector<std::vector<Term>> raw;
  bool first = true;
  for (const auto& c : constraints) {
    std::vector<Vec> shifts = gamma0_.basis();
    shifts.push_back(transversal_);
    for (const auto& s : shifts) {
      if (!same_function(c.h, c.h.shifted(s))) {
        throw Error(ErrorCode::kInvalidArgument, "constraint target is not constant along layers");
      }
    }
    std::vector<Rational> target;
    std::vector<Term> terms;
    for (std::size_t k = 0; k < size; ++k) {
      target.push_back(c.h(group_->residue(k)));
      for (const auto& [y, w] : c.g.terms()) {
        const auto [off, src] = geometry_.locate(group_->residue(k) - y);
        if (first || off < omin_) omin_ = off;
        if (first || off > omax_) omax_ = off;
        first = false;
        terms.push_back({k, off, src, w});
      }
    }
    raw.push_back(std::move(terms));
    targets_.push_back(std::move(target));
  }
  for (auto& terms : raw) {
    for (auto& t : terms) t.offset -= omin_;
  }
  terms_ = std::move(raw);
}

bool BlockGraph::legal(const std::vector<Symbol>& window) const {
  for (std::size_t c = 0; c < terms_.size(); ++c) {
    std::vector<Rational> acc(group_->size(), Rational(0));
    for (const auto& t : terms_[c]) acc[t.target] += t.weight * window[t.offset][t.source];
    if (acc != targets_[c]) return false;
  }
  return true;
}

bool BlockGraph::legal_cycle(const std::vector<Symbol>& cycle) const {
  const std::size_t p = cycle.size();
  const std::size_t w = window();
  for (std::size_t s = 0; s < p; ++s) {
    std::vector<Symbol> win;
    for (std::size_t j = 0; j < w; ++j) win.push_back(cycle[(s + j) % p]);
    if (!legal(win)) return false;
  }
  return true;
}

std::optional<std::vector<BlockGraph::Symbol>> BlockGraph::cycle_from_witness(const LayeredFunction& witness) const {
  if (witness.gamma0() != gamma0_ || witness.transversal() != transversal_) {
    throw Error(ErrorCode::kInvalidArgument, "witness is layered differently from the graph");
  }
  const auto block = static_cast<std::int64_t>(window()) - 1;
  const auto lp = static_cast<std::int64_t>(witness.left().size());
  const auto rp = static_cast<std::int64_t>(witness.right().size());
  const std::int64_t lo = witness.start() - lp - block;
  const std::int64_t hi = witness.end() + 2 * rp + block + 1;
  std::map<std::vector<Symbol>, std::int64_t> seen;
  for (std::int64_t m = lo; m <= hi; ++m) {
    std::vector<Symbol> key;
    for (std::int64_t j = 0; j < block; ++j) key.push_back(witness.layer(m + j));
    auto [it, inserted] = seen.emplace(std::move(key), m);
    if (inserted) continue;
    // slot k of the cycle holds the layers n = k mod p, so decoding agrees
    // with the witness on the segment
    const std::int64_t p = m - it->second;
    std::vector<Symbol> cycle(static_cast<std::size_t>(p));
    for (std::int64_t j = it->second; j < m; ++j) cycle[static_cast<std::size_t>(((j % p) + p) % p)] = witness.layer(j);
    if (legal_cycle(cycle)) return cycle;
    it->second = m;
  }
  return std::nullopt;
}

std::optional<std::vector<BlockGraph::Symbol>> BlockGraph::find_cycle(std::size_t max_states) const {
  const std::size_t size = group_->size();
  // alphabet: every assignment of cell values to the residues
  std::vector<Symbol> alphabet{{}};
  for (std::size_t k = 0; k < size; ++k) {
    std::vector<Symbol> next;
    for (const auto& s : alphabet) {
      for (const auto& c : cells_) {
        Symbol t = s;
        t.push_back(c);
        next.push_back(std::move(t));
        if (next.size() > max_states) throw Error(ErrorCode::kTooLarge, "alphabet too large");
      }
    }
    alphabet = std::move(next);
  }
  const std::size_t a = alphabet.size();
  const std::size_t block = window() - 1;
  std::size_t states = 1;
  for (std::size_t j = 0; j < block; ++j) {
    states *= a;
    if (states > max_states) throw Error(ErrorCode::kTooLarge, "block graph too large");
  }

  // state s encodes a block as base-a digits, oldest symbol most significant
  auto window_of = [&](std::size_t s, std::size_t sym) {
    std::vector<Symbol> win(block + 1);
    win[block] = alphabet[sym];
    for (std::size_t j = block; j-- > 0;) {
      win[j] = alphabet[s % a];
      s /= a;
    }
    return win;
  };
  const std::size_t top = states / a;  // weight of the oldest digit (block >= 1)
  auto successor = [&](std::size_t s, std::size_t sym) {
    return block == 0 ? 0 : (s % top) * a + sym;
  };

  std::vector<char> color(states, 0);  // 0 new, 1 on stack, 2 done
  struct Frame {
    std::size_t state;
    std::size_t sym;
  };
  for (std::size_t root = 0; root < states; ++root) {
    if (color[root]) continue;
    std::vector<Frame> stack{{root, 0}};
    std::vector<std::size_t> taken;  // symbol used to leave each frame
    color[root] = 1;
    while (!stack.empty()) {
      Frame& fr = stack.back();
      if (fr.sym == a) {
        color[fr.state] = 2;
        stack.pop_back();
        if (!taken.empty()) taken.pop_back();
        continue;
      }
      const std::size_t sym = fr.sym++;
      if (!legal(window_of(fr.state, sym))) continue;
      const std::size_t nxt = successor(fr.state, sym);
      if (color[nxt] == 1) {
        std::size_t pos = 0;
        while (stack[pos].state != nxt) ++pos;
        std::vector<Symbol> cycle;
        for (std::size_t j = pos; j < taken.size(); ++j) cycle.push_back(alphabet[taken[j]]);
        cycle.push_back(alphabet[sym]);
        if (legal_cycle(cycle)) return cycle;
        continue;
      }
      if (color[nxt] == 2) continue;
      color[nxt] = 1;
      taken.push_back(sym);
      stack.push_back({nxt, 0});
    }
  }
  return std::nullopt;
}

PeriodicRationalFunction BlockGraph::decode(const std::vector<Symbol>& cycle) const {
  const auto p = static_cast<std::int64_t>(cycle.size());
  std::vector<Vec> gens = gamma0_.basis();
  gens.push_back(Integer(p) * transversal_);
  const Lattice l = hnf(gamma0_.dim(), std::move(gens));
  std::vector<Rational> vals;
  for (const auto& r : quotient(l)->residues()) {
    const auto [n, k] = geometry_.locate(r);
    vals.push_back(cycle[((n % p) + p) % p][k]);
  }
  return PeriodicRationalFunction(l, std::move(vals));
}

PeriodicRationalFunction lift_with_constraints(const LayeredFunction& witness,
                                               const std::vector<LayerConstraint>& constraints) {
  const std::size_t d = witness.dim();
  Lattice targets = Lattice::identity(d);
  for (const auto& c : constraints) targets = intersect(targets, c.h.lattice());
  const Lattice gamma0 = intersect(witness.gamma0(), targets);
  const Vec transversal = order_modulo(targets, witness.transversal()) * witness.transversal();
  const LayeredFunction w = witness.relayered(gamma0, transversal);

  for (const auto& c : constraints) {
    const LayeredFunction lhs = convolve(c.g, w);
    const auto lp = static_cast<std::int64_t>(lhs.left().size());
    const auto rp = static_cast<std::int64_t>(lhs.right().size());
    for (std::int64_t n = lhs.start() - lp; n < lhs.end() + rp; ++n) {
      const auto& s = lhs.layer(n);
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] != c.h(Integer(n) * transversal + lhs.group().residue(k))) {
          throw Error(ErrorCode::kNotACotile, "witness does not satisfy the constraints");
        }
      }
    }
  }

  std::set<Rational> values;
  for (const auto* part : {&w.left(), &w.center(), &w.right()}) {
    for (const auto& s : *part) values.insert(s.begin(), s.end());
  }
  const BlockGraph graph(gamma0, transversal, constraints, std::vector<Rational>(values.begin(), values.end()));
  const auto cycle = graph.cycle_from_witness(w);
  if (!cycle) throw Error(ErrorCode::kNoCycle, "no periodic point found along the witness");
  PeriodicRationalFunction x = graph.decode(*cycle);
  for (const auto& c : constraints) {
    if (!same_function(convolve(c.g, x), c.h)) {
      throw Error(ErrorCode::kVerificationFailed, "lifted configuration violates a constraint");
    }
  }
  return x;
}

namespace {

std::vector<LayerConstraint> tiling_constraints(const TileTuple& t) {
  std::vector<LayerConstraint> cons;
  for (const auto& tile : t.tiles()) {
    cons.push_back({WeightedTile::indicator(tile), PeriodicRationalFunction::constant(t.dim(), Rational(1))});
  }
  return cons;
}

PeriodicSet checked_cotile(const TileTuple& t, const PeriodicRationalFunction& x) {
  if (!x.is_indicator()) throw Error(ErrorCode::kVerificationFailed, "lifted function is not 0/1-valued");
  PeriodicSet a = x.support().canonical();
  if (!is_joint_cotile(t, a)) throw Error(ErrorCode::kVerificationFailed, "lifted set is not a joint co-tile");
  return a;
}

}  // namespace

PeriodicSet lift_to_full_period(const TileTuple& t, const LayeredFunction& a) {
  if (t.dim() != a.dim()) throw Error(ErrorCode::kDimensionMismatch, "tiles and co-tile differ in dimension");
  if (!a.is_indicator()) throw Error(ErrorCode::kInvalidArgument, "co-tile must be 0/1-valued");
  return checked_cotile(t, lift_with_constraints(a, tiling_constraints(t)));
}

PeriodicSet lift_to_full_period(const TileTuple& t, const PeriodicSet& a, const Lattice& gamma0) {
  return lift_to_full_period(t, LayeredFunction::from_periodic(PeriodicRationalFunction::indicator(a), gamma0));
}

namespace {

Lattice intersect_all(const std::vector<Lattice>& ls, std::size_t dim) {
  Lattice g = Lattice::identity(dim);
  for (const auto& l : ls) g = intersect(g, l);
  return g;
}

LayeredFunction sum_on_span(const std::vector<LayeredFunction>& pieces, const Lattice& span) {
  LayeredFunction total = with_span(pieces.front(), span);
  for (std::size_t j = 1; j < pieces.size(); ++j) total = total + with_span(pieces[j], span);
  return total;
}

PeriodicRationalFunction sum_periodic(const std::vector<LayeredFunction>& pieces) {
  PeriodicRationalFunction total = pieces.front().to_periodic();
  for (std::size_t j = 1; j < pieces.size(); ++j) total = total + pieces[j].to_periodic();
  return total;
}

}  // namespace

PeriodicSet piecewise_to_periodic(const TileTuple& t, const std::vector<LayeredFunction>& pieces) {
  if (pieces.empty()) throw Error(ErrorCode::kInvalidArgument, "no pieces given");
  const std::size_t d = t.dim();
  for (const auto& p : pieces) {
    if (p.dim() != d) throw Error(ErrorCode::kDimensionMismatch, "piece dimension");
    if (!p.is_indicator()) throw Error(ErrorCode::kInvalidArgument, "pieces must be 0/1-valued");
  }
  std::vector<Lattice> stabs;
  for (const auto& p : pieces) stabs.push_back(stabilizer(p));
  const Lattice common = intersect_all(stabs, d);

  if (common.rank() == d) {
    const PeriodicRationalFunction total = sum_periodic(pieces);
    if (!total.is_indicator()) throw Error(ErrorCode::kInputNotCotile, "pieces overlap");
    PeriodicSet a = total.support().canonical();
    if (!is_joint_cotile(t, a)) throw Error(ErrorCode::kInputNotCotile, "union is not a joint co-tile");
    return a;
  }
  if (common.rank() + 1 == d) {
    const LayeredFunction total = sum_on_span(pieces, common);
    if (!total.is_indicator()) throw Error(ErrorCode::kInputNotCotile, "pieces overlap");
    try {
      return lift_to_full_period(t, total);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNotACotile) throw Error(ErrorCode::kInputNotCotile, "union is not a joint co-tile");
      throw;
    }
  }

  // first-fit merge of pieces lying over the same hyperplane
  std::vector<LayeredFunction> groups;
  std::vector<std::optional<Lattice>> spans;
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    std::optional<Lattice> span;
    if (stabs[j].rank() < d) span = saturation(stabs[j]);
    bool merged = false;
    for (std::size_t g = 0; g < groups.size() && span; ++g) {
      if (spans[g] && *spans[g] == *span) {
        groups[g] = groups[g] + pieces[j];
        merged = true;
        break;
      }
    }
    if (!merged) {
      groups.push_back(pieces[j]);
      spans.push_back(span);
    }
  }

  // h[i][j] = 1_{F_i} * f_j, periodic for genuine inputs
  std::vector<std::vector<PeriodicRationalFunction>> h(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    PeriodicRationalFunction total = PeriodicRationalFunction::constant(d, Rational(0));
    for (const auto& g : groups) {
      const LayeredFunction c = convolve(WeightedTile::indicator(t[i]), g);
      if (!c.is_d_periodic()) {
        throw Error(ErrorCode::kInputContractViolation, "1_F * piece has a stabilizer of infinite index");
      }
      h[i].push_back(c.to_periodic());
      total = total + h[i].back();
    }
    if (!equals_constant(total, Rational(1))) {
      throw Error(ErrorCode::kInputNotCotile, "union is not a co-tile of tile " + std::to_string(i));
    }
  }

  PeriodicRationalFunction total = PeriodicRationalFunction::constant(d, Rational(0));
  for (std::size_t j = 0; j < groups.size(); ++j) {
    if (groups[j].is_d_periodic()) {
      total = total + groups[j].to_periodic();
      continue;
    }
    std::vector<LayerConstraint> cons;
    for (std::size_t i = 0; i < t.size(); ++i) cons.push_back({WeightedTile::indicator(t[i]), h[i][j]});
    total = total + lift_with_constraints(groups[j], cons);
  }
  return checked_cotile(t, total);
}

CommonStabilizerResult common_stabilizer(const std::vector<LayeredFunction>& pieces) {
  if (pieces.empty()) throw Error(ErrorCode::kInvalidArgument, "no pieces given");
  const std::size_t d = pieces.front().dim();
  std::vector<Lattice> stabs;
  for (const auto& p : pieces) {
    if (p.dim() != d) throw Error(ErrorCode::kDimensionMismatch, "piece dimension");
    stabs.push_back(stabilizer(p));
  }
  const Lattice common = intersect_all(stabs, d);
  CommonStabilizerResult out;
  if (common.rank() == d) {
    if (!equals_constant(sum_periodic(pieces), Rational(1))) {
      throw Error(ErrorCode::kNotAPartition, "pieces do not partition Z^d");
    }
    out.all_d_periodic = true;
    return out;
  }
  if (common.rank() + 1 == d) {
    const LayeredFunction total = sum_on_span(pieces, common);
    const LayeredFunction one = LayeredFunction::from_periodic(PeriodicRationalFunction::constant(d, Rational(1)),
                                                               total.gamma0());
    if (!same_function(total, one)) throw Error(ErrorCode::kNotAPartition, "pieces do not partition Z^d");
    out.gamma = common;
    return out;
  }

  // Look for a point that is missed or covered twice.
  std::string where;
  for (long r = 0; r <= 16 && where.empty(); ++r) {
    std::vector<long> c(d, -r);
    while (where.empty()) {
      Vec x;
      for (long v : c) x.emplace_back(v);
      Rational s = 0;
      for (const auto& p : pieces) s += p(x);
      if (s != 1) where = " (coverage " + s.get_str() + " at " + to_string(x) + ")";
      std::size_t i = 0;
      while (i < d && ++c[i] > r) c[i++] = -r;
      if (i == d) break;
    }
  }
  if (!where.empty()) throw Error(ErrorCode::kNotAPartition, "pieces do not partition Z^d" + where);
  throw Error(ErrorCode::kInputContractViolation, "stabilizers share no rank d-1 subgroup");
}

}  // namespace tilekit
