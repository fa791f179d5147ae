#include "tilekit/decompose.hpp"

#include <algorithm>

#include "tilekit/error.hpp"
#include "tilekit/verify.hpp"

namespace tilekit {

Integer primorial(const Integer& bound) {
  Integer q = 1;
  if (bound < 2) return q;
  const unsigned long n = bound.get_ui();
  std::vector<bool> composite(n + 1, false);
  for (unsigned long p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    q *= p;
    for (unsigned long m = p * p; m <= n; m += p) composite[m] = true;
  }
  return q;
}

Integer compute_q(const PeriodicRationalFunction& f, const Integer& s, const Integer& level) {
  if (!f.is_integer_valued()) throw Error(ErrorCode::kNonIntegerValues, "f must be integer-valued");
  const Rational width = f.max() - f.min();
  return primorial(width.get_num() * s * level);
}

bool dilation_check(const Tile& f_tile, const PeriodicRationalFunction& f, const Rational& level,
                    const Integer& r) {
  if (!is_level_tiling(f_tile, f, level)) {
    throw Error(ErrorCode::kPreconditionUnverified, "1_F * f differs from the level");
  }
  const bool holds = is_level_tiling(dilate(f_tile, r), f, level);
  if (level.get_den() == 1 && level > 0) {
    const Integer q = compute_q(f, Integer(static_cast<unsigned long>(f_tile.size())), level.get_num());
    if (floor_mod(r, q) == floor_mod(Integer(1), q) && !holds) {
      throw Error(ErrorCode::kVerificationFailed, "dilation by r = 1 mod q broke the tiling equation");
    }
  }
  return holds;
}

Integer orbit_period(const Lattice& l, const Integer& q, const Vec& v) { return order_modulo(l, q * v); }

const PeriodicRationalFunction& DecompositionTree::at(const Chain& c) const {
  auto it = nodes.find(c);
  if (it == nodes.end()) throw Error(ErrorCode::kInvalidArgument, "no node for this chain");
  return it->second;
}

DecompositionTree build_decomposition(const TileTuple& t, const PeriodicRationalFunction& f,
                                      std::optional<std::size_t> depth, std::vector<Integer> levels) {
  if (f.dim() != t.dim()) throw Error(ErrorCode::kDimensionMismatch, "tiles and function differ in dimension");
  if (!f.is_integer_valued()) throw Error(ErrorCode::kNonIntegerValues, "f must be integer-valued");
  if (levels.empty()) levels.assign(t.size(), Integer(1));
  if (levels.size() != t.size()) throw Error(ErrorCode::kInvalidArgument, "one level per tile is required");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!is_level_tiling(t[i], f, Rational(levels[i]))) {
      throw Error(ErrorCode::kNotACotile, "1_F * f differs from the level for tile " + std::to_string(i));
    }
  }

  DecompositionTree tree;
  tree.tuple = t;
  tree.cotile_fn = f;
  tree.levels = levels;
  tree.depth = depth.value_or(t.size());
  if (tree.depth > t.size()) throw Error(ErrorCode::kInvalidArgument, "depth exceeds the tuple length");

  Integer max_size = 0;
  for (const auto& tile : t.tiles()) max_size = std::max(max_size, Integer(static_cast<unsigned long>(tile.size())));
  const Integer max_level = *std::max_element(levels.begin(), levels.end());
  tree.q = compute_q(f, max_size, max_level);

  const Lattice& l = f.lattice();
  std::vector<Chain> frontier{{}};
  tree.nodes.emplace(Chain{}, f);
  for (std::size_t i = 0; i < tree.depth; ++i) {
    std::vector<Chain> next;
    for (const auto& c : frontier) {
      const PeriodicRationalFunction& parent = tree.nodes.at(c);
      for (const auto& v : t[i].starred()) {
        const Integer m = orbit_period(l, tree.q, v);
        std::vector<Rational> acc(parent.values().size(), Rational(0));
        for (Integer n = 1; n <= m; ++n) {
          const PeriodicRationalFunction s = parent.shifted((1 + n * tree.q) * v);
          for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += s.values()[k];
        }
        for (auto& x : acc) x /= Rational(m);
        Chain child = c;
        child.push_back(v);
        tree.nodes.emplace(child, PeriodicRationalFunction(l, std::move(acc)));
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

Rational decomposition_constant(const DecompositionTree& tree, std::size_t i) {
  Rational c = 0;
  Integer prod = 1;
  for (std::size_t j = 1; j <= i; ++j) {
    const Rational term = Rational(tree.levels[j - 1] * prod);
    c += (j % 2 == 1) ? term : Rational(-term);
    prod *= static_cast<unsigned long>(tree.tuple[j - 1].size() - 1);
  }
  return c;
}

DecompositionReport verify_decomposition(const DecompositionTree& tree) {
  DecompositionReport rep;
  const auto& t = tree.tuple;
  const auto& f = tree.cotile_fn;
  const Rational lo = f.min();
  const Rational hi = f.max();

  for (const auto& [chain, phi] : tree.nodes) {
    const std::size_t i = chain.size();
    const std::string name = "chain of length " + std::to_string(i);
    if (i > 0 && (phi.min() < lo || phi.max() > hi)) {
      rep.range = false;
      rep.violations.push_back("range: " + name);
    }
    if (i > 0) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        const Rational level(tree.levels[j]);
        if (!is_level_tiling(t[j], phi, level) ||
            mean(phi) != level / Rational(static_cast<unsigned long>(t[j].size()))) {
          rep.levels = false;
          rep.violations.push_back("level: " + name + ", tile " + std::to_string(j));
        }
      }
      const Lattice stab = stabilizer(phi);
      for (const auto& v : chain) {
        if (!stab.contains(tree.q * v)) {
          rep.periods = false;
          rep.violations.push_back("period: " + name + " not invariant under q*" + to_string(v));
        }
      }
    }
    if (i < tree.depth) {
      PeriodicRationalFunction rhs = PeriodicRationalFunction::constant(f.dim(), Rational(tree.levels[i]));
      for (const auto& v : t[i].starred()) {
        Chain child = chain;
        child.push_back(v);
        rhs = rhs - tree.at(child);
      }
      if (!same_function(phi, rhs)) {
        rep.recursion = false;
        rep.violations.push_back("recursion: " + name);
      }
    }
  }

  for (std::size_t i = 1; i <= tree.depth; ++i) {
    PeriodicRationalFunction total = PeriodicRationalFunction::constant(f.dim(), Rational(0));
    for (const auto& [chain, phi] : tree.nodes) {
      if (chain.size() == i) total = total + phi;
    }
    const Rational sign = (i % 2 == 0) ? 1 : -1;
    const PeriodicRationalFunction rhs =
        sign * total + PeriodicRationalFunction::constant(f.dim(), decomposition_constant(tree, i));
    if (!same_function(f, rhs)) {
      rep.reconstruction = false;
      rep.violations.push_back("reconstruction at depth " + std::to_string(i));
    }
  }
  return rep;
}

PsiResult psi_by_span(const DecompositionTree& tree, const SpanClassification& classes) {
  const auto& t = tree.tuple;
  const std::size_t d = t.dim();
  if (t.size() + 1 != d || !has_property_star(t).holds) {
    throw Error(ErrorCode::kPropertyStarRequired, "psi grouping needs a (d-1)-tuple with property (*)");
  }
  if (tree.depth < d - 1) throw Error(ErrorCode::kInvalidArgument, "tree must have depth d-1");

  PsiResult out;
  std::map<Chain, PeriodicRationalFunction> by_prefix;
  for (const auto& [span, tuples] : classes.classes) {
    PeriodicRationalFunction psi = PeriodicRationalFunction::constant(d, Rational(0));
    for (const auto& c : tuples) psi = psi + tree.at(c);
    const Chain prefix(tuples.front().begin(), tuples.front().end() - 1);
    auto it = by_prefix.find(prefix);
    if (it == by_prefix.end()) {
      by_prefix.emplace(prefix, psi);
    } else {
      it->second = it->second + psi;
    }

    // stab(psi) meets the hyperplane in a rank d-1 group containing q*v
    const Lattice stab = stabilizer(psi);
    std::vector<Vec> gens;
    for (const auto& c : tuples) {
      for (const auto& v : c) gens.push_back(v);
    }
    const Lattice plane = saturation(hnf(d, gens));
    if (intersect(stab, plane).rank() != d - 1) out.hyperplane_stabilizers = false;
    for (const auto& c : tuples) {
      if (!stab.contains(tree.q * c.back())) out.hyperplane_stabilizers = false;
    }
    out.psi.emplace(span, std::move(psi));
  }

  const Rational level(tree.levels[d - 2]);
  for (const auto& [prefix, sum] : by_prefix) {
    const PeriodicRationalFunction lhs =
        PeriodicRationalFunction::constant(d, level) - tree.at(prefix);
    if (!same_function(lhs, sum)) out.partition_identity = false;
  }
  return out;
}

PeriodicRationalFunction discrete_derivative(const PeriodicRationalFunction& f, const Vec& v) {
  return f - f.shifted(v);
}

bool is_polynomial_map(const PeriodicRationalFunction& f, const Lattice& gamma, std::size_t r) {
  if (!gamma.is_full_rank()) throw Error(ErrorCode::kRankDeficient, "polynomial test needs a full-rank lattice");
  const auto& gens = gamma.basis();
  // multisets of size r + 1 over the generators, as non-decreasing index lists
  std::vector<std::size_t> idx(r + 1, 0);
  while (true) {
    PeriodicRationalFunction g = f;
    for (std::size_t k : idx) g = discrete_derivative(g, gens[k]);
    if (!equals_constant(g, Rational(0))) return false;
    std::size_t pos = idx.size();
    while (pos > 0 && idx[pos - 1] + 1 == gens.size()) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t k = pos; k < idx.size(); ++k) idx[k] = idx[pos - 1];
  }
  return true;
}

BoundedPolyCheck bounded_poly_is_constant_check(const PeriodicRationalFunction& f, const Lattice& gamma,
                                                std::size_t max_degree) {
  BoundedPolyCheck out;
  for (std::size_t r = 0; r <= max_degree; ++r) {
    if (is_polynomial_map(f, gamma, r)) {
      out.degree = r;
      break;
    }
  }
  out.constant_on_cosets = true;
  for (const auto& g : gamma.basis()) {
    if (!same_function(f, f.shifted(g))) out.constant_on_cosets = false;
  }
  return out;
}

}  // namespace tilekit
