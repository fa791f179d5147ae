#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tilekit/analysis.hpp"
#include "tilekit/tiles.hpp"

namespace tilekit {

using Chain = std::vector<Vec>;

// Product of all primes <= bound (1 when bound < 2).
Integer primorial(const Integer& bound);

// primorial((max f - min f) * s * level). Throws kNonIntegerValues.
Integer compute_q(const PeriodicRationalFunction& f, const Integer& s, const Integer& level = 1);

// Checks 1_{rF} * f = level. Requires 1_F * f = level (kPreconditionUnverified).
// When r = 1 mod q the identity is guaranteed and a failure throws
// kVerificationFailed; other r are answered as a plain probe.
bool dilation_check(const Tile& f_tile, const PeriodicRationalFunction& f, const Rational& level,
                    const Integer& r);

// Order of q*v in Z^d / L.
Integer orbit_period(const Lattice& l, const Integer& q, const Vec& v);

struct DecompositionTree {
  TileTuple tuple;
  PeriodicRationalFunction cotile_fn;
  std::vector<Integer> levels;
  Integer q;
  std::size_t depth = 0;
  // Keyed by chain (v_1, ..., v_i) with v_j in F_j*; the empty chain holds f.
  std::map<Chain, PeriodicRationalFunction> nodes;

  const PeriodicRationalFunction& at(const Chain& c) const;
};

// Exact averages: phi_{c,v} is the mean of phi_c shifted by (1 + n q) v over
// one full period n = 1..orbit_period(v). Throws kNonIntegerValues and
// kNotACotile.
DecompositionTree build_decomposition(const TileTuple& t, const PeriodicRationalFunction& f,
                                      std::optional<std::size_t> depth = std::nullopt,
                                      std::vector<Integer> levels = {});

// sum_{j=1..i} (-1)^{j-1} levels[j-1] * prod_{s<j} |F_s*|
Rational decomposition_constant(const DecompositionTree& tree, std::size_t i);

struct DecompositionReport {
  bool recursion = true;       // phi_c = l_{i+1} - sum_v phi_{c,v}
  bool reconstruction = true;  // f = (-1)^i sum phi + constant
  bool periods = true;         // q v_j stabilizes phi_{v_1..v_i}
  bool levels = true;          // 1_{F_j} * phi = l_j, mean l_j / |F_j|
  bool range = true;           // values within [min f, max f]
  std::vector<std::string> violations;

  bool ok() const { return recursion && reconstruction && periods && levels && range; }
};

DecompositionReport verify_decomposition(const DecompositionTree& tree);

struct PsiResult {
  std::map<RationalSubspace, PeriodicRationalFunction> psi;
  bool partition_identity = true;
  bool hyperplane_stabilizers = true;
};

// Groups depth-(d-1) nodes by the hyperplane their chain spans. Requires
// property (*) (kPropertyStarRequired).
PsiResult psi_by_span(const DecompositionTree& tree, const SpanClassification& classes);

// (D_v f)(w) = f(w) - f(w - v)
PeriodicRationalFunction discrete_derivative(const PeriodicRationalFunction& f, const Vec& v);

// Every product of r + 1 derivatives along basis vectors of gamma kills f.
// Throws kRankDeficient unless gamma has full rank.
bool is_polynomial_map(const PeriodicRationalFunction& f, const Lattice& gamma, std::size_t r);

struct BoundedPolyCheck {
  std::optional<std::size_t> degree;  // least r <= max_degree, if polynomial
  bool constant_on_cosets = false;
};

// A bounded polynomial map must be constant on cosets of gamma; reports both
// facts so callers can assert the implication.
BoundedPolyCheck bounded_poly_is_constant_check(const PeriodicRationalFunction& f, const Lattice& gamma,
                                                std::size_t max_degree = 8);

}  // namespace tilekit
