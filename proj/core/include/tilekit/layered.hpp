#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "tilekit/lattice.hpp"
#include "tilekit/tiles.hpp"

namespace tilekit {

// A function on Z^d that is invariant under a rank-(d-1) lattice gamma0 but
// need not be periodic in the remaining direction.
//
// With G = gamma0 (+) Z*transversal and D the canonical residues of Z^d / G,
// every x is uniquely gamma + n*transversal + delta; f(x) depends only on the
// layer n and on delta, so f is a bi-infinite sequence of symbols in Q^D.
// The sequence is stored as eventually periodic on both sides:
//   layer(n) = left[(n - start) mod |left|]        for n < start
//            = center[n - start]                   for start <= n < end
//            = right[(n - end) mod |right|]        for n >= end
// where end = start + |center|.
class LayeredFunction {
 public:
  using Symbol = std::vector<Rational>;  // indexed by residues of group()

  LayeredFunction() = default;
  LayeredFunction(Lattice gamma0, Vec transversal, std::vector<Symbol> left, std::vector<Symbol> center,
                  std::vector<Symbol> right, std::int64_t start);

  // First unit vector outside span(gamma0).
  static Vec canonical_transversal(const Lattice& gamma0);
  // Re-presents a periodic f; gamma0 must leave f invariant.
  static LayeredFunction from_periodic(const PeriodicRationalFunction& f, const Lattice& gamma0);

  std::size_t dim() const { return gamma0_.dim(); }
  const Lattice& gamma0() const { return gamma0_; }
  const Vec& transversal() const { return transversal_; }
  const QuotientGroup& group() const { return *group_; }
  const std::vector<Symbol>& left() const { return left_; }
  const std::vector<Symbol>& center() const { return center_; }
  const std::vector<Symbol>& right() const { return right_; }
  std::int64_t start() const { return start_; }
  std::int64_t end() const { return start_ + static_cast<std::int64_t>(center_.size()); }

  const Symbol& layer(std::int64_t n) const;
  // Layer index and residue index of x.
  std::pair<std::int64_t, std::size_t> locate(const Vec& x) const;
  Rational operator()(const Vec& x) const;

  // The same function over a finite-index sublattice of gamma0 and a new
  // transversal a*transversal + (element of gamma0), a > 0.
  LayeredFunction relayered(const Lattice& gamma0, const Vec& transversal) const;

  bool is_indicator() const;
  // Whether the layer sequence is periodic, i.e. f has a full-rank stabilizer.
  bool is_d_periodic() const;
  std::int64_t layer_period() const;  // valid when is_d_periodic()
  PeriodicRationalFunction to_periodic() const;

  friend LayeredFunction operator+(const LayeredFunction& a, const LayeredFunction& b);
  friend LayeredFunction operator-(const LayeredFunction& a, const LayeredFunction& b);

 private:
  Lattice gamma0_;
  Vec transversal_;
  Vec normal_;
  Integer normal_step_;  // normal . transversal
  std::shared_ptr<const QuotientGroup> group_;
  std::vector<Symbol> left_, center_, right_;
  std::int64_t start_ = 0;

  void init_geometry();
  void normalize();
};

// Brings both functions onto the intersection of their gamma0 lattices
// (which must span the same hyperplane) and a shared transversal.
std::pair<LayeredFunction, LayeredFunction> on_common_layers(const LayeredFunction& a, const LayeredFunction& b);

bool same_function(const LayeredFunction& a, const LayeredFunction& b);

LayeredFunction convolve(const WeightedTile& g, const LayeredFunction& f);

// Full stabilizer; rank d exactly when f is d-periodic.
Lattice stabilizer(const LayeredFunction& f);

// Re-presents f over gamma0' = stab(f) intersected with the saturation of
// `span`, for f d-periodic; non-periodic f must already lie in that span.
LayeredFunction with_span(const LayeredFunction& f, const Lattice& span);

}  // namespace tilekit
