#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tilekit/lattice.hpp"
#include "tilekit/tiles.hpp"

namespace tilekit {

bool is_prime(unsigned long n);

// A function Z/pZ -> Q.
struct CyclicFunction {
  unsigned long p = 0;
  std::vector<Rational> values;

  static CyclicFunction indicator(unsigned long p, const std::vector<unsigned long>& support);
  static CyclicFunction delta(unsigned long p, unsigned long at);
  friend bool operator==(const CyclicFunction&, const CyclicFunction&) = default;
};

CyclicFunction cyclic_convolve(const CyclicFunction& a, const CyclicFunction& b);

// g with g * 1_{F0} = delta_0 in Q^{Z/pZ}, via extended Euclid of
// sum_{i in F0} x^i against x^p - 1. Throws kNotPrime and kEmptyOrFull.
CyclicFunction ring_inverse(unsigned long p, const std::vector<unsigned long>& f0);

// A finite subset of Z x Z/pZ.
class MixedTile {
 public:
  MixedTile(unsigned long p, std::vector<std::pair<Integer, unsigned long>> points);

  unsigned long p() const { return p_; }
  const std::vector<std::pair<Integer, unsigned long>>& points() const { return points_; }
  // residues occupied in column n
  std::vector<unsigned long> fiber(const Integer& n) const;
  std::vector<Integer> columns() const;

 private:
  unsigned long p_;
  std::vector<std::pair<Integer, unsigned long>> points_;
};

// A periodic subset of Z x Z/pZ, stored fiber by fiber: fibers[t] = {n : (n, t) in A}.
struct MixedPeriodicSet {
  unsigned long p = 0;
  std::vector<PeriodicSet> fibers;

  bool contains(const Integer& n, unsigned long t) const;
  // A common period of all fibers.
  Integer period() const;
};

enum class FiberKind { kFullFiber, kGeneric };

struct Classification {
  FiberKind kind = FiberKind::kGeneric;
  std::optional<Tile> base;  // F~ when F = F~ x Z/pZ
};

Classification classify(const MixedTile& f);

bool is_mixed_tiling(const MixedTile& f, const MixedPeriodicSet& a);

struct TorsionVerdict {
  Classification classification;
  // least k > 0 with A + (k, 0) = A
  Integer z_period;
  // generic tiles: 1_A recovered as g~ * (1_{F^Tor} * 1_A)
  bool reconstructed = false;
  // full-fiber tiles: projection A~ of A, which must tile with F~
  std::optional<PeriodicSet> projection;
  bool projection_tiles = false;
  bool base_tiles_z = false;
};

// Requires 1_F * 1_A = 1 on the mixed group (kNotACotile).
TorsionVerdict cotile_conclusion(const MixedTile& f, const MixedPeriodicSet& a);

}  // namespace tilekit
