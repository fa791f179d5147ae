#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tilekit/layered.hpp"
#include "tilekit/lattice.hpp"
#include "tilekit/tiles.hpp"

namespace tilekit {

enum class SearchMode { kFirst, kAll };

// The tiling equations for T reduced modulo a full-rank lattice.
struct SearchProblem {
  TileTuple tuple;
  Lattice lattice;
  // projected[i][j] = index in quotient(lattice) of the j-th point of tile i
  std::vector<std::vector<std::size_t>> projected;
  bool injective = true;  // every tile injects mod lattice
  bool divisible = true;  // |F_i| divides the index, all |F_i| equal

  bool feasible() const { return injective && divisible; }
};

SearchProblem make_search_problem(const TileTuple& t, const Lattice& l);

// All (or the first) L-periodic joint co-tiles of T, sorted. Each is
// presented on L itself.
std::vector<PeriodicSet> solve_quotient(const TileTuple& t, const Lattice& l, SearchMode mode);

struct SearchOptions {
  SearchMode mode = SearchMode::kAll;
  unsigned threads = 1;
};

struct PeriodicSearchResult {
  // Distinct subsets of Z^d, each presented on its full stabilizer, sorted.
  std::vector<PeriodicSet> cotiles;
  std::size_t lattices_searched = 0;
};

PeriodicSearchResult search_periodic_cotile(const TileTuple& t, const Integer& max_index,
                                            const SearchOptions& options = {});

struct ZTilingResult {
  std::optional<PeriodicSet> cotile;  // absent: F does not tile Z
  Integer period_bound;               // 2^(diam F + 1)
  std::size_t periods_examined = 0;   // periods p <= bound with |F| | p and F injective mod p
};

// Decides whether a normalized F in Z tiles Z.
ZTilingResult search_Z_cotile(const Tile& f);

// For d independent tiles in Z^d: the intersection over all selections
// (v_1..v_d) of q Z v_1 + ... + q Z v_d with q = primorial(|F_1|). Every joint
// co-tile is periodic with respect to it.
Lattice independent_period_lattice(const TileTuple& t);

// Every joint co-tile of d independent tiles, via solve_quotient on
// independent_period_lattice.
std::vector<PeriodicSet> all_joint_cotiles(const TileTuple& t);

// A constraint g * x = h with g finitely supported and h periodic.
struct LayerConstraint {
  WeightedTile g;
  PeriodicRationalFunction h;
};

// Z-subshift of finite type obtained by recoding gamma0-invariant
// configurations layer by layer along the transversal. Targets must be
// invariant under gamma0 and the transversal.
class BlockGraph {
 public:
  using Symbol = LayeredFunction::Symbol;

  BlockGraph(Lattice gamma0, Vec transversal, std::vector<LayerConstraint> constraints,
             std::vector<Rational> cell_values = {Rational(0), Rational(1)});

  const QuotientGroup& group() const { return *group_; }
  // Number of consecutive layers one constraint reads.
  std::size_t window() const { return static_cast<std::size_t>(omax_ - omin_ + 1); }
  bool legal(const std::vector<Symbol>& window) const;
  // Whether repeating `cycle` forever satisfies every constraint.
  bool legal_cycle(const std::vector<Symbol>& cycle) const;

  // Pigeonhole on a witness configuration: two equal (window-1)-blocks
  // bound a segment whose repetition is a periodic point.
  std::optional<std::vector<Symbol>> cycle_from_witness(const LayeredFunction& witness) const;
  // Depth-first search for a cycle in the graph of legal (window-1)-blocks
  // over the full alphabet; throws kTooLarge beyond max_states.
  std::optional<std::vector<Symbol>> find_cycle(std::size_t max_states = 1u << 20) const;

  PeriodicRationalFunction decode(const std::vector<Symbol>& cycle) const;

 private:
  struct Term {
    std::size_t target;
    std::int64_t offset;  // relative to omin_
    std::size_t source;
    Integer weight;
  };
  Lattice gamma0_;
  Vec transversal_;
  std::shared_ptr<const QuotientGroup> group_;
  std::vector<Rational> cells_;
  std::vector<std::vector<Term>> terms_;  // per constraint
  std::vector<std::vector<Rational>> targets_;  // per constraint, per residue
  std::int64_t omin_ = 0, omax_ = 0;
  LayeredFunction geometry_;
};

// Finds a d-periodic x with g_i * x = h_i for all constraints, given a
// gamma0-invariant witness satisfying them (checked exactly; kNotACotile).
PeriodicRationalFunction lift_with_constraints(const LayeredFunction& witness,
                                               const std::vector<LayerConstraint>& constraints);

// A d-periodic joint co-tile from a joint co-tile with a rank-(d-1) stabilizer.
PeriodicSet lift_to_full_period(const TileTuple& t, const LayeredFunction& a);
PeriodicSet lift_to_full_period(const TileTuple& t, const PeriodicSet& a, const Lattice& gamma0);

// A d-periodic joint co-tile from a joint co-tile given as disjoint pieces,
// each with a stabilizer of rank >= d-1.
PeriodicSet piecewise_to_periodic(const TileTuple& t, const std::vector<LayeredFunction>& pieces);

struct CommonStabilizerResult {
  bool all_d_periodic = false;
  std::optional<Lattice> gamma;  // set when some piece is not d-periodic
};

// Pieces must partition Z^d (kNotAPartition).
CommonStabilizerResult common_stabilizer(const std::vector<LayeredFunction>& pieces);

}  // namespace tilekit
