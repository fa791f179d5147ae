#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "tilekit/analysis.hpp"
#include "tilekit/lattice.hpp"
#include "tilekit/tiles.hpp"

namespace tilekit {

// {v + g(v) : v in F}; every g(v) must lie in l (kOutOfLattice). Points
// missing from g are kept in place.
Tile translate_by_lattice(const Tile& f, const std::map<Vec, Vec>& g, const Lattice& l);

// base + directions, as a subset of Q^d.
struct AffineSubspace {
  Vec base;
  RationalSubspace directions;

  bool contains(const Vec& x) const;
};

// Lattice points of a full-rank l in increasing sup-norm shells,
// lexicographic within a shell (negative coordinates first).
class LatticePointOrder {
 public:
  explicit LatticePointOrder(Lattice l);
  Vec next();

 private:
  Lattice lattice_;
  long radius_ = 0;
  std::vector<Vec> shell_;
  std::size_t pos_ = 0;
  void fill_shell();
};

// First point of l, in LatticePointOrder, outside every subspace. Each
// subspace must have dimension < d.
Vec avoid_subspaces(const Lattice& l, const std::vector<AffineSubspace>& subspaces);

// Greedy choice of g(1..m) in l such that for every J and W the image of
// span{v_j + g(j) : j in J} in Q^d / W has dimension min(d - dim W, |J|).
// The result is re-checked over all J (kVerificationFailed).
std::vector<Vec> forcing_assignment(const std::vector<Vec>& vectors, const Lattice& l,
                                    const std::vector<RationalSubspace>& w_list);

// d-1 tiles F_1..F_{d-1}, each tiling with A, such that (F_1..F_{d-1}, F) is
// independent and (F_1..F_{d-2}, F) has property (*).
std::vector<Tile> brother_tiles(const Tile& f, const PeriodicSet& a);

struct EquivalenceCertificate {
  std::optional<PeriodicSet> cotile;  // absent: no co-tile up to max_index
  std::vector<Tile> brothers;
  // (F_1..F_{d-2}, F): a (d-1)-tuple with property (*) that tiles jointly with cotile
  std::optional<TileTuple> star_tuple;
};

// Looks for a periodic co-tile of F and turns it into brother tiles.
EquivalenceCertificate equiv_condition(const Tile& f, const Integer& max_index);

}  // namespace tilekit
