#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tilekit/vec.hpp"

namespace tilekit {

// Index of a subgroup of Z^d: a positive integer, or infinite when the
// subgroup has rank < d.
class LatticeIndex {
 public:
  static LatticeIndex infinite() { return LatticeIndex(); }
  static LatticeIndex finite(Integer value) { return LatticeIndex(std::move(value)); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  // Throws kRankDeficient when infinite.
  const Integer& value() const;

  bool operator==(const LatticeIndex&) const = default;

 private:
  LatticeIndex() = default;
  explicit LatticeIndex(Integer v) : value_(std::move(v)) {}
  std::optional<Integer> value_;
};

// A subgroup of Z^d stored in canonical column Hermite normal form.
//
// Column j has its last nonzero entry (the pivot) in row pivot_row(j); pivot
// rows increase strictly with j, pivots are positive, and every entry in a
// pivot row to the right of the pivot lies in [0, pivot). For full rank this
// is an upper-triangular matrix. Two lattices are the same subgroup iff their
// stored columns are identical.
class Lattice {
 public:
  Lattice() = default;

  static Lattice zero(std::size_t dim);
  static Lattice identity(std::size_t dim);
  static Lattice diagonal(std::span<const long> entries);
  static Lattice diagonal(std::initializer_list<long> entries);
  // Canonicalizes an arbitrary generating set; zero columns are ignored.
  static Lattice from_generators(std::size_t dim, std::span<const Vec> generators);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return columns_.size(); }
  bool is_full_rank() const { return rank() == dim_; }
  const std::vector<Vec>& basis() const { return columns_; }
  std::size_t pivot_row(std::size_t column) const { return pivot_rows_.at(column); }
  Integer pivot(std::size_t column) const { return columns_.at(column)[pivot_rows_.at(column)]; }

  LatticeIndex index() const;

  bool contains(const Vec& v) const;
  // Coefficients of v in the stored basis, if v lies in the lattice.
  std::optional<Vec> coordinates(const Vec& v) const;
  // Canonical coset representative: each coordinate in [0, pivot).
  // Throws kRankDeficient unless full rank.
  Vec reduce(const Vec& v) const;

  bool contains(const Lattice& sub) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;
  friend bool operator<(const Lattice& a, const Lattice& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    return a.columns_ < b.columns_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Vec> columns_;
  std::vector<std::size_t> pivot_rows_;

  friend Lattice hnf(std::size_t dim, std::vector<Vec> columns);
};

Lattice hnf(std::size_t dim, std::vector<Vec> columns);

Lattice sum(const Lattice& a, const Lattice& b);
Lattice intersect(const Lattice& a, const Lattice& b);
// span_Q(L) intersected with Z^d.
Lattice saturation(const Lattice& l);
// Integer basis of the orthogonal complement of span_Q(L).
std::vector<Vec> normal_vectors(const Lattice& l);
// Order of v in Z^d / L for a full-rank L.
Integer order_modulo(const Lattice& l, const Vec& v);

// Integer kernel {x in Z^n : sum_i x_i * columns[i] = 0}, using only the first
// `rows` coordinates of each column. Returns a basis.
std::vector<Vec> integer_kernel(std::size_t rows, std::span<const Vec> columns);

// All full-rank sublattices of Z^d with index exactly n, sorted.
std::vector<Lattice> enumerate_sublattices(std::size_t dim, const Integer& n);

// Representatives of sup / sub, where sub is a finite-index subgroup of sup.
std::vector<Vec> coset_representatives(const Lattice& sup, const Lattice& sub);

// Z^d / L for a full-rank L, with residues enumerated in mixed-radix order of
// their HNF digits (first coordinate fastest). Residue 0 comes first.
class QuotientGroup {
 public:
  static constexpr std::size_t kMaxSize = std::size_t{1} << 24;

  explicit QuotientGroup(Lattice lattice);

  const Lattice& lattice() const { return lattice_; }
  std::size_t size() const { return residues_.size(); }
  const Vec& residue(std::size_t i) const { return residues_.at(i); }
  const std::vector<Vec>& residues() const { return residues_; }

  std::size_t index_of(const Vec& v) const;
  std::size_t index_of_canonical(const Vec& residue) const;
  // perm[i] = index_of(residue(i) + t)
  std::vector<std::size_t> translation(const Vec& t) const;

 private:
  Lattice lattice_;
  std::vector<Vec> residues_;
  std::vector<std::size_t> strides_;
};

// Shared, immutable quotient groups are cached per lattice.
std::shared_ptr<const QuotientGroup> quotient(const Lattice& lattice);

// An L-periodic subset of Z^d: members + L, with members canonical residues.
class PeriodicSet {
 public:
  PeriodicSet() = default;
  // Members are reduced modulo the lattice and deduplicated.
  PeriodicSet(Lattice lattice, std::vector<Vec> members);

  static PeriodicSet whole_space(std::size_t dim);

  std::size_t dim() const { return lattice_.dim(); }
  const Lattice& lattice() const { return lattice_; }
  const std::vector<Vec>& members() const { return members_; }
  bool contains(const Vec& x) const;

  // The same subset of Z^d presented on a finer lattice (finer must lie in
  // lattice()).
  PeriodicSet refined(const Lattice& finer) const;
  PeriodicSet translated(const Vec& t) const;
  // Presented on its full stabilizer.
  PeriodicSet canonical() const;
  // Indicator over the residues of quotient(lattice()).
  std::vector<char> membership() const;

  friend bool operator==(const PeriodicSet&, const PeriodicSet&) = default;
  friend bool operator<(const PeriodicSet& a, const PeriodicSet& b) {
    if (!(a.lattice_ == b.lattice_)) return a.lattice_ < b.lattice_;
    return a.members_ < b.members_;
  }

 private:
  Lattice lattice_;
  std::vector<Vec> members_;
};

// Full stabilizer {v : A + v = A}; always contains A.lattice().
Lattice stabilizer(const PeriodicSet& a);

// Equality as subsets of Z^d, independent of the presenting lattice.
bool same_set(const PeriodicSet& a, const PeriodicSet& b);

}  // namespace tilekit
