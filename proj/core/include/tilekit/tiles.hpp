#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "tilekit/lattice.hpp"
#include "tilekit/vec.hpp"

namespace tilekit {

// A finite non-empty subset of Z^d, kept sorted and duplicate-free.
class Tile {
 public:
  Tile() = default;
  Tile(std::size_t dim, std::vector<Vec> points);
  // One-dimensional convenience constructor.
  static Tile integers(std::initializer_list<long> xs);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Vec>& points() const { return points_; }
  bool contains(const Vec& v) const;
  bool is_normalized() const;
  // F* = F \ {0}
  std::vector<Vec> starred() const;
  Integer diameter() const;

  friend bool operator==(const Tile&, const Tile&) = default;
  friend bool operator<(const Tile& a, const Tile& b) { return a.points_ < b.points_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Vec> points_;
};

struct NormalizedTile {
  Tile tile;
  Vec translation;  // original = tile + translation
};

NormalizedTile normalize(const Tile& f);
Tile translate(const Tile& f, const Vec& t);
Tile dilate(const Tile& f, const Integer& r);
Tile difference_set(const Tile& f);

// Ordered tuple of normalized tiles of a common dimension.
class TileTuple {
 public:
  TileTuple() = default;
  explicit TileTuple(std::vector<Tile> tiles);

  std::size_t dim() const { return tiles_.front().dim(); }
  std::size_t size() const { return tiles_.size(); }
  const Tile& operator[](std::size_t i) const { return tiles_.at(i); }
  const std::vector<Tile>& tiles() const { return tiles_; }

  friend bool operator==(const TileTuple&, const TileTuple&) = default;

 private:
  std::vector<Tile> tiles_;
};

// Finitely supported integer function on Z^d.
class WeightedTile {
 public:
  WeightedTile() = default;
  WeightedTile(std::size_t dim, std::vector<std::pair<Vec, Integer>> terms);
  static WeightedTile indicator(const Tile& f);
  static WeightedTile delta(const Vec& v);

  std::size_t dim() const { return dim_; }
  const std::vector<std::pair<Vec, Integer>>& terms() const { return terms_; }
  Integer total() const;

  friend WeightedTile operator+(const WeightedTile& a, const WeightedTile& b);
  friend WeightedTile operator-(const WeightedTile& a, const WeightedTile& b);
  friend WeightedTile operator*(const Integer& s, const WeightedTile& a);
  friend bool operator==(const WeightedTile&, const WeightedTile&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::pair<Vec, Integer>> terms_;
};

// f : Z^d -> Q with f(x + v) = f(x) for v in lattice(); values are listed in
// the residue order of quotient(lattice()).
class PeriodicRationalFunction {
 public:
  PeriodicRationalFunction() = default;
  PeriodicRationalFunction(Lattice lattice, std::vector<Rational> values);

  static PeriodicRationalFunction constant(std::size_t dim, const Rational& c);
  static PeriodicRationalFunction indicator(const PeriodicSet& a);

  std::size_t dim() const { return lattice().dim(); }
  const Lattice& lattice() const { return group_->lattice(); }
  const QuotientGroup& group() const { return *group_; }
  const std::vector<Rational>& values() const { return values_; }

  Rational operator()(const Vec& x) const;

  PeriodicRationalFunction refined(const Lattice& finer) const;
  // x -> f(x - t), i.e. delta_t * f.
  PeriodicRationalFunction shifted(const Vec& t) const;

  Rational min() const;
  Rational max() const;
  bool is_integer_valued() const;
  bool is_indicator() const;
  bool is_constant() const;
  // Support of a 0/1-valued function; throws kNonIntegerValues otherwise.
  PeriodicSet support() const;

  friend PeriodicRationalFunction operator+(const PeriodicRationalFunction& a,
                                            const PeriodicRationalFunction& b);
  friend PeriodicRationalFunction operator-(const PeriodicRationalFunction& a,
                                            const PeriodicRationalFunction& b);
  friend PeriodicRationalFunction operator*(const Rational& s, const PeriodicRationalFunction& a);

 private:
  std::shared_ptr<const QuotientGroup> group_;
  std::vector<Rational> values_;
};

// Equality as functions on Z^d.
bool same_function(const PeriodicRationalFunction& a, const PeriodicRationalFunction& b);
bool equals_constant(const PeriodicRationalFunction& f, const Rational& c);

// (g * f)(x) = sum_y g(y) f(x - y); the result keeps f's lattice.
PeriodicRationalFunction convolve(const WeightedTile& g, const PeriodicRationalFunction& f);

// {v : f(x + v) = f(x) for all x}; contains f.lattice().
Lattice stabilizer(const PeriodicRationalFunction& f);

}  // namespace tilekit
