#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "tilekit/tiles.hpp"
#include "tilekit/vec.hpp"

namespace tilekit {

using RationalVec = std::vector<Rational>;

// A linear subspace of Q^d held as its reduced row-echelon basis.
class RationalSubspace {
 public:
  RationalSubspace() = default;
  static RationalSubspace zero(std::size_t ambient);
  static RationalSubspace span(std::size_t ambient, const std::vector<Vec>& vectors);
  static RationalSubspace span(std::size_t ambient, const std::vector<RationalVec>& vectors);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<RationalVec>& basis() const { return rows_; }
  bool contains(const Vec& v) const;

  friend bool operator==(const RationalSubspace&, const RationalSubspace&) = default;
  friend bool operator<(const RationalSubspace& a, const RationalSubspace& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    return a.rows_ < b.rows_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<RationalVec> rows_;
};

std::size_t rank(std::size_t ambient, const std::vector<Vec>& vectors);
std::size_t rank(std::size_t ambient, const std::vector<RationalVec>& vectors);

// Every element of F_1* x ... x F_k*, first tile varying slowest.
std::vector<std::vector<Vec>> selections(const TileTuple& t);

struct IndependenceResult {
  bool independent = true;
  std::vector<Vec> witness;  // a dependent selection when !independent
};

IndependenceResult is_independent_tuple(const TileTuple& t);

struct PropertyStarResult {
  bool holds = true;
  std::vector<Vec> witness_a;
  std::vector<Vec> witness_b;
};

// Requires a tuple of length d - 1 (kWrongArity) that is independent
// (kNotIndependent).
PropertyStarResult has_property_star(const TileTuple& t);

struct SpanClassification {
  std::map<RationalSubspace, std::vector<std::vector<Vec>>> classes;
};

SpanClassification span_classes(const TileTuple& t);

// dim of the image of span{vectors[j] + shifts[j] : j in subset} in Q^d / w.
std::size_t vw_dimension(const std::vector<Vec>& vectors, const std::vector<Vec>& shifts,
                         const std::vector<std::size_t>& subset, const RationalSubspace& w);

}  // namespace tilekit
