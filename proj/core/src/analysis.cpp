#include "tilekit/analysis.hpp"

#include "tilekit/error.hpp"

namespace tilekit {

namespace {

RationalVec to_rational(const Vec& v) { return RationalVec(v.begin(), v.end()); }

// In-place reduced row echelon form; zero rows are dropped.
std::vector<RationalVec> rref(std::vector<RationalVec> m, std::size_t cols) {
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    const Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const Rational factor = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[row][k];
    }
    ++row;
  }
  m.resize(row);
  return m;
}

}  // namespace

RationalSubspace RationalSubspace::zero(std::size_t ambient) {
  RationalSubspace s;
  s.ambient_ = ambient;
  return s;
}

RationalSubspace RationalSubspace::span(std::size_t ambient, const std::vector<RationalVec>& vectors) {
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw Error(ErrorCode::kDimensionMismatch, "subspace generator dimension");
  }
  RationalSubspace s;
  s.ambient_ = ambient;
  s.rows_ = rref(vectors, ambient);
  return s;
}

RationalSubspace RationalSubspace::span(std::size_t ambient, const std::vector<Vec>& vectors) {
  std::vector<RationalVec> rows;
  for (const auto& v : vectors) rows.push_back(to_rational(v));
  return span(ambient, rows);
}

bool RationalSubspace::contains(const Vec& v) const {
  auto rows = rows_;
  rows.push_back(to_rational(v));
  return rref(std::move(rows), ambient_).size() == rows_.size();
}

std::size_t rank(std::size_t ambient, const std::vector<RationalVec>& vectors) {
  return rref(vectors, ambient).size();
}

std::size_t rank(std::size_t ambient, const std::vector<Vec>& vectors) {
  std::vector<RationalVec> rows;
  for (const auto& v : vectors) rows.push_back(to_rational(v));
  return rank(ambient, rows);
}

std::vector<std::vector<Vec>> selections(const TileTuple& t) {
  std::vector<std::vector<Vec>> out{{}};
  for (const auto& tile : t.tiles()) {
    const auto star = tile.starred();
    std::vector<std::vector<Vec>> next;
    for (const auto& prefix : out) {
      for (const auto& v : star) {
        auto s = prefix;
        s.push_back(v);
        next.push_back(std::move(s));
      }
    }
    out = std::move(next);
  }
  return out;
}

IndependenceResult is_independent_tuple(const TileTuple& t) {
  const std::size_t d = t.dim();
  if (t.size() > d) {
    IndependenceResult r{false, {}};
    for (const auto& tile : t.tiles()) {
      auto star = tile.starred();
      if (star.empty()) return r;
      r.witness.push_back(star.front());
    }
    return r;
  }
  for (auto& s : selections(t)) {
    if (rank(d, s) != s.size()) return {false, std::move(s)};
  }
  return {};
}

SpanClassification span_classes(const TileTuple& t) {
  const std::size_t d = t.dim();
  SpanClassification out;
  for (auto& s : selections(t)) {
    if (rank(d, s) != s.size()) {
      throw Error(ErrorCode::kNotIndependent, "tuple is not independent");
    }
    out.classes[RationalSubspace::span(d, s)].push_back(std::move(s));
  }
  return out;
}

PropertyStarResult has_property_star(const TileTuple& t) {
  const std::size_t d = t.dim();
  if (t.size() + 1 != d) {
    throw Error(ErrorCode::kWrongArity, "property (*) needs d-1 = " + std::to_string(d - 1) +
                                            " tiles, got " + std::to_string(t.size()));
  }
  if (!is_independent_tuple(t).independent) {
    throw Error(ErrorCode::kNotIndependent, "tuple is not independent");
  }
  for (const auto& [span, tuples] : span_classes(t).classes) {
    for (std::size_t a = 0; a < tuples.size(); ++a) {
      for (std::size_t b = a + 1; b < tuples.size(); ++b) {
        for (std::size_t i = 0; i + 2 < d; ++i) {
          if (tuples[a][i] != tuples[b][i]) return {false, tuples[a], tuples[b]};
        }
      }
    }
  }
  return {};
}

std::size_t vw_dimension(const std::vector<Vec>& vectors, const std::vector<Vec>& shifts,
                         const std::vector<std::size_t>& subset, const RationalSubspace& w) {
  std::vector<RationalVec> rows = w.basis();
  for (std::size_t j : subset) rows.push_back(to_rational(vectors.at(j) + shifts.at(j)));
  return rank(w.ambient_dim(), rows) - w.dim();
}

}  // namespace tilekit
