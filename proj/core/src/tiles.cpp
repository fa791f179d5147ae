#include "tilekit/tiles.hpp"

#include <algorithm>
#include <map>

#include "tilekit/error.hpp"

namespace tilekit {

Tile::Tile(std::size_t dim, std::vector<Vec> points) : dim_(dim), points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::kInvalidArgument, "a tile must be non-empty");
  for (const auto& p : points_) {
    if (p.size() != dim_) throw Error(ErrorCode::kDimensionMismatch, "tile point " + to_string(p));
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

Tile Tile::integers(std::initializer_list<long> xs) {
  std::vector<Vec> pts;
  for (long x : xs) pts.push_back(make_vec({x}));
  return Tile(1, std::move(pts));
}

bool Tile::contains(const Vec& v) const { return std::binary_search(points_.begin(), points_.end(), v); }

bool Tile::is_normalized() const { return contains(zero_vec(dim_)); }

std::vector<Vec> Tile::starred() const {
  std::vector<Vec> out;
  for (const auto& p : points_) {
    if (!is_zero(p)) out.push_back(p);
  }
  return out;
}

Integer Tile::diameter() const {
  Integer best = 0;
  for (const auto& a : points_) {
    for (const auto& b : points_) best = std::max(best, sup_norm(a - b));
  }
  return best;
}

NormalizedTile normalize(const Tile& f) {
  const Vec& t = f.points().front();
  return {translate(f, -t), t};
}

Tile translate(const Tile& f, const Vec& t) {
  std::vector<Vec> pts;
  pts.reserve(f.size());
  for (const auto& p : f.points()) pts.push_back(p + t);
  return Tile(f.dim(), std::move(pts));
}

Tile dilate(const Tile& f, const Integer& r) {
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "dilation factor must be positive");
  std::vector<Vec> pts;
  pts.reserve(f.size());
  for (const auto& p : f.points()) pts.push_back(r * p);
  return Tile(f.dim(), std::move(pts));
}

Tile difference_set(const Tile& f) {
  std::vector<Vec> pts;
  for (const auto& a : f.points()) {
    for (const auto& b : f.points()) pts.push_back(a - b);
  }
  return Tile(f.dim(), std::move(pts));
}

TileTuple::TileTuple(std::vector<Tile> tiles) : tiles_(std::move(tiles)) {
  if (tiles_.empty()) throw Error(ErrorCode::kInvalidArgument, "a tile tuple must be non-empty");
  for (const auto& t : tiles_) {
    if (t.dim() != tiles_.front().dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "tiles in a tuple must share a dimension");
    }
    if (!t.is_normalized()) throw Error(ErrorCode::kNotNormalized, "every tile must contain 0");
  }
}

WeightedTile::WeightedTile(std::size_t dim, std::vector<std::pair<Vec, Integer>> terms) : dim_(dim) {
  std::map<Vec, Integer> merged;
  for (auto& [v, w] : terms) {
    if (v.size() != dim) throw Error(ErrorCode::kDimensionMismatch, "weighted point " + to_string(v));
    merged[v] += w;
  }
  for (auto& [v, w] : merged) {
    if (w != 0) terms_.emplace_back(v, w);
  }
}

WeightedTile WeightedTile::indicator(const Tile& f) {
  std::vector<std::pair<Vec, Integer>> terms;
  for (const auto& p : f.points()) terms.emplace_back(p, Integer(1));
  return WeightedTile(f.dim(), std::move(terms));
}

WeightedTile WeightedTile::delta(const Vec& v) { return WeightedTile(v.size(), {{v, Integer(1)}}); }

Integer WeightedTile::total() const {
  Integer s = 0;
  for (const auto& [v, w] : terms_) s += w;
  return s;
}

WeightedTile operator+(const WeightedTile& a, const WeightedTile& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::kDimensionMismatch, "weighted tiles differ in dimension");
  auto terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return WeightedTile(a.dim_, std::move(terms));
}

WeightedTile operator*(const Integer& s, const WeightedTile& a) {
  auto terms = a.terms_;
  for (auto& t : terms) t.second *= s;
  return WeightedTile(a.dim_, std::move(terms));
}

WeightedTile operator-(const WeightedTile& a, const WeightedTile& b) { return a + Integer(-1) * b; }

PeriodicRationalFunction::PeriodicRationalFunction(Lattice lattice, std::vector<Rational> values)
    : group_(quotient(lattice)), values_(std::move(values)) {
  if (values_.size() != group_->size()) {
    throw Error(ErrorCode::kInvalidArgument, "expected " + std::to_string(group_->size()) +
                                                 " values, got " + std::to_string(values_.size()));
  }
}

PeriodicRationalFunction PeriodicRationalFunction::constant(std::size_t dim, const Rational& c) {
  return PeriodicRationalFunction(Lattice::identity(dim), {c});
}

PeriodicRationalFunction PeriodicRationalFunction::indicator(const PeriodicSet& a) {
  std::vector<Rational> vals;
  for (char c : a.membership()) vals.emplace_back(c ? 1 : 0);
  return PeriodicRationalFunction(a.lattice(), std::move(vals));
}

Rational PeriodicRationalFunction::operator()(const Vec& x) const { return values_[group_->index_of(x)]; }

PeriodicRationalFunction PeriodicRationalFunction::refined(const Lattice& finer) const {
  if (finer == lattice()) return *this;
  if (!lattice().contains(finer) || !finer.is_full_rank()) {
    throw Error(ErrorCode::kInvalidArgument, "refinement lattice must be a full-rank sublattice");
  }
  auto q = quotient(finer);
  std::vector<Rational> vals;
  vals.reserve(q->size());
  for (const auto& r : q->residues()) vals.push_back((*this)(r));
  return PeriodicRationalFunction(finer, std::move(vals));
}

PeriodicRationalFunction PeriodicRationalFunction::shifted(const Vec& t) const {
  const auto perm = group_->translation(-t);
  std::vector<Rational> vals(values_.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = values_[perm[i]];
  return PeriodicRationalFunction(lattice(), std::move(vals));
}

Rational PeriodicRationalFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
Rational PeriodicRationalFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool PeriodicRationalFunction::is_integer_valued() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v.get_den() == 1; });
}

bool PeriodicRationalFunction::is_indicator() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0 || v == 1; });
}

bool PeriodicRationalFunction::is_constant() const {
  return std::all_of(values_.begin(), values_.end(), [&](const Rational& v) { return v == values_[0]; });
}

PeriodicSet PeriodicRationalFunction::support() const {
  if (!is_indicator()) throw Error(ErrorCode::kNonIntegerValues, "function is not 0/1-valued");
  std::vector<Vec> members;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == 1) members.push_back(group_->residue(i));
  }
  return PeriodicSet(lattice(), std::move(members));
}

namespace {

std::pair<PeriodicRationalFunction, PeriodicRationalFunction> on_common_lattice(
    const PeriodicRationalFunction& a, const PeriodicRationalFunction& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimensionMismatch, "functions differ in dimension");
  if (a.lattice() == b.lattice()) return {a, b};
  const Lattice l = intersect(a.lattice(), b.lattice());
  return {a.refined(l), b.refined(l)};
}

}  // namespace

PeriodicRationalFunction operator+(const PeriodicRationalFunction& a, const PeriodicRationalFunction& b) {
  auto [x, y] = on_common_lattice(a, b);
  for (std::size_t i = 0; i < x.values_.size(); ++i) x.values_[i] += y.values_[i];
  return x;
}

PeriodicRationalFunction operator-(const PeriodicRationalFunction& a, const PeriodicRationalFunction& b) {
  auto [x, y] = on_common_lattice(a, b);
  for (std::size_t i = 0; i < x.values_.size(); ++i) x.values_[i] -= y.values_[i];
  return x;
}

PeriodicRationalFunction operator*(const Rational& s, const PeriodicRationalFunction& a) {
  PeriodicRationalFunction r = a;
  for (auto& v : r.values_) v *= s;
  return r;
}

bool same_function(const PeriodicRationalFunction& a, const PeriodicRationalFunction& b) {
  auto [x, y] = on_common_lattice(a, b);
  return x.values() == y.values();
}

bool equals_constant(const PeriodicRationalFunction& f, const Rational& c) {
  return std::all_of(f.values().begin(), f.values().end(), [&](const Rational& v) { return v == c; });
}

PeriodicRationalFunction convolve(const WeightedTile& g, const PeriodicRationalFunction& f) {
  if (g.dim() != f.dim()) throw Error(ErrorCode::kDimensionMismatch, "tile and function differ in dimension");
  const QuotientGroup& q = f.group();
  std::vector<Rational> out(q.size(), Rational(0));
  for (const auto& [y, w] : g.terms()) {
    const auto perm = q.translation(-y);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * f.values()[perm[i]];
  }
  return PeriodicRationalFunction(f.lattice(), std::move(out));
}

Lattice stabilizer(const PeriodicRationalFunction& f) {
  const QuotientGroup& q = f.group();
  const auto& vals = f.values();
  std::vector<Vec> gens = f.lattice().basis();
  for (std::size_t s = 1; s < q.size(); ++s) {
    if (vals[s] != vals[0]) continue;
    const auto perm = q.translation(q.residue(s));
    bool fixes = true;
    for (std::size_t i = 0; i < q.size() && fixes; ++i) fixes = vals[perm[i]] == vals[i];
    if (fixes) gens.push_back(q.residue(s));
  }
  return hnf(f.dim(), std::move(gens));
}

}  // namespace tilekit
