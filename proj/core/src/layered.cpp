#include "tilekit/layered.hpp"

#include <algorithm>
#include <numeric>

#include "tilekit/error.hpp"

namespace tilekit {

namespace {

std::int64_t to_i64(const Integer& x) {
  if (!x.fits_slong_p()) throw Error(ErrorCode::kTooLarge, "layer index out of range");
  return x.get_si();
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

std::int64_t fdiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::size_t minimal_period(const std::vector<LayeredFunction::Symbol>& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i + p < n && ok; ++i) ok = w[i] == w[i + p];
    if (ok) return p;
  }
  return n;
}

}  // namespace

Vec LayeredFunction::canonical_transversal(const Lattice& gamma0) {
  const std::size_t d = gamma0.dim();
  const Lattice sat = saturation(gamma0);
  for (std::size_t i = 0; i < d; ++i) {
    Vec e = unit_vec(d, i);
    if (!sat.contains(e)) return e;
  }
  throw Error(ErrorCode::kInvalidArgument, "gamma0 has full rank");
}

void LayeredFunction::init_geometry() {
  const std::size_t d = gamma0_.dim();
  if (gamma0_.rank() + 1 != d) {
    throw Error(ErrorCode::kRankDeficient, "gamma0 must have rank d-1");
  }
  if (transversal_.size() != d) throw Error(ErrorCode::kDimensionMismatch, "transversal dimension");
  std::vector<Vec> gens = gamma0_.basis();
  gens.push_back(transversal_);
  const Lattice g = hnf(d, std::move(gens));
  if (!g.is_full_rank()) throw Error(ErrorCode::kInvalidArgument, "transversal lies in span(gamma0)");
  group_ = quotient(g);
  normal_ = normal_vectors(gamma0_).front();
  normal_step_ = dot(normal_, transversal_);
  if (normal_step_ < 0) {
    normal_ = -normal_;
    normal_step_ = -normal_step_;
  }
}

LayeredFunction::LayeredFunction(Lattice gamma0, Vec transversal, std::vector<Symbol> left,
                                 std::vector<Symbol> center, std::vector<Symbol> right, std::int64_t start)
    : gamma0_(std::move(gamma0)),
      transversal_(std::move(transversal)),
      left_(std::move(left)),
      center_(std::move(center)),
      right_(std::move(right)),
      start_(start) {
  init_geometry();
  if (left_.empty() || right_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "left and right periodic words must be non-empty");
  }
  for (const auto* part : {&left_, &center_, &right_}) {
    for (const auto& s : *part) {
      if (s.size() != group_->size()) {
        throw Error(ErrorCode::kInvalidArgument, "each layer symbol needs " + std::to_string(group_->size()) +
                                                     " values");
      }
    }
  }
  normalize();
}

LayeredFunction LayeredFunction::from_periodic(const PeriodicRationalFunction& f, const Lattice& gamma0) {
  for (const auto& g : gamma0.basis()) {
    if (!same_function(f, f.shifted(g))) {
      throw Error(ErrorCode::kInvalidArgument, "function is not invariant under gamma0");
    }
  }
  LayeredFunction out;
  out.gamma0_ = gamma0;
  out.transversal_ = canonical_transversal(gamma0);
  out.init_geometry();
  const std::int64_t period = to_i64(order_modulo(f.lattice(), out.transversal_));
  std::vector<Symbol> word;
  for (std::int64_t m = 0; m < period; ++m) {
    Symbol s;
    for (const auto& r : out.group_->residues()) s.push_back(f(Integer(m) * out.transversal_ + r));
    word.push_back(std::move(s));
  }
  out.left_ = word;
  out.right_ = std::move(word);
  out.start_ = 0;
  out.normalize();
  return out;
}

void LayeredFunction::normalize() {
  left_.resize(minimal_period(left_));
  right_.resize(minimal_period(right_));
  while (!center_.empty() && center_.front() == left_.front()) {
    center_.erase(center_.begin());
    ++start_;
    std::rotate(left_.begin(), left_.begin() + 1, left_.end());
  }
  while (!center_.empty() && center_.back() == right_.back()) {
    center_.pop_back();
    std::rotate(right_.begin(), right_.end() - 1, right_.end());
  }
}

const LayeredFunction::Symbol& LayeredFunction::layer(std::int64_t n) const {
  if (n < start_) return left_[mod(n - start_, static_cast<std::int64_t>(left_.size()))];
  const std::int64_t e = end();
  if (n < e) return center_[n - start_];
  return right_[mod(n - e, static_cast<std::int64_t>(right_.size()))];
}

std::pair<std::int64_t, std::size_t> LayeredFunction::locate(const Vec& x) const {
  const std::size_t k = group_->index_of(x);
  const Integer num = dot(normal_, x - group_->residue(k));
  return {to_i64(num / normal_step_), k};
}

Rational LayeredFunction::operator()(const Vec& x) const {
  const auto [n, k] = locate(x);
  return layer(n)[k];
}

LayeredFunction LayeredFunction::relayered(const Lattice& gamma0, const Vec& transversal) const {
  if (gamma0.rank() != gamma0_.rank() || !gamma0_.contains(gamma0)) {
    throw Error(ErrorCode::kInvalidArgument, "new gamma0 must be a finite-index sublattice of the old one");
  }
  const auto [a, k0] = locate(transversal);
  if (k0 != 0 || a <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "new transversal must be a positive layer step of the old group");
  }
  LayeredFunction out;
  out.gamma0_ = gamma0;
  out.transversal_ = transversal;
  out.init_geometry();

  const std::size_t size = out.group_->size();
  std::vector<std::pair<std::int64_t, std::size_t>> where(size);
  std::int64_t bmin = 0, bmax = 0;
  for (std::size_t k = 0; k < size; ++k) {
    where[k] = locate(out.group_->residue(k));
    if (k == 0 || where[k].first < bmin) bmin = where[k].first;
    if (k == 0 || where[k].first > bmax) bmax = where[k].first;
  }
  auto symbol_at = [&](std::int64_t m) {
    Symbol s(size);
    for (std::size_t k = 0; k < size; ++k) s[k] = layer(m * a + where[k].first)[where[k].second];
    return s;
  };

  const std::int64_t m_lo = fdiv(start_ - 1 - bmax, a) + 1;
  const std::int64_t m_hi = std::max(m_lo, -fdiv(-(end() - bmin), a));
  const auto lp = static_cast<std::int64_t>(left_.size());
  const auto rp = static_cast<std::int64_t>(right_.size());
  for (std::int64_t m = m_lo - lp; m < m_lo; ++m) out.left_.push_back(symbol_at(m));
  for (std::int64_t m = m_lo; m < m_hi; ++m) out.center_.push_back(symbol_at(m));
  for (std::int64_t m = m_hi; m < m_hi + rp; ++m) out.right_.push_back(symbol_at(m));
  out.start_ = m_lo;
  out.normalize();
  return out;
}

bool LayeredFunction::is_indicator() const {
  for (const auto* part : {&left_, &center_, &right_}) {
    for (const auto& s : *part) {
      for (const auto& v : s) {
        if (v != 0 && v != 1) return false;
      }
    }
  }
  return true;
}

std::int64_t LayeredFunction::layer_period() const {
  return std::gcd(static_cast<std::int64_t>(left_.size()), static_cast<std::int64_t>(right_.size()));
}

bool LayeredFunction::is_d_periodic() const {
  const std::int64_t p = layer_period();
  const auto lp = static_cast<std::int64_t>(left_.size());
  const auto rp = static_cast<std::int64_t>(right_.size());
  for (std::int64_t n = start_ - lp - p; n <= end() + rp; ++n) {
    if (layer(n + p) != layer(n)) return false;
  }
  return true;
}

PeriodicRationalFunction LayeredFunction::to_periodic() const {
  if (!is_d_periodic()) throw Error(ErrorCode::kRankDeficientStabilizer, "function is not d-periodic");
  std::vector<Vec> gens = gamma0_.basis();
  gens.push_back(Integer(layer_period()) * transversal_);
  const Lattice l = hnf(dim(), std::move(gens));
  std::vector<Rational> vals;
  for (const auto& r : quotient(l)->residues()) vals.push_back((*this)(r));
  return PeriodicRationalFunction(l, std::move(vals));
}

std::pair<LayeredFunction, LayeredFunction> on_common_layers(const LayeredFunction& a, const LayeredFunction& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimensionMismatch, "layered functions differ in dimension");
  if (saturation(a.gamma0()) != saturation(b.gamma0())) {
    throw Error(ErrorCode::kInvalidArgument, "layered functions live on different hyperplanes");
  }
  const Lattice g = intersect(a.gamma0(), b.gamma0());
  Vec t = a.transversal();
  if (t != b.transversal()) {
    const Vec e = LayeredFunction::canonical_transversal(g);
    const Integer k = lcm(order_modulo(a.group().lattice(), e), order_modulo(b.group().lattice(), e));
    t = k * e;
    if (a.locate(t).first < 0) t = -t;
  }
  if (g == a.gamma0() && t == a.transversal() && g == b.gamma0() && t == b.transversal()) return {a, b};
  return {a.relayered(g, t), b.relayered(g, t)};
}

bool same_function(const LayeredFunction& a, const LayeredFunction& b) {
  auto [x, y] = on_common_layers(a, b);
  const std::int64_t lo = std::min(x.start(), y.start()) -
                          static_cast<std::int64_t>(std::lcm(x.left().size(), y.left().size()));
  const std::int64_t hi = std::max(x.end(), y.end()) +
                          static_cast<std::int64_t>(std::lcm(x.right().size(), y.right().size()));
  for (std::int64_t n = lo; n < hi; ++n) {
    if (x.layer(n) != y.layer(n)) return false;
  }
  return true;
}

namespace {

template <class Op>
LayeredFunction combine(const LayeredFunction& a, const LayeredFunction& b, Op op) {
  auto [x, y] = on_common_layers(a, b);
  const std::int64_t lo = std::min(x.start(), y.start());
  const std::int64_t hi = std::max(x.end(), y.end());
  const auto lp = static_cast<std::int64_t>(std::lcm(x.left().size(), y.left().size()));
  const auto rp = static_cast<std::int64_t>(std::lcm(x.right().size(), y.right().size()));
  auto at = [&](std::int64_t n) {
    LayeredFunction::Symbol s = x.layer(n);
    const auto& t = y.layer(n);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = op(s[k], t[k]);
    return s;
  };
  std::vector<LayeredFunction::Symbol> left, center, right;
  for (std::int64_t n = lo - lp; n < lo; ++n) left.push_back(at(n));
  for (std::int64_t n = lo; n < hi; ++n) center.push_back(at(n));
  for (std::int64_t n = hi; n < hi + rp; ++n) right.push_back(at(n));
  return LayeredFunction(x.gamma0(), x.transversal(), std::move(left), std::move(center), std::move(right), lo);
}

}  // namespace

LayeredFunction operator+(const LayeredFunction& a, const LayeredFunction& b) {
  return combine(a, b, [](const Rational& u, const Rational& v) { return Rational(u + v); });
}

LayeredFunction operator-(const LayeredFunction& a, const LayeredFunction& b) {
  return combine(a, b, [](const Rational& u, const Rational& v) { return Rational(u - v); });
}

LayeredFunction convolve(const WeightedTile& g, const LayeredFunction& f) {
  if (g.dim() != f.dim()) throw Error(ErrorCode::kDimensionMismatch, "tile and function differ in dimension");
  const QuotientGroup& q = f.group();
  const std::size_t size = q.size();
  struct Term {
    std::size_t target;
    std::int64_t offset;
    std::size_t source;
    Integer weight;
  };
  std::vector<Term> terms;
  std::int64_t omin = 0, omax = 0;
  for (std::size_t k = 0; k < size; ++k) {
    for (const auto& [y, w] : g.terms()) {
      const auto [off, src] = f.locate(q.residue(k) - y);
      if (terms.empty() || off < omin) omin = off;
      if (terms.empty() || off > omax) omax = off;
      terms.push_back({k, off, src, w});
    }
  }
  auto at = [&](std::int64_t n) {
    LayeredFunction::Symbol s(size, Rational(0));
    for (const auto& t : terms) s[t.target] += t.weight * f.layer(n + t.offset)[t.source];
    return s;
  };
  const std::int64_t lo = f.start() - omax;
  const std::int64_t hi = f.end() - omin;
  const auto lp = static_cast<std::int64_t>(f.left().size());
  const auto rp = static_cast<std::int64_t>(f.right().size());
  std::vector<LayeredFunction::Symbol> left, center, right;
  for (std::int64_t n = lo - lp; n < lo; ++n) left.push_back(at(n));
  for (std::int64_t n = lo; n < hi; ++n) center.push_back(at(n));
  for (std::int64_t n = hi; n < hi + rp; ++n) right.push_back(at(n));
  return LayeredFunction(f.gamma0(), f.transversal(), std::move(left), std::move(center), std::move(right), lo);
}

Lattice stabilizer(const LayeredFunction& f) {
  if (f.is_d_periodic()) return stabilizer(f.to_periodic());
  // a non-periodic f can only be stabilized inside the hyperplane
  const Lattice sat = saturation(f.gamma0());
  std::vector<Vec> gens = f.gamma0().basis();
  const QuotientGroup& q = f.group();
  const auto lp = static_cast<std::int64_t>(f.left().size());
  const auto rp = static_cast<std::int64_t>(f.right().size());
  for (const auto& s : coset_representatives(sat, f.gamma0())) {
    if (is_zero(s)) continue;
    std::vector<std::pair<std::int64_t, std::size_t>> moved(q.size());
    std::int64_t reach = 0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      moved[k] = f.locate(q.residue(k) + s);
      reach = std::max(reach, std::abs(moved[k].first));
    }
    bool fixes = true;
    for (std::int64_t n = f.start() - lp - reach; n <= f.end() + rp + reach && fixes; ++n) {
      for (std::size_t k = 0; k < q.size() && fixes; ++k) {
        fixes = f.layer(n + moved[k].first)[moved[k].second] == f.layer(n)[k];
      }
    }
    if (fixes) gens.push_back(s);
  }
  return hnf(f.dim(), std::move(gens));
}

LayeredFunction with_span(const LayeredFunction& f, const Lattice& span) {
  const Lattice sat = saturation(span);
  if (saturation(f.gamma0()) == sat) return f;
  if (!f.is_d_periodic()) {
    throw Error(ErrorCode::kInvalidArgument, "a non-periodic function keeps its own hyperplane");
  }
  const PeriodicRationalFunction p = f.to_periodic();
  return LayeredFunction::from_periodic(p, intersect(stabilizer(p), sat));
}

}  // namespace tilekit
