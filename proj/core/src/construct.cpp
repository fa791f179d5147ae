#include "tilekit/construct.hpp"

#include <algorithm>
#include <set>

#include "tilekit/error.hpp"
#include "tilekit/solve.hpp"
#include "tilekit/verify.hpp"

namespace tilekit {

Tile translate_by_lattice(const Tile& f, const std::map<Vec, Vec>& g, const Lattice& l) {
  std::vector<Vec> pts;
  for (const auto& p : f.points()) {
    auto it = g.find(p);
    if (it == g.end()) {
      pts.push_back(p);
      continue;
    }
    if (it->second.size() != f.dim()) throw Error(ErrorCode::kDimensionMismatch, "translation dimension");
    if (!l.contains(it->second)) throw Error(ErrorCode::kOutOfLattice, to_string(it->second) + " is not in L");
    pts.push_back(p + it->second);
  }
  Tile out(f.dim(), pts);
  if (out.size() != f.size()) throw Error(ErrorCode::kInvalidArgument, "translated points collide");
  return out;
}

bool AffineSubspace::contains(const Vec& x) const { return directions.contains(x - base); }

LatticePointOrder::LatticePointOrder(Lattice l) : lattice_(std::move(l)) {
  if (!lattice_.is_full_rank()) throw Error(ErrorCode::kRankDeficient, "lattice must be full rank");
  fill_shell();
}

void LatticePointOrder::fill_shell() {
  shell_.clear();
  pos_ = 0;
  const std::size_t d = lattice_.dim();
  std::vector<long> c(d, -radius_);
  while (true) {
    long norm = 0;
    for (long v : c) norm = std::max(norm, std::labs(v));
    if (norm == radius_) {
      Vec x;
      for (long v : c) x.emplace_back(v);
      if (lattice_.contains(x)) shell_.push_back(std::move(x));
    }
    // lexicographic: last coordinate fastest
    std::size_t i = d;
    while (i > 0 && c[i - 1] == radius_) c[--i] = -radius_;
    if (i == 0) break;
    ++c[i - 1];
  }
}

Vec LatticePointOrder::next() {
  while (pos_ == shell_.size()) {
    ++radius_;
    fill_shell();
  }
  return shell_[pos_++];
}

Vec avoid_subspaces(const Lattice& l, const std::vector<AffineSubspace>& subspaces) {
  for (const auto& s : subspaces) {
    if (s.directions.dim() >= l.dim()) throw Error(ErrorCode::kInvalidArgument, "subspace is not proper");
  }
  LatticePointOrder order(l);
  while (true) {
    const Vec x = order.next();
    if (std::none_of(subspaces.begin(), subspaces.end(), [&](const AffineSubspace& s) { return s.contains(x); })) {
      return x;
    }
  }
}

namespace {

// Calls fn on every subset of {0..n-1} of size at most k, as sorted indices.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    fn(cur);
    if (cur.size() == k) return;
    for (std::size_t i = from; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<Vec> forcing_assignment(const std::vector<Vec>& vectors, const Lattice& l,
                                    const std::vector<RationalSubspace>& w_list) {
  const std::size_t d = l.dim();
  for (const auto& w : w_list) {
    if (w.ambient_dim() != d) throw Error(ErrorCode::kDimensionMismatch, "subspace dimension");
    if (w.dim() >= d) throw Error(ErrorCode::kInvalidArgument, "subspaces must be proper");
  }
  const std::size_t m = vectors.size();
  std::vector<Vec> g;
  std::vector<Vec> moved;  // v_j + g(j)
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<AffineSubspace> avoid;
    for (const auto& w : w_list) {
      const std::size_t k = d - w.dim() - 1;
      for_each_subset(j, k, [&](const std::vector<std::size_t>& sub) {
        std::vector<RationalVec> gens = w.basis();
        for (std::size_t i : sub) gens.emplace_back(moved[i].begin(), moved[i].end());
        avoid.push_back({-vectors[j], RationalSubspace::span(d, gens)});
      });
    }
    g.push_back(avoid_subspaces(l, avoid));
    moved.push_back(vectors[j] + g.back());
  }

  for (const auto& w : w_list) {
    for_each_subset(m, m, [&](const std::vector<std::size_t>& sub) {
      const std::size_t want = std::min(d - w.dim(), sub.size());
      if (vw_dimension(vectors, g, sub, w) != want) {
        throw Error(ErrorCode::kVerificationFailed, "forcing assignment misses the dimension condition");
      }
    });
  }
  return g;
}

std::vector<Tile> brother_tiles(const Tile& f, const PeriodicSet& a) {
  const std::size_t d = f.dim();
  if (a.dim() != d) throw Error(ErrorCode::kDimensionMismatch, "tile and co-tile differ in dimension");
  if (!f.is_normalized()) throw Error(ErrorCode::kNotNormalized, "tile must contain 0");
  if (f.size() == 1) throw Error(ErrorCode::kTrivialTile, "F = {0} has no brothers");
  const Lattice l = stabilizer(a);
  if (!l.is_full_rank()) throw Error(ErrorCode::kRankDeficientStabilizer, "co-tile is not d-periodic");
  if (!is_tiling(f, a)) throw Error(ErrorCode::kNotATiling, "F does not tile with A");

  const std::vector<Vec> star = f.starred();
  const std::size_t k = star.size();
  std::vector<Vec> vectors;
  for (std::size_t j = 0; j + 1 < d; ++j) vectors.insert(vectors.end(), star.begin(), star.end());
  std::set<RationalSubspace> ws;
  for (const auto& v : f.points()) ws.insert(RationalSubspace::span(d, std::vector<Vec>{v}));
  const std::vector<Vec> g = forcing_assignment(vectors, l, {ws.begin(), ws.end()});

  std::vector<Tile> out;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    std::vector<Vec> pts{zero_vec(d)};
    for (std::size_t i = 0; i < k; ++i) pts.push_back(star[i] + g[k * j + i]);
    out.emplace_back(d, std::move(pts));
  }

  for (const auto& b : out) {
    if (b.size() != f.size() || !is_tiling(b, a)) {
      throw Error(ErrorCode::kVerificationFailed, "brother tile does not tile with A");
    }
  }
  std::vector<Tile> full = out;
  full.push_back(f);
  if (!is_independent_tuple(TileTuple(full)).independent) {
    throw Error(ErrorCode::kVerificationFailed, "brother tiles are not independent");
  }
  if (d >= 3) {
    std::vector<Tile> star_tuple(out.begin(), out.end() - 1);
    star_tuple.push_back(f);
    if (!has_property_star(TileTuple(star_tuple)).holds) {
      throw Error(ErrorCode::kVerificationFailed, "brother tiles miss property (*)");
    }
  }
  return out;
}

EquivalenceCertificate equiv_condition(const Tile& f, const Integer& max_index) {
  EquivalenceCertificate cert;
  const auto found = search_periodic_cotile(TileTuple({f}), max_index, {SearchMode::kFirst, 1});
  if (found.cotiles.empty()) return cert;
  cert.cotile = found.cotiles.front();
  if (f.size() == 1 || f.dim() < 2) return cert;
  cert.brothers = brother_tiles(f, *cert.cotile);
  std::vector<Tile> tuple(cert.brothers.begin(), cert.brothers.end() - 1);
  tuple.push_back(f);
  const TileTuple t(tuple);
  if (!is_joint_cotile(t, *cert.cotile)) throw Error(ErrorCode::kVerificationFailed, "certificate does not tile");
  cert.star_tuple = t;
  return cert;
}

}  // namespace tilekit
