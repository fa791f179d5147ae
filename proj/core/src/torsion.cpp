#include "tilekit/torsion.hpp"

#include <algorithm>

#include "tilekit/error.hpp"
#include "tilekit/solve.hpp"
#include "tilekit/verify.hpp"

namespace tilekit {

namespace {

using Poly = std::vector<Rational>;  // coefficient of x^i at index i

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// a = quot * b + rem
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  Poly quot;
  if (a.size() >= b.size()) quot.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / b.back();
    quot[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

}  // namespace

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

CyclicFunction CyclicFunction::indicator(unsigned long p, const std::vector<unsigned long>& support) {
  CyclicFunction f{p, std::vector<Rational>(p, Rational(0))};
  for (unsigned long i : support) f.values.at(i) = 1;
  return f;
}

CyclicFunction CyclicFunction::delta(unsigned long p, unsigned long at) { return indicator(p, {at}); }

CyclicFunction cyclic_convolve(const CyclicFunction& a, const CyclicFunction& b) {
  if (a.p != b.p) throw Error(ErrorCode::kDimensionMismatch, "cyclic functions of different moduli");
  CyclicFunction r{a.p, std::vector<Rational>(a.p, Rational(0))};
  for (unsigned long i = 0; i < a.p; ++i) {
    if (a.values[i] == 0) continue;
    for (unsigned long j = 0; j < a.p; ++j) r.values[(i + j) % a.p] += a.values[i] * b.values[j];
  }
  return r;
}

CyclicFunction ring_inverse(unsigned long p, const std::vector<unsigned long>& f0) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  std::vector<unsigned long> s = f0;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (unsigned long i : s) {
    if (i >= p) throw Error(ErrorCode::kInvalidArgument, "residue out of range");
  }
  if (s.empty() || s.size() == p) throw Error(ErrorCode::kEmptyOrFull, "F0 must be non-empty and proper");

  Poly pf(s.back() + 1, Rational(0));
  for (unsigned long i : s) pf[i] = 1;
  Poly modulus(p + 1, Rational(0));
  modulus[0] = -1;
  modulus[p] = 1;

  // invariant: r0 = s0 * pf (mod modulus), r1 = s1 * pf (mod modulus)
  Poly r0 = modulus, r1 = pf, s0 = {}, s1 = {Rational(1)};
  while (!r1.empty()) {
    auto [quot, rem] = divmod(r0, r1);
    Poly s2 = sub(s0, mul(quot, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw Error(ErrorCode::kVerificationFailed, "P(x) and x^p - 1 are not coprime");
  const Rational inv = 1 / r0[0];
  CyclicFunction g{p, std::vector<Rational>(p, Rational(0))};
  for (std::size_t i = 0; i < s0.size(); ++i) g.values[i % p] += s0[i] * inv;
  return g;
}

MixedTile::MixedTile(unsigned long p, std::vector<std::pair<Integer, unsigned long>> points)
    : p_(p), points_(std::move(points)) {
  if (p_ == 0) throw Error(ErrorCode::kInvalidArgument, "modulus must be positive");
  if (points_.empty()) throw Error(ErrorCode::kInvalidArgument, "a tile must be non-empty");
  for (auto& pt : points_) {
    if (pt.second >= p_) throw Error(ErrorCode::kInvalidArgument, "fiber residue out of range");
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

std::vector<unsigned long> MixedTile::fiber(const Integer& n) const {
  std::vector<unsigned long> out;
  for (const auto& [m, t] : points_) {
    if (m == n) out.push_back(t);
  }
  return out;
}

std::vector<Integer> MixedTile::columns() const {
  std::vector<Integer> out;
  for (const auto& pt : points_) {
    if (out.empty() || out.back() != pt.first) out.push_back(pt.first);
  }
  return out;
}

bool MixedPeriodicSet::contains(const Integer& n, unsigned long t) const {
  return fibers.at(t % p).contains(Vec{n});
}

Integer MixedPeriodicSet::period() const {
  Integer n = 1;
  for (const auto& f : fibers) n = lcm(n, f.lattice().basis()[0][0]);
  return n;
}

Classification classify(const MixedTile& f) {
  for (const auto& n : f.columns()) {
    if (f.fiber(n).size() != f.p()) return {};
  }
  std::vector<Vec> base;
  for (const auto& n : f.columns()) base.push_back(Vec{n});
  return {FiberKind::kFullFiber, Tile(1, std::move(base))};
}

bool is_mixed_tiling(const MixedTile& f, const MixedPeriodicSet& a) {
  if (a.p != f.p() || a.fibers.size() != a.p) {
    throw Error(ErrorCode::kDimensionMismatch, "tile and co-tile use different moduli");
  }
  const Integer period = a.period();
  for (Integer n = 0; n < period; ++n) {
    for (unsigned long t = 0; t < a.p; ++t) {
      unsigned long count = 0;
      for (const auto& [m, s] : f.points()) count += a.contains(n - m, (t + a.p - s) % a.p) ? 1 : 0;
      if (count != 1) return false;
    }
  }
  return true;
}

TorsionVerdict cotile_conclusion(const MixedTile& f, const MixedPeriodicSet& a) {
  if (!is_mixed_tiling(f, a)) throw Error(ErrorCode::kNotACotile, "1_F * 1_A is not identically 1");
  TorsionVerdict out;
  out.classification = classify(f);

  Lattice stab = Lattice::identity(1);
  for (const auto& fib : a.fibers) stab = intersect(stab, stabilizer(fib));
  out.z_period = stab.basis()[0][0];

  const Integer period = a.period();
  const unsigned long p = a.p;
  if (out.classification.kind == FiberKind::kGeneric) {
    std::vector<unsigned long> f0;
    for (const auto& n : f.columns()) {
      auto fib = f.fiber(n);
      if (fib.size() < p) {
        f0 = std::move(fib);
        break;
      }
    }
    const CyclicFunction g = ring_inverse(p, f0);
    out.reconstructed = true;
    for (Integer n = 0; n < period && out.reconstructed; ++n) {
      // h(t) = (1_{{0} x F0} * 1_A)(n, t)
      std::vector<Rational> h(p, Rational(0));
      for (unsigned long t = 0; t < p; ++t) {
        for (unsigned long s : f0) h[t] += a.contains(n, (t + p - s) % p) ? 1 : 0;
      }
      for (unsigned long t = 0; t < p; ++t) {
        Rational v = 0;
        for (unsigned long s = 0; s < p; ++s) v += g.values[s] * h[(t + p - s) % p];
        if (v != (a.contains(n, t) ? 1 : 0)) out.reconstructed = false;
      }
    }
  } else {
    std::vector<Vec> proj;
    bool graph = true;
    for (Integer n = 0; n < period; ++n) {
      unsigned long hits = 0;
      for (unsigned long t = 0; t < p; ++t) hits += a.contains(n, t) ? 1 : 0;
      if (hits > 1) graph = false;
      if (hits == 1) proj.push_back(Vec{n});
    }
    PeriodicSet projection(Lattice::diagonal({static_cast<long>(period.get_si())}), std::move(proj));
    const Tile& base = *out.classification.base;
    out.projection_tiles = graph && is_tiling(base, projection);
    out.projection = std::move(projection);
    out.base_tiles_z = search_Z_cotile(normalize(base).tile).cotile.has_value();
  }
  return out;
}

}  // namespace tilekit
