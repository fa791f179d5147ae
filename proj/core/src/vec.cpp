#include "tilekit/vec.hpp"

#include <cassert>

#include "tilekit/error.hpp"

namespace tilekit {

namespace {

void check_same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vectors of dimension " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
}

}  // namespace

Vec make_vec(std::initializer_list<long> xs) {
  Vec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

Vec zero_vec(std::size_t dim) { return Vec(dim, Integer(0)); }

Vec unit_vec(std::size_t dim, std::size_t axis) {
  Vec v = zero_vec(dim);
  v.at(axis) = 1;
  return v;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  r += b;
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  r -= b;
  return r;
}

Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vec operator*(const Integer& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Vec& operator+=(Vec& a, const Vec& b) {
  check_same_dim(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vec& operator-=(Vec& a, const Vec& b) {
  check_same_dim(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

Integer sup_norm(const Vec& v) {
  Integer m = 0;
  for (const auto& x : v) {
    Integer a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

Integer dot(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer floor_div(const Integer& a, const Integer& b) {
  assert(b != 0);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  assert(b != 0);
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::size_t VecHash::operator()(const Vec& v) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& x : v) {
    const mpz_srcptr z = x.get_mpz_t();
    std::size_t limb = mpz_size(z) ? static_cast<std::size_t>(mpz_getlimbn(z, 0)) : 0;
    limb ^= static_cast<std::size_t>(mpz_sgn(z) + 1) << 61;
    h = (h ^ limb) * 0x100000001b3ULL;
  }
  return h;
}

}  // namespace tilekit
