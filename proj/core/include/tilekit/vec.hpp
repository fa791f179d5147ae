#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace tilekit {

using Integer = mpz_class;
using Rational = mpq_class;

// Integer vector in Z^d. Lexicographic ordering comes from std::vector.
using Vec = std::vector<Integer>;

Vec make_vec(std::initializer_list<long> xs);
Vec zero_vec(std::size_t dim);
Vec unit_vec(std::size_t dim, std::size_t axis);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Integer& s, const Vec& a);
Vec& operator+=(Vec& a, const Vec& b);
Vec& operator-=(Vec& a, const Vec& b);

bool is_zero(const Vec& v);
Integer sup_norm(const Vec& v);
Integer dot(const Vec& a, const Vec& b);

Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);

std::string to_string(const Vec& v);

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept;
};

}  // namespace tilekit
