#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace refl4 {

using Integer = mpz_class;
using Rational = mpq_class;

/// A point of R^4 with exact rational coordinates.
using Vec4 = std::array<Rational, 4>;

/// Raised on violated preconditions and malformed input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational dot(const Vec4& a, const Vec4& b);
Rational norm_sq(const Vec4& a);
Rational distance_sq(const Vec4& a, const Vec4& b);
Vec4 add(const Vec4& a, const Vec4& b);
Vec4 sub(const Vec4& a, const Vec4& b);
Vec4 scale(const Rational& k, const Vec4& a);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);
std::string to_string(const Vec4& v);

/// Accepts "p", "-p", "p/q" (with q != 0). Result is canonicalized.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace refl4
