#include "refl4/rational.hpp"

#include <cctype>

namespace refl4 {

Rational dot(const Vec4& a, const Vec4& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < 4; ++i) s += a[i] * b[i];
  return s;
}

Rational norm_sq(const Vec4& a) { return dot(a, a); }

Rational distance_sq(const Vec4& a, const Vec4& b) { return norm_sq(sub(a, b)); }

Vec4 add(const Vec4& a, const Vec4& b) {
  Vec4 r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = a[i] + b[i];
  return r;
}

Vec4 sub(const Vec4& a, const Vec4& b) {
  Vec4 r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = a[i] - b[i];
  return r;
}

Vec4 scale(const Rational& k, const Vec4& a) {
  Vec4 r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = k * a[i];
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Vec4& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
    throw Error("malformed rational '" + std::string(text) + "'");
  if (num.front() == '+') num.remove_prefix(1);
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace refl4
