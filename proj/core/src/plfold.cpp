#include "refl4/plfold.hpp"

#include <array>
#include <cmath>

namespace refl4 {

CubeInversion::CubeInversion(Vec4 c, Rational s) : center(std::move(c)), half_width(std::move(s)) {
  if (half_width <= 0) throw Error("cube half_width must be positive");
}

Rational CubeInversion::sup_radius(const Vec4& p) const {
  Rational r = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    Rational d = abs(p[i] - center[i]);
    if (d > r) r = d;
  }
  return r;
}

ExtendedPoint pl_invert(const CubeInversion& ci, const ExtendedPoint& x) {
  if (x.is_infinity()) return ci.center;
  const Vec4 u = sub(x.coords(), ci.center);
  const Rational r = ci.sup_radius(x.coords());
  if (r == 0) return ExtendedPoint::infinity();
  return add(ci.center, scale(ci.half_width * ci.half_width / (r * r), u));
}

InvolutionCheck involution_check(const CubeInversion& ci, std::span<const ExtendedPoint> samples) {
  InvolutionCheck check;
  for (const auto& x : samples) {
    ++check.checked;
    const ExtendedPoint y = pl_invert(ci, x);
    if (!(pl_invert(ci, y) == x)) {
      check.ok = false;
      check.failing_sample = x;
      check.reason = "J(J(x)) != x";
      return check;
    }
    if (x.is_infinity() || y.is_infinity()) continue;
    const int before = cmp(ci.sup_radius(x.coords()), ci.half_width);
    const int after = cmp(ci.sup_radius(y.coords()), ci.half_width);
    const bool ok = before == 0 ? y == x : (before > 0) == (after < 0) && after != 0;
    if (!ok) {
      check.ok = false;
      check.failing_sample = x;
      check.reason = before == 0 ? "boundary point moved" : "inside/outside not exchanged";
      return check;
    }
  }
  return check;
}

int jacobian_sign(const CubeInversion& ci, const Vec4& at, double step) {
  std::array<double, 4> o{}, p{};
  for (std::size_t i = 0; i < 4; ++i) {
    o[i] = to_double(ci.center[i]);
    p[i] = to_double(at[i]);
  }
  const double s = to_double(ci.half_width);
  auto eval = [&](const std::array<double, 4>& x) {
    double r = 0;
    for (std::size_t i = 0; i < 4; ++i) r = std::max(r, std::abs(x[i] - o[i]));
    std::array<double, 4> y{};
    for (std::size_t i = 0; i < 4; ++i) y[i] = o[i] + s * s * (x[i] - o[i]) / (r * r);
    return y;
  };
  double jac[4][4];
  for (std::size_t j = 0; j < 4; ++j) {
    auto plus = p, minus = p;
    plus[j] += step;
    minus[j] -= step;
    const auto fp = eval(plus), fm = eval(minus);
    for (std::size_t i = 0; i < 4; ++i) jac[i][j] = (fp[i] - fm[i]) / (2 * step);
  }
  // Gaussian elimination with partial pivoting.
  double det = 1;
  for (std::size_t c = 0; c < 4; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < 4; ++r)
      if (std::abs(jac[r][c]) > std::abs(jac[piv][c])) piv = r;
    if (jac[piv][c] == 0) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < 4; ++k) std::swap(jac[piv][k], jac[c][k]);
      det = -det;
    }
    det *= jac[c][c];
    for (std::size_t r = c + 1; r < 4; ++r) {
      const double f = jac[r][c] / jac[c][c];
      for (std::size_t k = c; k < 4; ++k) jac[r][k] -= f * jac[c][k];
    }
  }
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

}  // namespace refl4
