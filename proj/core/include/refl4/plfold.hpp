#pragma once

#include <optional>
#include <span>
#include <string>

#include "refl4/inversive.hpp"

namespace refl4 {

// Inversion in the boundary of the axis-aligned cube with the given center and
// half-width, conjugated from the round inversion by the radial map taking
// sup-norm spheres about the center to Euclidean ones.
struct CubeInversion {
  Vec4 center;
  Rational half_width;

  CubeInversion(Vec4 center, Rational half_width);

  // Sup norm of p − center.
  Rational sup_radius(const Vec4& p) const;
};

// J(o + u) = o + s²·u / ‖u‖∞²; J(o) = ∞ and J(∞) = o.
ExtendedPoint pl_invert(const CubeInversion& ci, const ExtendedPoint& x);

struct InvolutionCheck {
  bool ok = true;
  std::size_t checked = 0;
  std::optional<ExtendedPoint> failing_sample;
  std::string reason;
};

// J(J(x)) = x for each sample; points off ∂Q change side, points on it are fixed.
InvolutionCheck involution_check(const CubeInversion& ci, std::span<const ExtendedPoint> samples);

// Sign of the Jacobian determinant of J at a finite point off the center,
// from central finite differences in double precision.
int jacobian_sign(const CubeInversion& ci, const Vec4& at, double step = 1e-6);

}  // namespace refl4
