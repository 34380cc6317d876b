#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "refl4/rational.hpp"

namespace refl4 {

// Round sphere in R^4; doubles as the closed or open ball it bounds.
struct Sphere {
  Vec4 center;
  Rational radius_sq;

  Sphere(Vec4 center, Rational radius_sq);

  bool contains_strictly(const Vec4& p) const;  // open ball
  bool contains(const Vec4& p) const;           // closed ball
  bool operator==(const Sphere&) const = default;
};

// A point of S^4 = R^4 ∪ {∞}.
class ExtendedPoint {
 public:
  ExtendedPoint(Vec4 coords) : coords_(std::move(coords)) {}  // NOLINT(google-explicit-constructor)
  static ExtendedPoint infinity() { return ExtendedPoint(); }

  bool is_infinity() const { return !coords_.has_value(); }
  const Vec4& coords() const;
  std::string to_string() const;

  bool operator==(const ExtendedPoint&) const = default;
  // Lexicographic on coordinates; ∞ sorts last.
  bool operator<(const ExtendedPoint& other) const;

 private:
  ExtendedPoint() = default;
  std::optional<Vec4> coords_;
};

// Vector (c1..c4, u, v) of Minkowski space R^{5,1}.
using InversiveVector = std::array<Rational, 6>;

// Σ x_i y_i (i = 1..5) − x_6 y_6.
Rational lorentz_product(const InversiveVector& x, const InversiveVector& y);

// σ = (c, (|c|²−r²−1)/2, (|c|²−r²+1)/2), so that ⟨σ,σ⟩ = r² and, for a finite
// point p, ⟨p̂,σ⟩ = (r² − |p−c|²)/2 is positive exactly inside the ball.
InversiveVector sphere_to_inversive(const Sphere& s);

// Null vector with v + u = |p|², v − u = 1; ∞ maps to (0,0,0,0,1,1).
InversiveVector point_to_inversive(const ExtendedPoint& p);

// Inverse of point_to_inversive up to scale. Throws for the zero vector.
ExtendedPoint inversive_to_point(const InversiveVector& x);

// 6×6 rational matrix acting on InversiveVector, row-major.
class MoebiusMatrix {
 public:
  MoebiusMatrix() = default;  // zero matrix
  static MoebiusMatrix identity();
  // diag(1,1,1,1,1,−1)
  static MoebiusMatrix lorentz_form();

  Rational& operator()(std::size_t row, std::size_t col) { return entries_[row * 6 + col]; }
  const Rational& operator()(std::size_t row, std::size_t col) const { return entries_[row * 6 + col]; }
  const std::array<Rational, 36>& entries() const { return entries_; }

  MoebiusMatrix operator*(const MoebiusMatrix& rhs) const;
  InversiveVector operator*(const InversiveVector& x) const;
  bool operator==(const MoebiusMatrix&) const = default;

  MoebiusMatrix transpose() const;
  MoebiusMatrix power(unsigned exponent) const;
  Rational determinant() const;
  bool is_identity() const;
  // MᵀJM = J exactly.
  bool is_lorentz() const;

  // Canonical byte serialization; equal matrices give equal keys.
  std::string canonical_key() const;
  static MoebiusMatrix from_key(const std::string& key);

 private:
  std::array<Rational, 36> entries_{};
};

// Lorentz reflection x ↦ x − 2(⟨x,σ⟩/⟨σ,σ⟩)σ in the sphere's inversive vector.
MoebiusMatrix reflection_matrix(const Sphere& s);

ExtendedPoint apply_to_point(const MoebiusMatrix& m, const ExtendedPoint& p);

enum class PairRelation { Disjoint, ExternallyTangent, InternallyTangent, Nested, Intersecting };

const char* to_string(PairRelation r);

// Relation between two spheres with the exterior angle θ given by
// cos θ = (d² − r1² − r2²) / (2 r1 r2), reported as its sign and exact square.
struct PairClass {
  PairRelation relation = PairRelation::Disjoint;
  Rational distance_sq;
  Rational cos_numerator;  // d² − r1² − r2²
  Rational cos_sq;         // cos²θ; meaningful for every relation
  int cos_sign = 0;
  std::optional<int> coxeter_order;  // set only when Intersecting at angle π/m

  bool is_intersecting() const { return relation == PairRelation::Intersecting; }
  // "pi/m" when a Coxeter order is present, else a description of cos θ.
  std::string angle_string() const;
};

// Exact classification; throws Error("coincident") for equal spheres.
PairClass classify_pair(const Sphere& s1, const Sphere& s2);

// Least m in [2, max_order] with cos θ = cos(π/m), given sign(cos θ) and cos²θ.
std::optional<int> coxeter_order(int cos_sign, const Rational& cos_sq, int max_order = 12);

// Minimiser of max_i (|x − c_i|² − r_i²). The closed balls share a point
// iff min_power ≤ 0, in which case `point` lies in all of them.
struct BallIntersection {
  bool nonempty = false;
  Rational min_power;
  Vec4 point;
};

BallIntersection intersect_balls(std::span<const Sphere> balls);

// Whether the 1 ≤ k ≤ 4 closed balls have a common point.
bool balls_common_point(std::span<const Sphere> balls);

}  // namespace refl4
