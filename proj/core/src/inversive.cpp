#include "refl4/inversive.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <utility>

namespace refl4 {

namespace {

// Solves A x = b exactly; nullopt when A is singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

void put_integer(std::string& out, const mpz_class& z) {
  std::size_t count = 0;
  void* raw = mpz_export(nullptr, &count, 1, 1, 1, 0, z.get_mpz_t());
  const auto len = static_cast<std::uint32_t>(count);
  out.push_back(static_cast<char>(sgn(z) < 0 ? 1 : 0));
  out.append(reinterpret_cast<const char*>(&len), sizeof len);
  if (count) out.append(static_cast<const char*>(raw), count);
  void (*free_fn)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  if (raw) free_fn(raw, count);
}

mpz_class get_integer(const std::string& in, std::size_t& pos) {
  if (pos + 1 + sizeof(std::uint32_t) > in.size()) throw Error("truncated matrix key");
  const bool negative = in[pos++] != 0;
  std::uint32_t len = 0;
  std::memcpy(&len, in.data() + pos, sizeof len);
  pos += sizeof len;
  if (pos + len > in.size()) throw Error("truncated matrix key");
  mpz_class z;
  mpz_import(z.get_mpz_t(), len, 1, 1, 1, 0, in.data() + pos);
  pos += len;
  if (negative) z = -z;
  return z;
}

}  // namespace

Sphere::Sphere(Vec4 c, Rational r2) : center(std::move(c)), radius_sq(std::move(r2)) {
  if (radius_sq <= 0) throw Error("sphere radius_sq must be positive, got " + refl4::to_string(radius_sq));
}

bool Sphere::contains_strictly(const Vec4& p) const { return distance_sq(p, center) < radius_sq; }
bool Sphere::contains(const Vec4& p) const { return distance_sq(p, center) <= radius_sq; }

const Vec4& ExtendedPoint::coords() const {
  if (!coords_) throw Error("point at infinity has no coordinates");
  return *coords_;
}

std::string ExtendedPoint::to_string() const { return coords_ ? refl4::to_string(*coords_) : "inf"; }

bool ExtendedPoint::operator<(const ExtendedPoint& other) const {
  if (!coords_ || !other.coords_) return coords_.has_value() && !other.coords_.has_value();
  return std::lexicographical_compare(coords_->begin(), coords_->end(), other.coords_->begin(), other.coords_->end());
}

Rational lorentz_product(const InversiveVector& x, const InversiveVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < 5; ++i) s += x[i] * y[i];
  return s - x[5] * y[5];
}

InversiveVector sphere_to_inversive(const Sphere& s) {
  const Rational power = norm_sq(s.center) - s.radius_sq;
  return {s.center[0], s.center[1], s.center[2], s.center[3], (power - 1) / 2, (power + 1) / 2};
}

InversiveVector point_to_inversive(const ExtendedPoint& p) {
  if (p.is_infinity()) return {0, 0, 0, 0, 1, 1};
  const Vec4& c = p.coords();
  const Rational n = norm_sq(c);
  return {c[0], c[1], c[2], c[3], (n - 1) / 2, (n + 1) / 2};
}

ExtendedPoint inversive_to_point(const InversiveVector& x) {
  const Rational k = x[5] - x[4];
  if (k == 0) {
    if (std::all_of(x.begin(), x.end(), [](const Rational& q) { return q == 0; }))
      throw Error("zero vector does not represent a point");
    return ExtendedPoint::infinity();
  }
  return Vec4{x[0] / k, x[1] / k, x[2] / k, x[3] / k};
}

MoebiusMatrix MoebiusMatrix::identity() {
  MoebiusMatrix m;
  for (std::size_t i = 0; i < 6; ++i) m(i, i) = 1;
  return m;
}

MoebiusMatrix MoebiusMatrix::lorentz_form() {
  MoebiusMatrix m = identity();
  m(5, 5) = -1;
  return m;
}

MoebiusMatrix MoebiusMatrix::operator*(const MoebiusMatrix& rhs) const {
  MoebiusMatrix out;
  Rational t;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t k = 0; k < 6; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < 6; ++j) {
        if (rhs(k, j) == 0) continue;
        t = a * rhs(k, j);
        out(i, j) += t;
      }
    }
  }
  return out;
}

InversiveVector MoebiusMatrix::operator*(const InversiveVector& x) const {
  InversiveVector y;
  for (std::size_t i = 0; i < 6; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < 6; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

MoebiusMatrix MoebiusMatrix::transpose() const {
  MoebiusMatrix t;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) t(j, i) = (*this)(i, j);
  return t;
}

MoebiusMatrix MoebiusMatrix::power(unsigned exponent) const {
  MoebiusMatrix result = identity();
  MoebiusMatrix base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

Rational MoebiusMatrix::determinant() const {
  std::array<Rational, 36> a = entries_;
  Rational det = 1;
  for (std::size_t col = 0; col < 6; ++col) {
    std::size_t pivot = col;
    while (pivot < 6 && a[pivot * 6 + col] == 0) ++pivot;
    if (pivot == 6) return 0;
    if (pivot != col) {
      for (std::size_t k = 0; k < 6; ++k) std::swap(a[pivot * 6 + k], a[col * 6 + k]);
      det = -det;
    }
    const Rational p = a[col * 6 + col];
    det *= p;
    for (std::size_t row = col + 1; row < 6; ++row) {
      if (a[row * 6 + col] == 0) continue;
      const Rational f = a[row * 6 + col] / p;
      for (std::size_t k = col; k < 6; ++k) a[row * 6 + k] -= f * a[col * 6 + k];
    }
  }
  return det;
}

bool MoebiusMatrix::is_identity() const {
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool MoebiusMatrix::is_lorentz() const {
  // (MᵀJM)_ab = Σ_k J_kk M_ka M_kb, compared entrywise on the upper triangle.
  Rational s, t;
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = a; b < 6; ++b) {
      s = 0;
      for (std::size_t k = 0; k < 6; ++k) {
        t = (*this)(k, a) * (*this)(k, b);
        if (k == 5) s -= t;
        else s += t;
      }
      const int expected = a != b ? 0 : (a == 5 ? -1 : 1);
      if (s != expected) return false;
    }
  }
  return true;
}

std::string MoebiusMatrix::canonical_key() const {
  std::string key;
  key.reserve(36 * 12);
  for (const auto& q : entries_) {
    put_integer(key, q.get_num());
    put_integer(key, q.get_den());
  }
  return key;
}

MoebiusMatrix MoebiusMatrix::from_key(const std::string& key) {
  MoebiusMatrix m;
  std::size_t pos = 0;
  for (auto& q : m.entries_) {
    mpz_class num = get_integer(key, pos);
    mpz_class den = get_integer(key, pos);
    q = Rational(num, den);
    q.canonicalize();
  }
  if (pos != key.size()) throw Error("trailing bytes in matrix key");
  return m;
}

MoebiusMatrix reflection_matrix(const Sphere& s) {
  const InversiveVector sigma = sphere_to_inversive(s);
  const Rational k = Rational(2) / s.radius_sq;
  MoebiusMatrix r = MoebiusMatrix::identity();
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      const Rational jsigma = j == 5 ? Rational(-sigma[j]) : sigma[j];
      r(i, j) -= k * sigma[i] * jsigma;
    }
  }
  return r;
}

ExtendedPoint apply_to_point(const MoebiusMatrix& m, const ExtendedPoint& p) {
  return inversive_to_point(m * point_to_inversive(p));
}

const char* to_string(PairRelation r) {
  switch (r) {
    case PairRelation::Disjoint: return "disjoint";
    case PairRelation::ExternallyTangent: return "externally_tangent";
    case PairRelation::InternallyTangent: return "internally_tangent";
    case PairRelation::Nested: return "nested";
    case PairRelation::Intersecting: return "intersecting";
  }
  return "?";
}

std::string PairClass::angle_string() const {
  if (relation != PairRelation::Intersecting) return "none";
  if (coxeter_order) return "pi/" + std::to_string(*coxeter_order);
  return std::string(cos_sign < 0 ? "arccos(-sqrt(" : "arccos(sqrt(") + refl4::to_string(cos_sq) + "))";
}

std::optional<int> coxeter_order(int cos_sign, const Rational& cos_sq, int max_order) {
  if (cos_sign < 0 || cos_sq >= 1 || cos_sq < 0) return std::nullopt;
  if (cos_sign == 0) return cos_sq == 0 ? std::optional<int>(2) : std::nullopt;
  // x = cos 2θ; T_m(x) = cos 2mθ equals 1 first at m when θ = πj/m with
  // gcd(j, m) = 1. Rational cos² only arises for m ∈ {2, 3, 4, 6}, where
  // θ ∈ (0, π/2) forces j = 1.
  const Rational x = 2 * cos_sq - 1;
  Rational prev = 1, cur = x;
  for (int m = 1; m <= max_order; ++m) {
    if (cur == 1) return m >= 2 ? std::optional<int>(m) : std::nullopt;
    Rational next = 2 * x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return std::nullopt;
}

PairClass classify_pair(const Sphere& s1, const Sphere& s2) {
  if (s1 == s2) throw Error("coincident");
  PairClass pc;
  pc.distance_sq = distance_sq(s1.center, s2.center);
  pc.cos_numerator = pc.distance_sq - s1.radius_sq - s2.radius_sq;
  pc.cos_sign = sgn(pc.cos_numerator);
  const Rational bound = 4 * s1.radius_sq * s2.radius_sq;  // (2 r1 r2)²
  const Rational num_sq = pc.cos_numerator * pc.cos_numerator;
  pc.cos_sq = num_sq / bound;
  if (num_sq < bound) {
    pc.relation = PairRelation::Intersecting;
    pc.coxeter_order = coxeter_order(pc.cos_sign, pc.cos_sq);
  } else if (pc.cos_sign > 0) {
    pc.relation = num_sq == bound ? PairRelation::ExternallyTangent : PairRelation::Disjoint;
  } else {
    pc.relation = num_sq == bound ? PairRelation::InternallyTangent : PairRelation::Nested;
  }
  return pc;
}

BallIntersection intersect_balls(std::span<const Sphere> balls) {
  const std::size_t k = balls.size();
  if (k == 0 || k > 4) throw Error("intersect_balls expects between 1 and 4 balls");
  auto power = [&](std::size_t i, const Vec4& x) -> Rational { return distance_sq(x, balls[i].center) - balls[i].radius_sq; };

  // Visit candidate active sets by size, then by mask; the first one meeting
  // the optimality conditions gives the unique minimiser.
  std::vector<unsigned> masks;
  for (unsigned m = 1; m < (1u << k); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });

  for (unsigned mask : masks) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) active.push_back(i);
    const Sphere& base = balls[active[0]];
    const std::size_t s = active.size() - 1;
    std::vector<Vec4> dirs;
    for (std::size_t j = 1; j <= s; ++j) dirs.push_back(sub(balls[active[j]].center, base.center));
    std::vector<std::vector<Rational>> gram(s, std::vector<Rational>(s));
    std::vector<Rational> rhs(s);
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) gram[a][b] = dot(dirs[a], dirs[b]);
      rhs[a] = (norm_sq(dirs[a]) - balls[active[a + 1]].radius_sq + base.radius_sq) / 2;
    }
    auto lambda = solve(gram, rhs);
    if (!lambda) continue;
    Rational base_weight = 1;
    bool feasible = true;
    for (const auto& l : *lambda) {
      if (l < 0) feasible = false;
      base_weight -= l;
    }
    if (!feasible || base_weight < 0) continue;
    Vec4 x = base.center;
    for (std::size_t a = 0; a < s; ++a) x = add(x, scale((*lambda)[a], dirs[a]));
    const Rational t = power(active[0], x);
    for (std::size_t i = 0; i < k && feasible; ++i)
      if (!(mask & (1u << i)) && power(i, x) > t) feasible = false;
    if (!feasible) continue;
    return {t <= 0, t, x};
  }
  throw Error("intersect_balls: no optimal active set found");
}

bool balls_common_point(std::span<const Sphere> balls) { return intersect_balls(balls).nonempty; }

}  // namespace refl4
