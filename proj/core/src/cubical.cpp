#include "refl4/cubical.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace refl4 {

namespace {

void check_axis(int axis) {
  if (axis < 0 || axis > 3) throw Error("axis index " + std::to_string(axis) + " outside {0,1,2,3}");
}

}  // namespace

CubicalCell CubicalCell::vertex(const IntVec4& anchor) { return {anchor, 0}; }

CubicalCell CubicalCell::edge(const IntVec4& anchor, int axis) {
  check_axis(axis);
  return {anchor, static_cast<std::uint8_t>(1u << axis)};
}

CubicalCell CubicalCell::square(const IntVec4& anchor, int axis1, int axis2) {
  const int axes[] = {axis1, axis2};
  return from_axes(anchor, axes);
}

CubicalCell CubicalCell::from_axes(const IntVec4& anchor, std::span<const int> axes) {
  if (axes.size() > 2) throw Error("cell has more than two axes");
  std::uint8_t mask = 0;
  for (int a : axes) {
    check_axis(a);
    if (mask & (1u << a)) throw Error("repeated axis " + std::to_string(a));
    mask |= static_cast<std::uint8_t>(1u << a);
  }
  return {anchor, mask};
}

int CubicalCell::dimension() const { return std::popcount(static_cast<unsigned>(axis_mask)); }

std::vector<int> CubicalCell::axes() const {
  std::vector<int> out;
  for (int a = 0; a < 4; ++a)
    if (axis_mask & (1u << a)) out.push_back(a);
  return out;
}

IntVec4 CubicalCell::doubled_barycenter() const {
  IntVec4 b;
  for (int i = 0; i < 4; ++i) b[i] = 2 * anchor[i] + ((axis_mask >> i) & 1u);
  return b;
}

Vec4 CubicalCell::barycenter() const {
  const IntVec4 d = doubled_barycenter();
  Vec4 v;
  for (int i = 0; i < 4; ++i) v[i] = Rational(Integer(d[i]), Integer(2));
  for (auto& x : v) x.canonicalize();
  return v;
}

std::vector<CubicalCell> CubicalCell::faces() const {
  // A face fixes each axis of the cell either free, at 0, or at 1.
  const std::vector<int> ax = axes();
  std::vector<CubicalCell> out;
  const int n = static_cast<int>(ax.size());
  int combos = 1;
  for (int i = 0; i < n; ++i) combos *= 3;
  for (int c = 0; c < combos; ++c) {
    CubicalCell f{anchor, 0};
    int code = c;
    for (int i = 0; i < n; ++i, code /= 3) {
      switch (code % 3) {
        case 0: f.axis_mask |= static_cast<std::uint8_t>(1u << ax[i]); break;
        case 1: break;
        case 2: f.anchor[ax[i]] += 1; break;
      }
    }
    if (f != *this) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool CubicalCell::is_face_of(const CubicalCell& other) const {
  if (*this == other) return false;
  if ((axis_mask & ~other.axis_mask) != 0) return false;
  for (int i = 0; i < 4; ++i) {
    const long diff = anchor[i] - other.anchor[i];
    if (other.axis_mask & (1u << i)) {
      if (axis_mask & (1u << i)) {
        if (diff != 0) return false;
      } else if (diff != 0 && diff != 1) {
        return false;
      }
    } else if (diff != 0) {
      return false;
    }
  }
  return true;
}

std::string CubicalCell::to_string() const {
  std::string s = "[";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ",";
    s += std::to_string(anchor[i]);
  }
  s += "]{";
  bool first = true;
  for (int a : axes()) {
    if (!first) s += ",";
    s += std::to_string(a);
    first = false;
  }
  return s + "}";
}

CubicalComplex2 CubicalComplex2::closure_of(std::span<const CubicalCell> cells) {
  CubicalComplex2 k;
  for (const auto& c : cells) {
    if (c.dimension() > 2) throw Error("cell " + c.to_string() + " has dimension above 2");
    k.cells_.insert(c);
    for (const auto& f : c.faces()) k.cells_.insert(f);
  }
  std::set<CubicalCell> touched;
  for (const auto& c : k.cells_) {
    if (c.dimension() != 2) continue;
    for (const auto& f : c.faces())
      if (f.dimension() == 0) touched.insert(f);
  }
  for (const auto& c : k.cells_)
    if (c.dimension() == 0 && !touched.count(c)) k.offending_.push_back(c);
  return k;
}

std::vector<CubicalCell> CubicalComplex2::cells_of_dimension(int dim) const {
  std::vector<CubicalCell> out;
  for (const auto& c : cells_)
    if (c.dimension() == dim) out.push_back(c);
  return out;
}

CubicalComplex2 build_complex(std::span<const CubicalCell> squares) {
  for (const auto& s : squares)
    if (s.dimension() != 2) throw Error("cell " + s.to_string() + " is not a square");
  return CubicalComplex2::closure_of(squares);
}

bool check_vertex_condition(const CubicalComplex2& complex) { return complex.vertex_condition(); }

std::vector<CubicalCell> four_cube_squares(const IntVec4& anchor) {
  std::vector<CubicalCell> out;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      // The two remaining coordinates range over {0,1}.
      int rest[2], n = 0;
      for (int c = 0; c < 4; ++c)
        if (c != a && c != b) rest[n++] = c;
      for (int bits = 0; bits < 4; ++bits) {
        IntVec4 p = anchor;
        p[rest[0]] += bits & 1;
        p[rest[1]] += (bits >> 1) & 1;
        out.push_back(CubicalCell::square(p, a, b));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& s : simplices) {
    const std::size_t d = s.size() - 1;
    if (f.size() <= d) f.resize(d + 1, 0);
    ++f[d];
  }
  return f;
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  const auto f = f_vector();
  for (std::size_t d = 0; d < f.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(f[d]);
  return chi;
}

bool SimplicialComplex::is_downward_closed() const {
  for (const auto& s : simplices) {
    if (s.empty() || !std::is_sorted(s.begin(), s.end())) return false;
    for (auto v : s)
      if (v >= positions.size()) return false;
    if (s.size() == 1) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex face;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) face.push_back(s[i]);
      if (!simplices.count(face)) return false;
    }
  }
  return true;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<Simplex> out;
  for (const auto& s : simplices) {
    bool maximal = true;
    for (const auto& t : simplices) {
      if (t.size() == s.size() + 1 && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

Subdivision barycentric_subdivision(const CubicalComplex2& complex) {
  Subdivision out;
  std::map<CubicalCell, std::size_t> id;
  for (const auto& c : complex.cells()) {
    id.emplace(c, out.vertex_cells.size());
    out.vertex_cells.push_back(c);
    out.complex.positions.push_back(c.barycenter());
  }
  auto sorted = [](Simplex s) {
    std::sort(s.begin(), s.end());
    return s;
  };
  for (const auto& c : complex.cells()) {
    const std::size_t ic = id.at(c);
    out.complex.simplices.insert({ic});
    for (const auto& f : c.faces()) {
      const std::size_t iface = id.at(f);
      out.complex.simplices.insert(sorted({iface, ic}));
      if (c.dimension() == 2 && f.dimension() == 1) {
        for (const auto& v : f.faces()) out.complex.simplices.insert(sorted({id.at(v), iface, ic}));
      }
    }
  }
  return out;
}

}  // namespace refl4
