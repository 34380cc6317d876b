#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "refl4/rational.hpp"

namespace refl4 {

using IntVec4 = std::array<long, 4>;

// A cell of the unit cubulation of R^4 of dimension 0, 1 or 2: the cube
// spanned from `anchor` (its lexicographically least vertex) along the
// coordinate axes in `axis_mask`.
struct CubicalCell {
  IntVec4 anchor{};
  std::uint8_t axis_mask = 0;

  static CubicalCell vertex(const IntVec4& anchor);
  static CubicalCell edge(const IntVec4& anchor, int axis);
  static CubicalCell square(const IntVec4& anchor, int axis1, int axis2);
  // Validates every axis index and rejects repeated axes or more than two.
  static CubicalCell from_axes(const IntVec4& anchor, std::span<const int> axes);

  int dimension() const;
  std::vector<int> axes() const;

  // Barycenter scaled by 2, so it is integral.
  IntVec4 doubled_barycenter() const;
  Vec4 barycenter() const;

  // All proper faces (lower-dimensional cells in the closure), in sorted order.
  std::vector<CubicalCell> faces() const;
  bool is_face_of(const CubicalCell& other) const;

  std::string to_string() const;

  auto operator<=>(const CubicalCell&) const = default;
  bool operator==(const CubicalCell&) const = default;
};

// Finite face-closed subcomplex of the 2-skeleton of the unit cubulation.
class CubicalComplex2 {
 public:
  CubicalComplex2() = default;

  // Face closure of arbitrary cells of dimension 0-2.
  static CubicalComplex2 closure_of(std::span<const CubicalCell> cells);

  const std::set<CubicalCell>& cells() const { return cells_; }
  std::vector<CubicalCell> cells_of_dimension(int dim) const;
  std::vector<CubicalCell> squares() const { return cells_of_dimension(2); }
  std::vector<CubicalCell> edges() const { return cells_of_dimension(1); }
  std::vector<CubicalCell> vertices() const { return cells_of_dimension(0); }

  bool contains(const CubicalCell& cell) const { return cells_.count(cell) != 0; }
  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }

  // True iff every vertex cell is a face of some square; false vertices
  // are listed by offending_vertices().
  bool vertex_condition() const { return offending_.empty(); }
  const std::vector<CubicalCell>& offending_vertices() const { return offending_; }

 private:
  std::set<CubicalCell> cells_;
  std::vector<CubicalCell> offending_;
};

// Face closure of the given squares. Throws Error for cells that are not
// squares; duplicates are merged.
CubicalComplex2 build_complex(std::span<const CubicalCell> squares);

// Equivalent to K.vertex_condition().
bool check_vertex_condition(const CubicalComplex2& complex);

// All 24 squares of the unit 4-cube at `anchor`.
std::vector<CubicalCell> four_cube_squares(const IntVec4& anchor = {0, 0, 0, 0});

using Simplex = std::vector<std::size_t>;

// Abstract simplicial complex with geometric vertex positions. Vertex ids
// are indices into `positions`; every simplex is a sorted id tuple.
struct SimplicialComplex {
  std::vector<Vec4> positions;
  std::set<Simplex> simplices;

  std::size_t vertex_count() const { return positions.size(); }
  // Number of simplices per dimension, trimmed after the top nonempty one.
  std::vector<std::size_t> f_vector() const;
  long euler_characteristic() const;
  bool is_downward_closed() const;
  std::vector<Simplex> maximal_simplices() const;
  bool contains(const Simplex& s) const { return simplices.count(s) != 0; }
};

// Barycentric subdivision together with the cell carried by each vertex.
struct Subdivision {
  SimplicialComplex complex;
  std::vector<CubicalCell> vertex_cells;
};

// Vertices are cell barycenters (in complex-cell order); simplices are the
// chains of cells ordered by face inclusion.
Subdivision barycentric_subdivision(const CubicalComplex2& complex);

}  // namespace refl4
