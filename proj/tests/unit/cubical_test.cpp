#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "refl4/cubical.hpp"
#include "test_support.hpp"

namespace refl4 {
namespace {

using testing::single_square;

// Face census from lattice points only: a square's vertices are its four
// corners and its edges are corner pairs at distance 1.
struct FaceCensus {
  std::size_t vertices, edges;
};

FaceCensus census_by_points(const std::vector<CubicalCell>& squares) {
  std::set<IntVec4> points;
  std::set<std::pair<IntVec4, IntVec4>> segments;
  for (const auto& s : squares) {
    const auto ax = s.axes();
    std::vector<IntVec4> corners;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        IntVec4 p = s.anchor;
        p[ax[0]] += a;
        p[ax[1]] += b;
        corners.push_back(p);
      }
    for (const auto& p : corners) points.insert(p);
    for (const auto& p : corners)
      for (const auto& r : corners) {
        long d = 0;
        for (int i = 0; i < 4; ++i) d += (p[i] - r[i]) * (p[i] - r[i]);
        if (d == 1 && p < r) segments.emplace(p, r);
      }
  }
  return {points.size(), segments.size()};
}

CubicalCell cell_from_doubled_barycenter(const Vec4& position) {
  CubicalCell c;
  for (int i = 0; i < 4; ++i) {
    const Rational twice = 2 * position[i];
    const long t = twice.get_num().get_si();
    EXPECT_EQ(twice.get_den(), 1);
    if (t % 2 != 0) c.axis_mask |= static_cast<std::uint8_t>(1u << i);
    c.anchor[i] = (t - ((t % 2 + 2) % 2)) / 2;
  }
  return c;
}

TEST(CubicalCell, FacesOfSquare) {
  const auto s = CubicalCell::square({0, 0, 0, 0}, 0, 1);
  const auto faces = s.faces();
  EXPECT_EQ(faces.size(), 8u);
  EXPECT_EQ(std::count_if(faces.begin(), faces.end(), [](const auto& f) { return f.dimension() == 0; }), 4);
  for (const auto& f : faces) EXPECT_TRUE(f.is_face_of(s));
  EXPECT_FALSE(s.is_face_of(s));
  EXPECT_FALSE(CubicalCell::vertex({2, 0, 0, 0}).is_face_of(s));
}

TEST(CubicalCell, RejectsBadAxes) {
  const int repeated[] = {1, 1};
  EXPECT_THROW(CubicalCell::from_axes({0, 0, 0, 0}, repeated), Error);
  const int out_of_range[] = {0, 4};
  EXPECT_THROW(CubicalCell::from_axes({0, 0, 0, 0}, out_of_range), Error);
  const int three[] = {0, 1, 2};
  EXPECT_THROW(CubicalCell::from_axes({0, 0, 0, 0}, three), Error);
}

TEST(BuildComplex, SingleSquare) {
  const auto k = single_square();
  EXPECT_EQ(k.squares().size(), 1u);
  EXPECT_EQ(k.edges().size(), 4u);
  EXPECT_EQ(k.vertices().size(), 4u);
}

TEST(BuildComplex, Empty) {
  const auto k = build_complex({});
  EXPECT_TRUE(k.empty());
  EXPECT_TRUE(check_vertex_condition(k));
}

TEST(BuildComplex, TwoSquaresSharingAnEdge) {
  const std::vector<CubicalCell> sq = {CubicalCell::square({0, 0, 0, 0}, 0, 1),
                                       CubicalCell::square({0, 0, 0, 0}, 0, 2)};
  const auto k = build_complex(sq);
  const FaceCensus oracle = census_by_points(sq);
  EXPECT_EQ(oracle.vertices, 6u);
  EXPECT_EQ(oracle.edges, 7u);
  EXPECT_EQ(k.squares().size(), 2u);
  EXPECT_EQ(k.edges().size(), oracle.edges);
  EXPECT_EQ(k.vertices().size(), oracle.vertices);
}

TEST(BuildComplex, RejectsNonSquaresAndMergesDuplicates) {
  const std::vector<CubicalCell> bad = {CubicalCell::edge({0, 0, 0, 0}, 0)};
  EXPECT_THROW(build_complex(bad), Error);
  const std::vector<CubicalCell> dup = {CubicalCell::square({0, 0, 0, 0}, 0, 1),
                                        CubicalCell::square({0, 0, 0, 0}, 1, 0)};
  EXPECT_EQ(build_complex(dup).squares().size(), 1u);
}

TEST(BuildComplex, FourCubeCellCensus) {
  const auto k = testing::four_cube();
  EXPECT_EQ(k.squares().size(), 24u);
  EXPECT_EQ(k.edges().size(), 32u);
  EXPECT_EQ(k.vertices().size(), 16u);
  const FaceCensus oracle = census_by_points(four_cube_squares());
  EXPECT_EQ(oracle.vertices, 16u);
  EXPECT_EQ(oracle.edges, 32u);
}

TEST(VertexCondition, Cases) {
  EXPECT_TRUE(check_vertex_condition(single_square()));
  const std::vector<CubicalCell> cells = {CubicalCell::square({0, 0, 0, 0}, 0, 1),
                                          CubicalCell::edge({3, 0, 0, 0}, 2)};
  const auto k = CubicalComplex2::closure_of(cells);
  EXPECT_FALSE(check_vertex_condition(k));
  ASSERT_EQ(k.offending_vertices().size(), 2u);
  EXPECT_EQ(k.offending_vertices().front(), CubicalCell::vertex({3, 0, 0, 0}));
}

TEST(BarycentricSubdivision, SingleSquare) {
  const auto beta = barycentric_subdivision(single_square());
  EXPECT_EQ(beta.complex.f_vector(), (std::vector<std::size_t>{9, 16, 8}));
  EXPECT_EQ(beta.complex.euler_characteristic(), 1);
  EXPECT_TRUE(beta.complex.is_downward_closed());
}

TEST(BarycentricSubdivision, EdgeClosureAndEmpty) {
  const std::vector<CubicalCell> edge = {CubicalCell::edge({0, 0, 0, 0}, 3)};
  const auto beta = barycentric_subdivision(CubicalComplex2::closure_of(edge));
  EXPECT_EQ(beta.complex.f_vector(), (std::vector<std::size_t>{3, 2}));
  EXPECT_TRUE(barycentric_subdivision(CubicalComplex2{}).complex.simplices.empty());
}

TEST(BarycentricSubdivision, PositionsAreHalfIntegral) {
  const auto beta = barycentric_subdivision(testing::four_cube());
  std::set<IntVec4> doubled;
  for (std::size_t v = 0; v < beta.complex.vertex_count(); ++v) {
    EXPECT_EQ(beta.complex.positions[v], beta.vertex_cells[v].barycenter());
    doubled.insert(beta.vertex_cells[v].doubled_barycenter());
  }
  EXPECT_EQ(doubled.size(), beta.complex.vertex_count());  // injective on cells
}

// Random face-closed complexes: squares from a small box plus a few free edges.
CubicalComplex2 random_complex(std::mt19937_64& rng, std::vector<CubicalCell>* squares_out = nullptr) {
  std::uniform_int_distribution<int> coord(0, 2), axis(0, 3), count(0, 6), edges(0, 3);
  std::vector<CubicalCell> cells, squares;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int a = axis(rng), b = axis(rng);
    while (b == a) b = axis(rng);
    squares.push_back(CubicalCell::square({coord(rng), coord(rng), coord(rng), coord(rng)}, a, b));
  }
  cells = squares;
  const int m = edges(rng);
  for (int i = 0; i < m; ++i) cells.push_back(CubicalCell::edge({coord(rng), coord(rng), coord(rng), coord(rng)}, axis(rng)));
  if (squares_out) *squares_out = squares;
  return CubicalComplex2::closure_of(cells);
}

TEST(BarycentricSubdivision, RandomComplexInvariants) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto k = random_complex(rng);
    const auto beta = barycentric_subdivision(k);
    ASSERT_TRUE(beta.complex.is_downward_closed());

    std::size_t free_edges = 0;
    for (const auto& e : k.edges()) {
      bool in_square = false;
      for (const auto& s : k.squares()) in_square = in_square || e.is_face_of(s);
      free_edges += in_square ? 0 : 1;
    }
    std::size_t isolated_vertices = 0;
    for (const auto& v : k.vertices()) {
      bool used = false;
      for (const auto& c : k.cells()) used = used || v.is_face_of(c);
      isolated_vertices += used ? 0 : 1;
    }
    EXPECT_EQ(beta.complex.maximal_simplices().size(), 8 * k.squares().size() + 2 * free_edges + isolated_vertices);

    // Each simplex is a chain of distinct cells under face inclusion.
    for (const auto& s : beta.complex.simplices) {
      std::vector<CubicalCell> chain;
      for (auto v : s) chain.push_back(cell_from_doubled_barycenter(beta.complex.positions[v]));
      std::sort(chain.begin(), chain.end(), [](const auto& a, const auto& b) { return a.dimension() < b.dimension(); });
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) EXPECT_TRUE(chain[i].is_face_of(chain[i + 1]));
      for (const auto& c : chain) EXPECT_TRUE(k.contains(c));
    }
  }
}

TEST(BarycentricSubdivision, FunctorialOnInclusions) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<CubicalCell> squares;
    const auto big = random_complex(rng, &squares);
    if (squares.empty()) continue;
    std::vector<CubicalCell> half(squares.begin(), squares.begin() + (squares.size() + 1) / 2);
    const auto small = build_complex(half);
    const auto beta_big = barycentric_subdivision(big);
    const auto beta_small = barycentric_subdivision(small);

    std::map<CubicalCell, std::size_t> big_id;
    for (std::size_t v = 0; v < beta_big.vertex_cells.size(); ++v) big_id[beta_big.vertex_cells[v]] = v;
    std::set<std::size_t> kept;
    for (const auto& c : small.cells()) kept.insert(big_id.at(c));
    std::set<Simplex> induced;
    for (const auto& s : beta_big.complex.simplices)
      if (std::all_of(s.begin(), s.end(), [&](auto v) { return kept.count(v); })) induced.insert(s);
    std::set<Simplex> mapped;
    for (const auto& s : beta_small.complex.simplices) {
      Simplex t;
      for (auto v : s) t.push_back(big_id.at(beta_small.vertex_cells[v]));
      std::sort(t.begin(), t.end());
      mapped.insert(t);
    }
    EXPECT_EQ(mapped, induced);
  }
}

}  // namespace
}  // namespace refl4
