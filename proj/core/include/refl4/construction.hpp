#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refl4/cubical.hpp"
#include "refl4/inversive.hpp"

namespace refl4 {

// Radii (squared, unit-cube scale) of the balls placed at cell barycenters.
Rational vertex_radius_sq();  // 1/6
Rational edge_radius_sq();    // 1/12
Rational square_radius_sq();  // 1/6
Rational radius_sq_for(const CubicalCell& cell);

struct Ball {
  Sphere sphere;
  std::optional<CubicalCell> cell;
};

class BallConfiguration {
 public:
  BallConfiguration() = default;
  // Arbitrary explicit balls, kept in the given order. Rejects duplicates.
  static BallConfiguration from_spheres(std::vector<Sphere> spheres);

  const std::vector<Ball>& balls() const { return balls_; }
  std::size_t size() const { return balls_.size(); }
  const Sphere& sphere(std::size_t i) const { return balls_[i].sphere; }
  std::vector<Sphere> spheres() const;
  std::optional<std::size_t> index_of(const CubicalCell& cell) const;
  bool has_cells() const;

 private:
  friend BallConfiguration generate_configuration(const CubicalComplex2&);
  std::vector<Ball> balls_;
  std::map<CubicalCell, std::size_t> index_;
};

// One ball per cell of K, in cell order. Throws Error naming a vertex that
// lies in no square.
BallConfiguration generate_configuration(const CubicalComplex2& complex);

// Result of comparing the nerve with β(K) under ball ↦ barycenter.
struct MapCertificate {
  bool isomorphism = false;
  std::string reason;
  std::vector<std::size_t> nerve_f_vector;
  std::vector<std::size_t> subdivision_f_vector;
  // ball index -> β(K) vertex id, when the vertex sets correspond.
  std::vector<std::size_t> vertex_map;
  // Smallest simplex (ball indices) present on one side only.
  std::optional<Simplex> counterexample;
  bool counterexample_in_nerve = false;
  // For a nerve-only simplex: a common point of the balls. For a
  // β(K)-only simplex: the positive min-max power proving emptiness.
  std::optional<Vec4> witness_point;
  std::optional<Rational> min_power;
};

struct Violation {
  std::size_t i = 0, j = 0;
  std::string reason;
};

// Coxeter matrix with m_ii = 1; 0 encodes ∞.
struct CoxeterMatrix {
  static constexpr int kInfinity = 0;
  std::size_t n = 0;
  std::vector<int> entries;

  explicit CoxeterMatrix(std::size_t size = 0);
  int at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  void set(std::size_t i, std::size_t j, int m);
  bool is_symmetric() const;
};

struct AuditReport {
  std::size_t ball_count = 0;
  // pair_table[i][j] for i != j; the diagonal is empty.
  std::vector<std::vector<std::optional<PairClass>>> pair_table;
  CoxeterMatrix coxeter_matrix;
  std::vector<Violation> violations;
  std::optional<MapCertificate> nerve_iso;

  const PairClass& pair(std::size_t i, std::size_t j) const { return *pair_table[i][j]; }
  bool passed() const { return violations.empty(); }
};

struct AuditOptions {
  unsigned workers = 1;
  bool with_nerve = true;  // fill nerve_iso when every ball carries a cell
};

AuditReport audit(const BallConfiguration& conf, const AuditOptions& options = {});

// Stated relation between two categories of balls inside one square, and
// what the exact classification found for every such pair.
struct ClaimCheck {
  int claim = 0;
  std::string category;      // e.g. "midpoint-center"
  std::string claimed;       // "disjoint", "pi/2", "pi/3"
  std::size_t pairs = 0;
  std::vector<std::string> observed;  // distinct observed outcomes
  std::vector<std::string> evidence;  // exact cos numerators and cos² values
  bool agrees = false;
};

// Evaluates the per-square claims on every square of the configuration.
std::vector<ClaimCheck> check_square_claims(const BallConfiguration& conf);

SimplicialComplex nerve(const BallConfiguration& conf, std::size_t max_dim = 3, unsigned workers = 1);

MapCertificate canonical_map_check(const BallConfiguration& conf, const CubicalComplex2& complex,
                                   unsigned workers = 1);

struct CoverageResult {
  bool covered = true;
  std::size_t samples = 0;
  std::vector<Vec4> uncovered;
};

// Samples every square and free edge of K on a grid of the given step and
// tests strict containment in some ball.
CoverageResult coverage_check(const BallConfiguration& conf, const CubicalComplex2& complex,
                              const Rational& grid_step);

}  // namespace refl4
