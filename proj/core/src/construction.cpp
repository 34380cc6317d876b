#include "refl4/construction.hpp"

#include <algorithm>
#include <set>

#include "refl4/parallel.hpp"

namespace refl4 {

namespace {

struct Vec4Less {
  bool operator()(const Vec4& a, const Vec4& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

bool simplex_less(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string pair_outcome(const PairClass& pc) {
  return pc.is_intersecting() ? pc.angle_string() : to_string(pc.relation);
}

}  // namespace

Rational vertex_radius_sq() { return Rational(1, 6); }
Rational edge_radius_sq() { return Rational(1, 12); }
Rational square_radius_sq() { return Rational(1, 6); }

Rational radius_sq_for(const CubicalCell& cell) {
  switch (cell.dimension()) {
    case 0: return vertex_radius_sq();
    case 1: return edge_radius_sq();
    case 2: return square_radius_sq();
  }
  throw Error("no ball radius for cell " + cell.to_string());
}

BallConfiguration BallConfiguration::from_spheres(std::vector<Sphere> spheres) {
  BallConfiguration conf;
  for (std::size_t i = 0; i < spheres.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (spheres[i] == spheres[j]) throw Error("duplicate ball " + std::to_string(i));
  for (auto& s : spheres) conf.balls_.push_back({std::move(s), std::nullopt});
  return conf;
}

std::vector<Sphere> BallConfiguration::spheres() const {
  std::vector<Sphere> out;
  out.reserve(balls_.size());
  for (const auto& b : balls_) out.push_back(b.sphere);
  return out;
}

std::optional<std::size_t> BallConfiguration::index_of(const CubicalCell& cell) const {
  auto it = index_.find(cell);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool BallConfiguration::has_cells() const {
  return !balls_.empty() && std::all_of(balls_.begin(), balls_.end(), [](const Ball& b) { return b.cell.has_value(); });
}

BallConfiguration generate_configuration(const CubicalComplex2& complex) {
  if (!complex.vertex_condition())
    throw Error("vertex " + complex.offending_vertices().front().to_string() + " lies in no square");
  BallConfiguration conf;
  for (const auto& cell : complex.cells()) {
    conf.index_.emplace(cell, conf.balls_.size());
    conf.balls_.push_back({Sphere(cell.barycenter(), radius_sq_for(cell)), cell});
  }
  return conf;
}

CoxeterMatrix::CoxeterMatrix(std::size_t size) : n(size), entries(size * size, kInfinity) {
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = 1;
}

void CoxeterMatrix::set(std::size_t i, std::size_t j, int m) {
  entries[i * n + j] = m;
  entries[j * n + i] = m;
}

bool CoxeterMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

AuditReport audit(const BallConfiguration& conf, const AuditOptions& options) {
  const std::size_t n = conf.size();
  AuditReport report;
  report.ball_count = n;
  report.pair_table.assign(n, std::vector<std::optional<PairClass>>(n));
  report.coxeter_matrix = CoxeterMatrix(n);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<PairClass> classes(pairs.size());
  parallel_for(pairs.size(), options.workers, [&](std::size_t k) {
    classes[k] = classify_pair(conf.sphere(pairs[k].first), conf.sphere(pairs[k].second));
  });

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    const PairClass& pc = classes[k];
    report.pair_table[i][j] = pc;
    report.pair_table[j][i] = pc;
    switch (pc.relation) {
      case PairRelation::Disjoint:
        break;
      case PairRelation::Intersecting:
        if (pc.coxeter_order)
          report.coxeter_matrix.set(i, j, *pc.coxeter_order);
        else
          report.violations.push_back({i, j, "exterior angle " + pc.angle_string() + " is not pi/m"});
        break;
      case PairRelation::ExternallyTangent:
      case PairRelation::InternallyTangent:
        report.violations.push_back({i, j, std::string("spheres are ") + to_string(pc.relation)});
        break;
      case PairRelation::Nested:
        report.violations.push_back({i, j, "balls are nested"});
        break;
    }
  }

  if (options.with_nerve && conf.has_cells()) {
    std::vector<CubicalCell> cells;
    for (const auto& b : conf.balls()) cells.push_back(*b.cell);
    report.nerve_iso = canonical_map_check(conf, CubicalComplex2::closure_of(cells), options.workers);
  }
  return report;
}

std::vector<ClaimCheck> check_square_claims(const BallConfiguration& conf) {
  struct Category {
    int claim;
    const char* name;
    const char* claimed;
  };
  const Category categories[] = {
      {1, "vertex-vertex", "disjoint"},
      {1, "midpoint-midpoint", "disjoint"},
      {2, "midpoint-center", "pi/2"},
      {2, "vertex-center", "pi/3"},
      {3, "midpoint-adjacent-vertex", "pi/3"},
      {3, "midpoint-nonadjacent-vertex", "disjoint"},
  };
  std::vector<ClaimCheck> checks;
  std::vector<std::set<std::string>> observed(std::size(categories)), evidence(std::size(categories));
  for (const auto& c : categories) checks.push_back({c.claim, c.name, c.claimed, 0, {}, {}, false});

  auto record = [&](std::size_t cat, std::size_t a, std::size_t b) {
    const PairClass pc = classify_pair(conf.sphere(a), conf.sphere(b));
    ++checks[cat].pairs;
    observed[cat].insert(pair_outcome(pc));
    evidence[cat].insert("d2=" + to_string(pc.distance_sq) + " cos_numerator=" + to_string(pc.cos_numerator) +
                         " cos2=" + to_string(pc.cos_sq));
  };

  for (const auto& ball : conf.balls()) {
    if (!ball.cell || ball.cell->dimension() != 2) continue;
    const CubicalCell& square = *ball.cell;
    std::vector<std::size_t> verts, mids;
    for (const auto& f : square.faces()) {
      auto idx = conf.index_of(f);
      if (!idx) continue;
      (f.dimension() == 0 ? verts : mids).push_back(*idx);
    }
    const std::size_t center = *conf.index_of(square);
    for (std::size_t a = 0; a < verts.size(); ++a)
      for (std::size_t b = a + 1; b < verts.size(); ++b) record(0, verts[a], verts[b]);
    for (std::size_t a = 0; a < mids.size(); ++a)
      for (std::size_t b = a + 1; b < mids.size(); ++b) record(1, mids[a], mids[b]);
    for (auto m : mids) record(2, m, center);
    for (auto v : verts) record(3, v, center);
    for (auto m : mids) {
      for (auto v : verts) {
        const bool adjacent = conf.balls()[v].cell->is_face_of(*conf.balls()[m].cell);
        record(adjacent ? 4 : 5, m, v);
      }
    }
  }
  for (std::size_t k = 0; k < checks.size(); ++k) {
    checks[k].observed.assign(observed[k].begin(), observed[k].end());
    checks[k].evidence.assign(evidence[k].begin(), evidence[k].end());
    checks[k].agrees = checks[k].pairs > 0 && observed[k].size() == 1 && *observed[k].begin() == checks[k].claimed;
  }
  return checks;
}

SimplicialComplex nerve(const BallConfiguration& conf, std::size_t max_dim, unsigned workers) {
  const std::size_t n = conf.size();
  SimplicialComplex out;
  for (const auto& b : conf.balls()) out.positions.push_back(b.sphere.center);
  for (std::size_t i = 0; i < n; ++i) out.simplices.insert({i});
  if (max_dim == 0) return out;

  // Candidates of size k+1 are those whose every k-face is present.
  std::vector<Simplex> level;
  for (std::size_t i = 0; i < n; ++i) level.push_back({i});
  for (std::size_t dim = 1; dim <= max_dim && !level.empty(); ++dim) {
    std::vector<Simplex> candidates;
    for (const auto& s : level) {
      for (std::size_t v = s.back() + 1; v < n; ++v) {
        Simplex t = s;
        t.push_back(v);
        bool faces_present = true;
        for (std::size_t drop = 0; drop + 1 < t.size() && faces_present; ++drop) {
          Simplex face;
          for (std::size_t q = 0; q < t.size(); ++q)
            if (q != drop) face.push_back(t[q]);
          faces_present = out.simplices.count(face) != 0;
        }
        if (faces_present) candidates.push_back(std::move(t));
      }
    }
    std::vector<char> keep(candidates.size(), 0);
    parallel_for(candidates.size(), workers, [&](std::size_t k) {
      std::vector<Sphere> balls;
      for (auto v : candidates[k]) balls.push_back(conf.sphere(v));
      keep[k] = balls_common_point(balls) ? 1 : 0;
    });
    level.clear();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (!keep[k]) continue;
      out.simplices.insert(candidates[k]);
      level.push_back(candidates[k]);
    }
  }
  return out;
}

MapCertificate canonical_map_check(const BallConfiguration& conf, const CubicalComplex2& complex, unsigned workers) {
  MapCertificate cert;
  const Subdivision beta = barycentric_subdivision(complex);
  const SimplicialComplex nerve_complex = nerve(conf, 3, workers);
  cert.nerve_f_vector = nerve_complex.f_vector();
  cert.subdivision_f_vector = beta.complex.f_vector();

  std::map<Vec4, std::size_t, Vec4Less> beta_ids;
  for (std::size_t v = 0; v < beta.complex.vertex_count(); ++v) beta_ids.emplace(beta.complex.positions[v], v);
  if (conf.size() != beta.complex.vertex_count()) {
    cert.reason = "vertex counts differ: " + std::to_string(conf.size()) + " balls vs " +
                  std::to_string(beta.complex.vertex_count()) + " barycenters";
    return cert;
  }
  std::vector<std::size_t> inverse(conf.size());
  std::vector<char> hit(conf.size(), 0);
  for (std::size_t i = 0; i < conf.size(); ++i) {
    auto it = beta_ids.find(conf.sphere(i).center);
    if (it == beta_ids.end() || hit[it->second]) {
      cert.reason = "ball " + std::to_string(i) + " center " + to_string(conf.sphere(i).center) +
                    " is not a distinct barycenter";
      cert.vertex_map.clear();
      return cert;
    }
    hit[it->second] = 1;
    cert.vertex_map.push_back(it->second);
    inverse[it->second] = i;
  }

  std::vector<Simplex> nerve_only, beta_only;
  std::set<Simplex> mapped_nerve;
  for (const auto& s : nerve_complex.simplices) {
    Simplex image;
    for (auto v : s) image.push_back(cert.vertex_map[v]);
    std::sort(image.begin(), image.end());
    mapped_nerve.insert(image);
    if (!beta.complex.contains(image)) nerve_only.push_back(s);
  }
  for (const auto& s : beta.complex.simplices) {
    if (mapped_nerve.count(s)) continue;
    Simplex pre;
    for (auto v : s) pre.push_back(inverse[v]);
    std::sort(pre.begin(), pre.end());
    beta_only.push_back(pre);
  }
  if (nerve_only.empty() && beta_only.empty()) {
    cert.isomorphism = true;
    cert.reason = "vertex bijection induces equal simplex sets";
    return cert;
  }

  auto pick = [](std::vector<Simplex>& v) {
    return *std::min_element(v.begin(), v.end(), simplex_less);
  };
  std::optional<Simplex> a = nerve_only.empty() ? std::nullopt : std::optional<Simplex>(pick(nerve_only));
  std::optional<Simplex> b = beta_only.empty() ? std::nullopt : std::optional<Simplex>(pick(beta_only));
  const bool use_nerve = a && (!b || !simplex_less(*b, *a));
  cert.counterexample = use_nerve ? a : b;
  cert.counterexample_in_nerve = use_nerve;
  std::vector<Sphere> balls;
  for (auto v : *cert.counterexample) balls.push_back(conf.sphere(v));
  const BallIntersection meet = intersect_balls(balls);
  if (use_nerve) {
    cert.witness_point = meet.point;
    cert.reason = "nerve simplex with no simplex of the subdivision (" + std::to_string(nerve_only.size()) +
                  " such simplices)";
  } else {
    cert.min_power = meet.min_power;
    cert.reason = "subdivision simplex whose balls have no common point (" + std::to_string(beta_only.size()) +
                  " such simplices)";
  }
  return cert;
}

CoverageResult coverage_check(const BallConfiguration& conf, const CubicalComplex2& complex,
                              const Rational& grid_step) {
  if (grid_step <= 0) throw Error("grid step must be positive");
  std::vector<Rational> ticks;
  for (Rational t = 0; t < 1; t += grid_step) ticks.push_back(t);
  ticks.push_back(1);

  std::set<Vec4, Vec4Less> samples;
  auto base_point = [](const CubicalCell& c) {
    Vec4 p;
    for (int i = 0; i < 4; ++i) p[i] = Rational(c.anchor[i]);
    return p;
  };
  for (const auto& cell : complex.cells()) {
    const auto axes = cell.axes();
    const Vec4 base = base_point(cell);
    if (cell.dimension() == 2) {
      for (const auto& a : ticks) {
        for (const auto& b : ticks) {
          Vec4 p = base;
          p[axes[0]] += a;
          p[axes[1]] += b;
          samples.insert(p);
        }
      }
    } else if (cell.dimension() == 1) {
      for (const auto& a : ticks) {
        Vec4 p = base;
        p[axes[0]] += a;
        samples.insert(p);
      }
    } else {
      samples.insert(base);
    }
  }

  CoverageResult result;
  result.samples = samples.size();
  for (const auto& p : samples) {
    const bool inside = std::any_of(conf.balls().begin(), conf.balls().end(),
                                    [&](const Ball& b) { return b.sphere.contains_strictly(p); });
    if (!inside) result.uncovered.push_back(p);
  }
  result.covered = result.uncovered.empty();
  return result;
}

}  // namespace refl4
