#include "refl4/io.hpp"

#include <cmath>
#include <map>
#include <set>

namespace refl4::io {

namespace {

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) throw Error(where + ": missing field '" + name + "'");
  return obj.at(name);
}

}  // namespace

Rational parse_number(const json& value, const std::string& where) {
  if (value.is_number_integer()) return Rational(Integer(std::to_string(value.get<long long>())));
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
  }
  throw Error(where + ": expected an integer or a \"p/q\" string");
}

Vec4 parse_vec4(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 4) throw Error(where + ": expected an array of 4 numbers");
  Vec4 v;
  for (std::size_t i = 0; i < 4; ++i) v[i] = parse_number(value[i], where + "[" + std::to_string(i) + "]");
  return v;
}

CubicalCell parse_cell(const json& cell, const std::string& where) {
  const json& anchor = field(cell, "anchor", where);
  const json& axes = field(cell, "axes", where);
  if (!anchor.is_array() || anchor.size() != 4) throw Error(where + ".anchor: expected 4 integers");
  IntVec4 a{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!anchor[i].is_number_integer()) throw Error(where + ".anchor[" + std::to_string(i) + "]: expected an integer");
    a[i] = anchor[i].get<long>();
  }
  if (!axes.is_array()) throw Error(where + ".axes: expected an array");
  std::vector<int> ax;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (!axes[i].is_number_integer()) throw Error(where + ".axes[" + std::to_string(i) + "]: expected an integer");
    ax.push_back(axes[i].get<int>());
  }
  try {
    return CubicalCell::from_axes(a, ax);
  } catch (const Error& e) {
    throw Error(where + ": " + e.what());
  }
}

CubicalComplex2 parse_complex(const json& doc) {
  const json* squares = &doc;
  const json* extra = nullptr;
  if (doc.is_object()) {
    squares = &field(doc, "squares", "complex");
    if (doc.contains("extra_cells")) extra = &doc.at("extra_cells");
  }
  if (!squares->is_array()) throw Error("complex.squares: expected an array");
  std::vector<CubicalCell> sq;
  for (std::size_t i = 0; i < squares->size(); ++i) {
    const std::string where = "squares[" + std::to_string(i) + "]";
    CubicalCell c = parse_cell((*squares)[i], where);
    if (c.dimension() != 2) throw Error(where + ".axes: a square needs exactly 2 axes");
    sq.push_back(c);
  }
  std::vector<CubicalCell> cells = sq;
  if (extra) {
    if (!extra->is_array()) throw Error("extra_cells: expected an array");
    for (std::size_t i = 0; i < extra->size(); ++i)
      cells.push_back(parse_cell((*extra)[i], "extra_cells[" + std::to_string(i) + "]"));
  }
  return extra ? CubicalComplex2::closure_of(cells) : build_complex(sq);
}

InputDocument parse_input(const json& doc) {
  InputDocument in;
  if (doc.is_object() && doc.contains("balls")) {
    const json& balls = doc.at("balls");
    if (!balls.is_array()) throw Error("balls: expected an array");
    std::vector<Sphere> spheres;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const std::string where = "balls[" + std::to_string(i) + "]";
      const Vec4 c = parse_vec4(field(balls[i], "center", where), where + ".center");
      const Rational r2 = parse_number(field(balls[i], "radius_sq", where), where + ".radius_sq");
      if (r2 <= 0) throw Error(where + ".radius_sq: must be positive");
      spheres.emplace_back(c, r2);
    }
    in.balls = BallConfiguration::from_spheres(std::move(spheres));
  } else {
    in.complex = parse_complex(doc);
  }
  return in;
}

CubeInversion parse_cube_spec(const json& doc) {
  const Vec4 c = parse_vec4(field(doc, "center", "cube"), "cube.center");
  const Rational s = parse_number(field(doc, "half_width", "cube"), "cube.half_width");
  if (s <= 0) throw Error("cube.half_width: must be positive");
  return CubeInversion(c, s);
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const Vec4& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json decimal_shadow(const Vec4& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_double(x));
  return a;
}

json to_json(const ExtendedPoint& p) {
  if (p.is_infinity()) return "inf";
  return to_json(p.coords());
}

json to_json(const CubicalCell& c) {
  json anchor = json::array();
  for (auto x : c.anchor) anchor.push_back(x);
  return {{"anchor", anchor}, {"axes", c.axes()}};
}

json to_json(const CubicalComplex2& k) {
  json squares = json::array(), edges = json::array(), vertices = json::array();
  for (const auto& c : k.cells()) {
    json& target = c.dimension() == 2 ? squares : (c.dimension() == 1 ? edges : vertices);
    target.push_back(to_json(c));
  }
  return {{"squares", squares}, {"faces", {{"edges", edges}, {"vertices", vertices}}}};
}

json to_json(const PairClass& pc) {
  json j = {{"relation", to_string(pc.relation)},
            {"distance_sq", to_json(pc.distance_sq)},
            {"cos_numerator", to_json(pc.cos_numerator)},
            {"cos_sign", pc.cos_sign},
            {"cos_sq", to_json(pc.cos_sq)}};
  if (pc.is_intersecting()) {
    j["exterior_angle"] = pc.angle_string();
    j["coxeter_order"] = pc.coxeter_order ? json(*pc.coxeter_order) : json(nullptr);
  }
  return j;
}

json to_json(const BallConfiguration& conf) {
  json balls = json::array();
  for (std::size_t i = 0; i < conf.size(); ++i) {
    const Ball& b = conf.balls()[i];
    json entry = {{"index", i},
                  {"center", to_json(b.sphere.center)},
                  {"radius_sq", to_json(b.sphere.radius_sq)},
                  {"center_decimal", decimal_shadow(b.sphere.center)},
                  {"radius_decimal", std::sqrt(to_double(b.sphere.radius_sq))}};
    if (b.cell) {
      entry["cell"] = to_json(*b.cell);
      entry["kind"] = b.cell->dimension() == 0 ? "vertex" : (b.cell->dimension() == 1 ? "midpoint" : "center");
    }
    balls.push_back(entry);
  }
  return {{"ball_count", conf.size()}, {"balls", balls}};
}

json to_json(const CoxeterMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.n; ++j) {
      const int v = m.at(i, j);
      row.push_back(v == CoxeterMatrix::kInfinity ? json("inf") : json(v));
    }
    rows.push_back(row);
  }
  return rows;
}

json to_json(const AuditReport& report) {
  json pairs = json::array();
  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < report.ball_count; ++i) {
    for (std::size_t j = i + 1; j < report.ball_count; ++j) {
      const PairClass& pc = report.pair(i, j);
      json e = to_json(pc);
      e["i"] = i;
      e["j"] = j;
      pairs.push_back(e);
      ++counts[pc.is_intersecting() ? pc.angle_string() : to_string(pc.relation)];
    }
  }
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back({{"i", v.i}, {"j", v.j}, {"reason", v.reason}});
  std::set<std::string> entries;
  for (std::size_t i = 0; i < report.ball_count; ++i)
    for (std::size_t j = 0; j < report.ball_count; ++j) {
      if (i == j) continue;
      const int v = report.coxeter_matrix.at(i, j);
      entries.insert(v == CoxeterMatrix::kInfinity ? "inf" : std::to_string(v));
    }
  json j = {{"ball_count", report.ball_count},
            {"pair_table", pairs},
            {"pair_summary", counts},
            {"coxeter_matrix", to_json(report.coxeter_matrix)},
            {"coxeter_entries", entries},
            {"violations", violations},
            {"passed", report.passed()}};
  if (report.nerve_iso) j["nerve_isomorphism"] = to_json(*report.nerve_iso);
  return j;
}

json to_json(const Simplex& s) { return json(std::vector<std::size_t>(s.begin(), s.end())); }

json to_json(const MapCertificate& cert) {
  json j = {{"isomorphism", cert.isomorphism},
            {"reason", cert.reason},
            {"nerve_f_vector", cert.nerve_f_vector},
            {"subdivision_f_vector", cert.subdivision_f_vector},
            {"vertex_map", cert.vertex_map}};
  if (cert.counterexample) {
    j["counterexample"] = {{"simplex", to_json(*cert.counterexample)},
                           {"side", cert.counterexample_in_nerve ? "nerve_only" : "subdivision_only"}};
    if (cert.witness_point) j["counterexample"]["common_point"] = to_json(*cert.witness_point);
    if (cert.min_power) j["counterexample"]["min_max_power"] = to_json(*cert.min_power);
  }
  return j;
}

json to_json(const ClaimCheck& claim) {
  return {{"claim", claim.claim},       {"category", claim.category}, {"claimed", claim.claimed},
          {"pairs", claim.pairs},       {"observed", claim.observed}, {"evidence", claim.evidence},
          {"agrees", claim.agrees}};
}

json to_json(const CoverageResult& coverage) {
  json uncovered = json::array();
  for (const auto& p : coverage.uncovered) uncovered.push_back(to_json(p));
  return {{"covered", coverage.covered}, {"samples", coverage.samples}, {"uncovered", uncovered}};
}

json to_json(const RelationCheck& check) {
  json failures = json::array();
  for (const auto& f : check.failures) failures.push_back(f.message);
  return {{"ok", check.ok}, {"relations_checked", check.relations_checked}, {"failures", failures}};
}

json to_json(const Word& w) { return json(std::vector<int>(w.begin(), w.end())); }

json to_json(const FiniteQuotient& q) {
  json images = json::array();
  for (std::size_t g = 0; g < q.images.size(); ++g) {
    json rows = json::array();
    for (std::size_t r = 0; r < 6; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < 6; ++c) row.push_back(q.images[g].entries[r * 6 + c]);
      rows.push_back(row);
    }
    images.push_back({{"generator", g}, {"matrix_mod_p", rows}, {"determinant_sign", q.determinant_signs[g]}});
  }
  return {{"prime", q.prime},
          {"images", images},
          {"homomorphism_ok", q.homomorphism_ok},
          {"relations_checked", q.relations_checked},
          {"relation_failures", q.relation_failures},
          {"group_order", q.order_bound},
          {"group_order_capped", q.order_capped}};
}

json to_json(const TorsionCheck& check) {
  json witnesses = json::array();
  for (const auto& w : check.witnesses)
    witnesses.push_back({{"word", to_json(w.word)}, {"order", w.order}, {"image_order", w.image_order}});
  json histogram = json::array();
  for (const auto& [order, count] : check.order_histogram) histogram.push_back({{"order", order}, {"count", count}});
  return {{"ok", check.ok},
          {"elements", check.elements},
          {"finite_order_elements", check.finite_order_elements},
          {"order_histogram", histogram},
          {"witnesses", witnesses},
          {"truncated", check.truncated}};
}

json to_json(const OrbitTiling& tiling) {
  json points = json::array();
  for (const auto& p : tiling.points) {
    json e = {{"word", to_json(p.element.shortlex_word)}, {"image", to_json(p.image)}};
    if (!p.image.is_infinity()) e["image_decimal"] = decimal_shadow(p.image.coords());
    points.push_back(e);
  }
  return {{"probe", to_json(tiling.probe)},
          {"orbit_size", tiling.points.size()},
          {"injective", tiling.injective},
          {"leaves_domain", tiling.leaves_domain},
          {"truncated", tiling.truncated},
          {"problems", tiling.problems},
          {"points", points}};
}

}  // namespace refl4::io
