#include "cli/run.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "refl4/io.hpp"

namespace refl4::cli {

namespace {

using io::json;

const std::set<std::string> kCommands = {"generate", "audit", "nerve", "enumerate", "tile", "quotient", "plinv"};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

struct Pipeline {
  io::InputDocument input;
  BallConfiguration conf;
};

Pipeline load(const RunConfig& config) {
  Pipeline p;
  p.input = io::parse_input(read_json(config.input));
  p.conf = p.input.balls ? *p.input.balls : generate_configuration(*p.input.complex);
  return p;
}

ExtendedPoint parse_probe(const std::string& text) {
  if (text == "inf") return ExtendedPoint::infinity();
  Vec4 v;
  std::stringstream ss(text);
  std::string part;
  std::size_t n = 0;
  while (std::getline(ss, part, ',')) {
    if (n == 4) throw Error("--probe: expected 4 comma-separated coordinates");
    v[n++] = parse_rational(part);
  }
  if (n != 4) throw Error("--probe: expected 4 comma-separated coordinates");
  return v;
}

std::optional<GroupPresentation> presentation_or_report(const BallConfiguration& conf, const AuditReport& report,
                                                        json& out) {
  (void)conf;
  if (!report.passed()) {
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back({{"i", v.i}, {"j", v.j}, {"reason", v.reason}});
    out["presentation_error"] = {{"violations", violations}};
    return std::nullopt;
  }
  return presentation_from_audit(report);
}

int cmd_generate(const RunConfig&, const Pipeline& p, json& out) {
  if (p.input.complex) {
    out["complex"] = io::to_json(*p.input.complex);
    out["subdivision_f_vector"] = barycentric_subdivision(*p.input.complex).complex.f_vector();
  }
  out["configuration"] = io::to_json(p.conf);
  return kPass;
}

int cmd_audit(const RunConfig& config, const Pipeline& p, json& out) {
  AuditOptions opts;
  opts.workers = config.workers;
  const AuditReport report = audit(p.conf, opts);
  out["audit"] = io::to_json(report);
  bool ok = report.passed();
  if (report.nerve_iso) ok = ok && report.nerve_iso->isomorphism;

  json claims = json::array();
  for (const auto& c : check_square_claims(p.conf)) claims.push_back(io::to_json(c));
  out["square_claims"] = claims;

  if (p.input.complex) {
    const CoverageResult cov = coverage_check(p.conf, *p.input.complex, config.grid_step);
    out["coverage"] = io::to_json(cov);
    out["coverage"]["grid_step"] = io::to_json(config.grid_step);
    ok = ok && cov.covered;
  }
  if (report.passed()) {
    const RelationCheck rel = verify_relations(p.conf, presentation_from_audit(report), config.workers);
    out["relations"] = io::to_json(rel);
    ok = ok && rel.ok;
  }
  return ok ? kPass : kViolation;
}

int cmd_nerve(const RunConfig& config, const Pipeline& p, json& out) {
  const SimplicialComplex n = nerve(p.conf, 3, config.workers);
  json simplices = json::array();
  for (const auto& s : n.simplices)
    if (s.size() > 1) simplices.push_back(io::to_json(s));
  out["nerve"] = {{"f_vector", n.f_vector()}, {"simplices", simplices}};
  if (!p.input.complex) return kPass;
  const MapCertificate cert = canonical_map_check(p.conf, *p.input.complex, config.workers);
  out["canonical_map"] = io::to_json(cert);
  return cert.isomorphism ? kPass : kViolation;
}

int cmd_enumerate(const RunConfig& config, const Pipeline& p, json& out, std::string& csv) {
  AuditOptions aopts;
  aopts.workers = config.workers;
  aopts.with_nerve = false;
  const AuditReport report = audit(p.conf, aopts);
  const EnumerationOptions eopts{config.element_cap, config.workers};
  const Enumeration e = enumerate(p.conf, config.max_length, eopts);
  const LorentzCheck lorentz = check_lorentz(e, config.seed);
  out["max_length"] = config.max_length;
  out["matrix_growth"] = e.growth;
  out["matrix_elements"] = e.elements.size();
  out["truncated"] = e.truncated;
  out["lorentz_check"] = {{"ok", lorentz.ok}, {"checked", lorentz.checked}, {"seed", config.seed}};
  bool ok = lorentz.ok && !e.truncated;

  std::ostringstream table;
  table << "length,matrix";
  const auto pres = presentation_or_report(p.conf, report, out);
  if (pres) {
    const AbstractGrowth abs = abstract_growth(*pres, config.max_length, config.element_cap);
    const RelationCheck rel = verify_relations(p.conf, *pres, config.workers);
    std::vector<Word> matrix_words;
    for (const auto& el : e.elements) matrix_words.push_back(el.shortlex_word);
    out["abstract_growth"] = abs.growth;
    out["abstract_truncated"] = abs.truncated;
    out["growth_agrees"] = abs.growth == e.growth;
    out["shortlex_words_agree"] = abs.normal_forms == matrix_words;
    out["relations"] = io::to_json(rel);
    ok = ok && rel.ok && abs.growth == e.growth && !abs.truncated;
    table << ",abstract\n";
    for (std::size_t l = 0; l < e.growth.size(); ++l) {
      table << l << ',' << e.growth[l] << ',';
      if (l < abs.growth.size()) table << abs.growth[l];
      table << '\n';
    }
  } else {
    ok = false;
    table << '\n';
    for (std::size_t l = 0; l < e.growth.size(); ++l) table << l << ',' << e.growth[l] << '\n';
  }
  csv = table.str();
  return ok ? kPass : kViolation;
}

int cmd_tile(const RunConfig& config, const Pipeline& p, json& out) {
  const ExtendedPoint probe = parse_probe(config.probe);
  const OrbitTiling tiling = orbit_tiling(p.conf, config.max_length, probe, {config.element_cap, config.workers});
  out["max_length"] = config.max_length;
  out["tiling"] = io::to_json(tiling);
  return tiling.injective && tiling.leaves_domain && !tiling.truncated ? kPass : kViolation;
}

int cmd_quotient(const RunConfig& config, const Pipeline& p, json& out) {
  if (config.prime == 2 || config.prime == 3) throw Error("--prime must not be 2 or 3");
  AuditOptions aopts;
  aopts.workers = config.workers;
  aopts.with_nerve = false;
  const AuditReport report = audit(p.conf, aopts);
  const auto pres = presentation_or_report(p.conf, report, out);
  if (!pres) return kViolation;
  const FiniteQuotient q = congruence_quotient(p.conf, *pres, config.prime);
  out["quotient"] = io::to_json(q);
  std::set<std::vector<std::uint64_t>> distinct;
  bool nontrivial = true;
  for (const auto& img : q.images) {
    distinct.insert({img.entries.begin(), img.entries.end()});
    nontrivial = nontrivial && !img.is_identity();
  }
  out["generator_images_distinct"] = distinct.size() == q.images.size();
  out["generator_images_nontrivial"] = nontrivial;
  const TorsionCheck torsion = torsion_survival_check(p.conf, q, config.max_length, {config.element_cap, config.workers});
  out["max_length"] = config.max_length;
  out["torsion_survival"] = io::to_json(torsion);
  return q.homomorphism_ok && torsion.ok && !torsion.truncated ? kPass : kViolation;
}

int cmd_plinv(const RunConfig& config, json& out) {
  const CubeInversion ci = io::parse_cube_spec(read_json(config.input));
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<long> num(-64, 64);
  std::uniform_int_distribution<long> den(1, 16);
  std::vector<ExtendedPoint> samples;
  for (std::size_t k = 0; k < config.samples; ++k) {
    Vec4 v;
    for (auto& x : v) {
      x = Rational(Integer(num(rng)), Integer(den(rng)));
      x.canonicalize();
    }
    samples.emplace_back(add(ci.center, v));
  }
  samples.emplace_back(ci.center);
  samples.push_back(ExtendedPoint::infinity());
  std::vector<ExtendedPoint> boundary;
  std::uniform_int_distribution<int> axis(0, 3), side(0, 1);
  for (int k = 0; k < 20; ++k) {
    Vec4 u;
    for (auto& x : u) {
      x = Rational(Integer(num(rng)), Integer(64)) * ci.half_width;
      x.canonicalize();
    }
    u[axis(rng)] = side(rng) ? ci.half_width : Rational(-ci.half_width);
    boundary.emplace_back(add(ci.center, u));
  }
  samples.insert(samples.end(), boundary.begin(), boundary.end());
  const InvolutionCheck check = involution_check(ci, samples);
  bool boundary_fixed = std::all_of(boundary.begin(), boundary.end(),
                                    [&](const ExtendedPoint& b) { return pl_invert(ci, b) == b; });
  Vec4 probe = ci.center;
  probe[0] += ci.half_width * 2;
  probe[1] += ci.half_width / 3;
  const int jac = jacobian_sign(ci, probe);

  json failing = check.failing_sample ? io::to_json(*check.failing_sample) : json(nullptr);
  out["cube"] = {{"center", io::to_json(ci.center)}, {"half_width", io::to_json(ci.half_width)}};
  out["involution"] = {{"ok", check.ok}, {"checked", check.checked}, {"failing_sample", failing},
                       {"reason", check.reason}, {"seed", config.seed}};
  out["boundary_fixed"] = boundary_fixed;
  out["jacobian_sign"] = jac;
  out["orientation_reversing"] = jac < 0;
  return check.ok && boundary_fixed && jac < 0 ? kPass : kViolation;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

}  // namespace

bool is_known_command(const std::string& command) { return kCommands.count(command) != 0; }

RunResult run(const RunConfig& config) {
  RunResult result;
  try {
    if (!is_known_command(config.command)) throw Error("unknown command '" + config.command + "'");
    if (config.element_cap < 1) throw Error("--element-cap must be at least 1");
    if (config.grid_step <= 0) throw Error("--grid-step must be positive");
    json out = {{"command", config.command}};
    int status = kPass;
    if (config.command == "plinv") {
      status = cmd_plinv(config, out);
    } else {
      const Pipeline p = load(config);
      if (config.command == "generate") status = cmd_generate(config, p, out);
      else if (config.command == "audit") status = cmd_audit(config, p, out);
      else if (config.command == "nerve") status = cmd_nerve(config, p, out);
      else if (config.command == "enumerate") status = cmd_enumerate(config, p, out, result.csv);
      else if (config.command == "tile") status = cmd_tile(config, p, out);
      else status = cmd_quotient(config, p, out);
    }
    out["status"] = status;
    result.status = status;
    result.report = out.dump(2) + "\n";
    if (!config.output.empty()) write_file(config.output, result.report);
    if (!config.csv.empty() && !result.csv.empty()) write_file(config.csv, result.csv);
  } catch (const Error& e) {
    result.status = kInputError;
    result.report.clear();
    result.diagnostic = e.what();
  }
  return result;
}

}  // namespace refl4::cli
