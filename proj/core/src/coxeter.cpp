#include "refl4/coxeter.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <unordered_set>

#include "refl4/parallel.hpp"

namespace refl4 {

namespace {

constexpr std::size_t kFrontierChunk = 2048;

}  // namespace

std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w[i]);
  }
  return s;
}

GroupPresentation presentation_from_audit(const AuditReport& report) {
  if (!report.violations.empty()) {
    std::string msg = "audit has non-Coxeter pairs:";
    for (const auto& v : report.violations)
      msg += " (" + std::to_string(v.i) + "," + std::to_string(v.j) + ": " + v.reason + ")";
    throw Error(msg);
  }
  return {report.ball_count, report.coxeter_matrix};
}

RelationCheck verify_relations(const BallConfiguration& conf, const GroupPresentation& pres, unsigned workers) {
  if (pres.generator_count != conf.size()) throw Error("presentation and configuration sizes differ");
  const ReflectionGenerators gens(conf);
  struct Relation {
    std::size_t i, j;
    int m;
  };
  std::vector<Relation> relations;
  for (std::size_t i = 0; i < conf.size(); ++i) {
    relations.push_back({i, i, 1});
    for (std::size_t j = i + 1; j < conf.size(); ++j) {
      const int m = pres.coxeter_matrix.at(i, j);
      if (m != CoxeterMatrix::kInfinity) relations.push_back({i, j, m});
    }
  }
  std::vector<std::optional<RelationFailure>> results(relations.size());
  parallel_for(relations.size(), workers, [&](std::size_t k) {
    const Relation& rel = relations[k];
    // R_i R_i for the involution check; its expected order as R_i is 2.
    const MoebiusMatrix base = rel.i == rel.j ? gens.matrix(rel.i) : gens.matrix(rel.i) * gens.matrix(rel.j);
    const int expected = rel.i == rel.j ? 2 : rel.m;
    MoebiusMatrix p = base;
    std::optional<int> first;
    for (int e = 1; e <= expected; ++e) {
      if (p.is_identity()) {
        first = e;
        break;
      }
      p = p * base;
    }
    if (first == expected) return;
    RelationFailure f{rel.i, rel.j, expected, first, {}};
    const std::string pair = "(" + std::to_string(rel.i) + "," + std::to_string(rel.j) + ")";
    f.message = first ? pair + ": identity already at power " + std::to_string(*first) + " < " + std::to_string(expected)
                      : pair + ": power " + std::to_string(expected) + " is not the identity";
    results[k] = std::move(f);
  });
  RelationCheck check;
  check.relations_checked = relations.size();
  for (auto& r : results) {
    if (!r) continue;
    check.ok = false;
    check.failures.push_back(std::move(*r));
  }
  return check;
}

ReflectionGenerators::ReflectionGenerators(const BallConfiguration& conf) {
  for (const auto& b : conf.balls()) {
    matrices_.push_back(reflection_matrix(b.sphere));
    InversiveVector s = sphere_to_inversive(b.sphere);
    const Rational k = Rational(2) / b.sphere.radius_sq;
    InversiveVector row;
    for (std::size_t i = 0; i < 6; ++i) row[i] = (i == 5 ? -k : k) * s[i];
    sigma_.push_back(std::move(s));
    row_.push_back(std::move(row));
  }
}

MoebiusMatrix ReflectionGenerators::right_multiply(const MoebiusMatrix& m, std::size_t g) const {
  const InversiveVector y = m * sigma_[g];
  MoebiusMatrix out = m;
  Rational t;
  for (std::size_t i = 0; i < 6; ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < 6; ++j) {
      if (row_[g][j] == 0) continue;
      t = y[i] * row_[g][j];
      out(i, j) -= t;
    }
  }
  return out;
}

MoebiusMatrix ReflectionGenerators::product(const Word& w) const {
  MoebiusMatrix m = MoebiusMatrix::identity();
  for (auto g : w) m = right_multiply(m, g);
  return m;
}

Enumeration enumerate(const BallConfiguration& conf, std::size_t max_length, const EnumerationOptions& options) {
  if (options.element_cap < 1) throw Error("element cap must be at least 1");
  const ReflectionGenerators gens(conf);
  const std::size_t n = gens.size();
  Enumeration out;
  std::vector<std::size_t> hashes;

  auto hash_of = [&](std::size_t idx) { return hashes[idx]; };
  auto equal = [&](std::size_t a, std::size_t b) { return out.elements[a].key == out.elements[b].key; };
  std::unordered_set<std::size_t, decltype(hash_of), decltype(equal)> seen(1024, hash_of, equal);

  auto try_insert = [&](Word word, std::string key) {
    hashes.push_back(std::hash<std::string>{}(key));
    out.elements.push_back({std::move(word), std::move(key)});
    if (!seen.insert(out.elements.size() - 1).second) {
      out.elements.pop_back();
      hashes.pop_back();
      return false;
    }
    return true;
  };

  try_insert({}, MoebiusMatrix::identity().canonical_key());
  out.growth.push_back(1);
  std::size_t level_begin = 0, level_end = 1;

  for (std::size_t length = 1; length <= max_length && !out.truncated; ++length) {
    std::size_t added = 0;
    for (std::size_t chunk = level_begin; chunk < level_end && !out.truncated; chunk += kFrontierChunk) {
      const std::size_t chunk_end = std::min(level_end, chunk + kFrontierChunk);
      const std::size_t count = chunk_end - chunk;
      std::vector<std::string> keys(count * n);
      parallel_for(count, options.workers, [&](std::size_t f) {
        const GroupElement& e = out.elements[chunk + f];
        const MoebiusMatrix m = e.matrix();
        for (std::size_t g = 0; g < n; ++g) {
          if (!e.shortlex_word.empty() && e.shortlex_word.back() == g) continue;
          keys[f * n + g] = gens.right_multiply(m, g).canonical_key();
        }
      });
      for (std::size_t f = 0; f < count && !out.truncated; ++f) {
        for (std::size_t g = 0; g < n; ++g) {
          std::string& key = keys[f * n + g];
          if (key.empty()) continue;
          Word w = out.elements[chunk + f].shortlex_word;
          w.push_back(static_cast<std::uint16_t>(g));
          if (try_insert(std::move(w), std::move(key))) ++added;
          if (out.elements.size() >= options.element_cap) {
            out.truncated = true;
            break;
          }
        }
      }
    }
    if (added == 0) break;  // the group is exhausted
    out.growth.push_back(added);
    level_begin = level_end;
    level_end = out.elements.size();
  }
  return out;
}

LorentzCheck check_lorentz(const Enumeration& e, std::uint64_t seed, double sample_fraction, std::size_t full_length) {
  LorentzCheck check;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution pick(sample_fraction);
  for (const auto& el : e.elements) {
    const bool sampled = pick(rng);
    if (el.length() > full_length && !sampled) continue;
    ++check.checked;
    if (!el.matrix().is_lorentz()) {
      check.ok = false;
      check.failure = el.shortlex_word;
      break;
    }
  }
  return check;
}

OrbitTiling orbit_tiling(const BallConfiguration& conf, std::size_t max_length, const ExtendedPoint& probe,
                         const EnumerationOptions& options) {
  if (!probe.is_infinity()) {
    for (std::size_t i = 0; i < conf.size(); ++i)
      if (conf.sphere(i).contains(probe.coords()))
        throw Error("probe " + probe.to_string() + " lies in closed ball " + std::to_string(i));
  }
  OrbitTiling tiling;
  tiling.probe = probe;
  Enumeration e = enumerate(conf, max_length, options);
  tiling.truncated = e.truncated;
  std::vector<std::optional<ExtendedPoint>> images(e.elements.size());
  parallel_for(e.elements.size(), options.workers,
               [&](std::size_t k) { images[k] = apply_to_point(e.elements[k].matrix(), probe); });

  std::set<ExtendedPoint> seen;
  constexpr std::size_t kMaxProblems = 20;
  auto problem = [&](std::string msg) {
    if (tiling.problems.size() < kMaxProblems) tiling.problems.push_back(std::move(msg));
  };
  for (std::size_t k = 0; k < e.elements.size(); ++k) {
    const ExtendedPoint& img = *images[k];
    const GroupElement& el = e.elements[k];
    if (!seen.insert(img).second) {
      tiling.injective = false;
      problem("image " + img.to_string() + " repeated by word [" + word_to_string(el.shortlex_word) + "]");
    }
    if (k > 0) {
      const bool inside = !img.is_infinity() && std::any_of(conf.balls().begin(), conf.balls().end(), [&](const Ball& b) {
        return b.sphere.contains_strictly(img.coords());
      });
      if (!inside) {
        tiling.leaves_domain = false;
        problem("image " + img.to_string() + " of word [" + word_to_string(el.shortlex_word) + "] is in no open ball");
      }
    }
    tiling.points.push_back({std::move(e.elements[k]), img});
  }
  return tiling;
}

}  // namespace refl4
