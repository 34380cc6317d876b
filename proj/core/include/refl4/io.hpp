#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "refl4/construction.hpp"
#include "refl4/coxeter.hpp"
#include "refl4/cubical.hpp"
#include "refl4/plfold.hpp"

namespace refl4::io {

using nlohmann::json;

// Input document: either a cubical complex ({"squares": [...]} with optional
// "extra_cells", or a bare array of squares) or explicit balls
// ({"balls": [{"center": [...], "radius_sq": "p/q"}]}).
struct InputDocument {
  std::optional<CubicalComplex2> complex;
  std::optional<BallConfiguration> balls;
};

InputDocument parse_input(const json& doc);
CubicalComplex2 parse_complex(const json& doc);
CubeInversion parse_cube_spec(const json& doc);
CubicalCell parse_cell(const json& cell, const std::string& where);
Rational parse_number(const json& value, const std::string& where);
Vec4 parse_vec4(const json& value, const std::string& where);

json to_json(const Rational& q);  // "p/q"
json to_json(const Vec4& v);
json decimal_shadow(const Vec4& v);
json to_json(const ExtendedPoint& p);
json to_json(const CubicalCell& c);
json to_json(const CubicalComplex2& k);
json to_json(const PairClass& pc);
json to_json(const BallConfiguration& conf);
json to_json(const CoxeterMatrix& m);
json to_json(const AuditReport& report);
json to_json(const MapCertificate& cert);
json to_json(const ClaimCheck& claim);
json to_json(const CoverageResult& coverage);
json to_json(const Simplex& s);
json to_json(const RelationCheck& check);
json to_json(const FiniteQuotient& q);
json to_json(const TorsionCheck& check);
json to_json(const OrbitTiling& tiling);
json to_json(const Word& w);

}  // namespace refl4::io
