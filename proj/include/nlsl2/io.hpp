#pragma once

#include <json.hpp>
#include <span>
#include <string>

#include "nlsl2/algver.hpp"
#include "nlsl2/dynsys.hpp"
#include "nlsl2/hwsolver.hpp"
#include "nlsl2/qmap.hpp"
#include "nlsl2/repbuilder.hpp"

namespace nlsl2::io {

using json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of a double ("nan", "inf", "-inf" for non-finite values).
std::string format_double(double v);

// {"kind": "linear"|"quadratic"|"polynomial", "r", "s", "t", "coeffs"}
json to_json(const CharFunc& f);
/// Rejects unknown keys, missing parameters and kind/degree mismatches with SchemaError.
CharFunc charfunc_from_json(const json& j);

json to_json(const CycleReport& c);
json to_json(std::span<const CycleReport> cycles);
json to_json(const DeltaClassification& c);
json to_json(const AllowedRegion& r);
json to_json(const CutSolution& s);
json to_json(const WeightLadder& l);
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// {"function", "mode", "d", "hermitian_pair", "j0", "jplus", "jminus", "casimir"}
json to_json(const Representation& rep);
Representation representation_from_json(const json& j);

json to_json(const RelationReport& rep);
json to_json(const ResidualTriple& t);

/// Cobweb segments as CSV with header "x0,step,x,y,kind": one row per segment end point;
/// the trace starts at (x0, x0).
std::string cobweb_csv(double x0, std::span<const Segment> segments);

/// Plain-text aligned dump of a matrix.
std::string format_matrix(const Matrix& m, int precision = 6);

}  // namespace nlsl2::io
