#pragma once

// JSON forms of the public value types.
//
//   TwoQubitState   {"a": [3], "b": [3], "T": [[3],[3],[3]]}
//   NonlocalParams  {"alpha": [3]}
//   WeakMeasurement {"epsilon": r, "axis": [3]}
//   EnvSolution     {"zeta": [3], "residual": r, "feasibility": "valid"|"invalid"|"inconsistent"}
//   KrausChannel    {"kraus": [[[re,im] x4], ...]}   row-major 2x2 blocks
//   4x4 operators   [[re,im] x16] row-major
//   Case list       {"cases": [{"id": n, "alpha": [3], "state": {...}}, ...]}

#include <string>
#include <vector>

#include <json.hpp>

#include "ugen/channel.hpp"
#include "ugen/matching.hpp"
#include "ugen/measurement.hpp"
#include "ugen/search.hpp"

namespace ugen {

using Json = nlohmann::json;

/// Malformed documents; the message carries the line and column.
class JsonFormatError : public Error {
 public:
  using Error::Error;
};

Json to_json(const TwoQubitState& s);
Json to_json(const NonlocalParams& p);
Json to_json(const WeakMeasurement& m);
Json to_json(const EnvSolution& s);
Json to_json(const KrausChannel& ch);
Json to_json(const Dilation& d);
Json to_json(const SweepSummary& s);
Json cases_to_json(const std::vector<CaseRecord>& cases);

Json complex_matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd complex_matrix_from_json(const Json& j, int rows, int cols);

TwoQubitState state_from_json(const Json& j);
NonlocalParams params_from_json(const Json& j);
WeakMeasurement measurement_from_json(const Json& j);
EnvSolution env_solution_from_json(const Json& j);
KrausChannel channel_from_json(const Json& j);
std::vector<CaseRecord> cases_from_json(const Json& j, double tol = kDefaultMatchTol);

/// Parse text; syntax errors become JsonFormatError with line/column.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

/// "%.12g"
std::string format_number(double x);

}  // namespace ugen
