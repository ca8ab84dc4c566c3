#include "ugen/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ugen {

namespace {

Json vec_to_json(const Vec3& v) { return Json::array({v(0), v(1), v(2)}); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonFormatError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw JsonFormatError(std::string(what) + " must be a number");
  return j.get<double>();
}

Vec3 vec_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw JsonFormatError(std::string(what) + " must be an array of 3 numbers");
  return Vec3(number(j[0], what), number(j[1], what), number(j[2], what));
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw JsonFormatError("complex entries must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json to_json(const TwoQubitState& s) {
  Json T = Json::array();
  for (int i = 0; i < 3; ++i) T.push_back(Json::array({s.T()(i, 0), s.T()(i, 1), s.T()(i, 2)}));
  return {{"a", vec_to_json(s.a())}, {"b", vec_to_json(s.b())}, {"T", T}};
}

Json to_json(const NonlocalParams& p) { return {{"alpha", vec_to_json(p.alpha)}}; }

Json to_json(const WeakMeasurement& m) { return {{"epsilon", m.epsilon()}, {"axis", vec_to_json(m.axis())}}; }

Json to_json(const EnvSolution& s) {
  return {{"zeta", vec_to_json(s.zeta)}, {"residual", s.residual_norm}, {"feasibility", to_string(s.feasibility)}};
}

Json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  }
  return out;
}

Eigen::MatrixXcd complex_matrix_from_json(const Json& j, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  if (j.is_array() && j.size() == static_cast<std::size_t>(rows) && j[0].is_array() &&
      j[0].size() == static_cast<std::size_t>(cols) && j[0][0].is_array()) {
    for (int r = 0; r < rows; ++r) {
      if (!j[static_cast<std::size_t>(r)].is_array() || j[static_cast<std::size_t>(r)].size() != static_cast<std::size_t>(cols)) {
        throw JsonFormatError("matrix rows have inconsistent length");
      }
      for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
    return m;
  }
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows * cols)) {
    throw JsonFormatError("expected a row-major list of " + std::to_string(rows * cols) + " complex entries");
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[static_cast<std::size_t>(r * cols + c)]);
  }
  return m;
}

Json to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const auto& k : ch.operators()) ops.push_back(complex_matrix_to_json(k));
  return {{"kraus", ops}};
}

Json to_json(const Dilation& d) { return {{"W", complex_matrix_to_json(d.W)}}; }

Json to_json(const SweepSummary& s) {
  return {{"n", s.n},
          {"seed", s.seed},
          {"tol", s.tol},
          {"retained", s.retained},
          {"resolved_unitary", s.resolved_unitary},
          {"resolved", s.resolved},
          {"unresolved", s.unresolved},
          {"stages", {{"axis_rotation", s.stage_axis}, {"general_su2", s.stage_su2}, {"kraus", s.stage_kraus}}},
          {"kraus_attempted", s.kraus_attempted},
          {"kraus_resolved", s.kraus_resolved},
          {"unitary_fidelity_min", s.unitary_fidelity_min},
          {"unitary_fidelity_mean", s.unitary_fidelity_mean},
          {"final_fidelity_min", s.final_fidelity_min},
          {"max_residual", s.max_residual}};
}

Json cases_to_json(const std::vector<CaseRecord>& cases) {
  Json arr = Json::array();
  for (const auto& c : cases) {
    arr.push_back({{"id", c.id}, {"alpha", vec_to_json(c.alpha.alpha)}, {"state", to_json(c.state)}});
  }
  return {{"cases", arr}};
}

TwoQubitState state_from_json(const Json& j) {
  const Vec3 a = vec_from_json(field(j, "a"), "a");
  const Vec3 b = vec_from_json(field(j, "b"), "b");
  const Json& Tj = field(j, "T");
  if (!Tj.is_array() || Tj.size() != 3) throw JsonFormatError("T must be 3 rows of 3 numbers");
  Mat3 T;
  for (int i = 0; i < 3; ++i) T.row(i) = vec_from_json(Tj[static_cast<std::size_t>(i)], "T row").transpose();
  return TwoQubitState(a, b, T);
}

NonlocalParams params_from_json(const Json& j) {
  NonlocalParams p;
  p.alpha = vec_from_json(field(j, "alpha"), "alpha");
  return p;
}

WeakMeasurement measurement_from_json(const Json& j) {
  return WeakMeasurement(number(field(j, "epsilon"), "epsilon"), vec_from_json(field(j, "axis"), "axis"));
}

EnvSolution env_solution_from_json(const Json& j) {
  EnvSolution s;
  s.zeta = vec_from_json(field(j, "zeta"), "zeta");
  s.residual_norm = number(field(j, "residual"), "residual");
  const std::string f = field(j, "feasibility").get<std::string>();
  if (f == "valid") {
    s.feasibility = Feasibility::Valid;
  } else if (f == "invalid") {
    s.feasibility = Feasibility::Invalid;
  } else if (f == "inconsistent") {
    s.feasibility = Feasibility::Inconsistent;
  } else {
    throw JsonFormatError("unknown feasibility \"" + f + "\"");
  }
  return s;
}

KrausChannel channel_from_json(const Json& j) {
  const Json& ops = field(j, "kraus");
  if (!ops.is_array() || ops.empty()) throw JsonFormatError("kraus must be a non-empty array");
  std::vector<Mat2c> out;
  for (const auto& k : ops) out.push_back(complex_matrix_from_json(k, 2, 2));
  return KrausChannel(std::move(out));
}

std::vector<CaseRecord> cases_from_json(const Json& j, double tol) {
  const Json& arr = j.is_array() ? j : field(j, "cases");
  if (!arr.is_array()) throw JsonFormatError("cases must be an array");
  std::vector<CaseRecord> out;
  int next = 0;
  for (const auto& c : arr) {
    const int id = c.contains("id") ? c.at("id").get<int>() : next;
    out.push_back(make_case(id, params_from_json(c), state_from_json(field(c, "state")), tol));
    next = id + 1;
  }
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw JsonFormatError("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                          ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonFormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

}  // namespace ugen
