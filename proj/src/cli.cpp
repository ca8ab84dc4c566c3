#include "ugen/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ugen/analytic.hpp"
#include "ugen/json_io.hpp"
#include "ugen/min_epsilon.hpp"
#include "ugen/ncp.hpp"

namespace ugen {

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  double tol = kDefaultMatchTol;
  int workers = 1;
  std::string out_dir = ".";
  bool strict = false;
  bool tii = false;

  int lambda_steps = 21;
  bool werner_numeric = false;
  int theta_steps = 25;
  std::vector<double> ps{0.25, 0.5, 0.75};
  int t_steps = 50;
  int n = 1000;
  std::string cases_in;
  std::string cases_out;
  std::string case_file;
  std::string channel_file;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::filesystem::path output_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return std::filesystem::path(cfg.out_dir) / name;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p);
  if (!f) throw Error("cannot write " + p.string());
  f << text;
}

std::string dump(const Json& j) {
  // Serialize doubles with 12 significant digits.
  std::function<Json(const Json&)> round = [&](const Json& v) -> Json {
    if (v.is_number_float()) return Json::parse(format_number(v.get<double>()));
    if (v.is_array()) {
      Json a = Json::array();
      for (const auto& e : v) a.push_back(round(e));
      return a;
    }
    if (v.is_object()) {
      Json o = Json::object();
      for (auto it = v.begin(); it != v.end(); ++it) o[it.key()] = round(it.value());
      return o;
    }
    return v;
  };
  return round(j).dump(2) + "\n";
}

int cmd_werner(const RunConfig& cfg, std::ostream& out) {
  if (cfg.lambda_steps < 2) throw UsageError("--lambda-steps must be at least 2");
  std::ostringstream os;
  os << "lambda,epsilon_min,fidelity,n_x,n_y,n_z" << (cfg.werner_numeric ? ",epsilon_numeric" : "") << "\n";
  for (int k = 0; k < cfg.lambda_steps; ++k) {
    const double l = static_cast<double>(k) / (cfg.lambda_steps - 1);
    const WernerSolution w = werner_epsilon_min(l);
    os << format_number(l) << ',' << format_number(w.epsilon_min) << ',' << format_number(w.fidelity) << ','
       << format_number(w.axis(0)) << ',' << format_number(w.axis(1)) << ',' << format_number(w.axis(2));
    if (cfg.werner_numeric) {
      MinEpsilonOptions opt;
      opt.match_tol = cfg.tol;
      os << ',' << format_number(minimize_epsilon(cnot(), werner_state(l), opt).epsilon);
    }
    os << '\n';
  }
  write_text(output_path(cfg, "werner.csv"), os.str());
  out << "wrote " << output_path(cfg, "werner.csv").string() << "\n";
  return kExitOk;
}

int cmd_swapcnot(const RunConfig& cfg, std::ostream& out) {
  if (cfg.theta_steps < 2) throw UsageError("--theta-steps must be at least 2");
  std::vector<double> thetas;
  for (int k = 0; k < cfg.theta_steps; ++k) thetas.push_back(std::numbers::pi / 2.0 * k / (cfg.theta_steps - 1));
  const auto pts = swapcnot_ry_sweep(thetas, cfg.workers);
  std::ostringstream os;
  os << "theta,epsilon_min,n_x,n_y,n_z\n";
  bool monotone = true;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    os << format_number(p.theta) << ',' << format_number(p.epsilon_min) << ',' << format_number(p.axis(0)) << ','
       << format_number(p.axis(1)) << ',' << format_number(p.axis(2)) << '\n';
    if (k > 0 && p.epsilon_min > pts[k - 1].epsilon_min + cfg.tol) monotone = false;
  }
  write_text(output_path(cfg, "swapcnot.csv"), os.str());
  out << "wrote " << output_path(cfg, "swapcnot.csv").string() << "\n";
  return (cfg.strict && !monotone) ? kExitUnresolved : kExitOk;
}

int cmd_ncp(const RunConfig& cfg, std::ostream& out) {
  if (cfg.t_steps < 1) throw UsageError("--t-steps must be positive");
  std::ostringstream os;
  os << "p,t,closed_form,numeric_min_eig,general_closed_form,mitigated_min_eig\n";
  for (double p : cfg.ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--p values must lie in [0, 1]");
    for (int k = 1; k <= cfg.t_steps; ++k) {
      const double t = std::numbers::pi / 2.0 * k / cfg.t_steps;
      os << format_number(p) << ',' << format_number(t) << ',' << format_number(min_negative_eigenvalue_closed_form(t))
         << ',' << format_number(realigned_spectrum(dynamical_matrix(p, t))(0)) << ','
         << format_number(min_eigenvalue_general_p(p, t)) << ','
         << format_number(realigned_spectrum(mitigated_dynamical_matrix(p, t))(0)) << '\n';
    }
  }
  write_text(output_path(cfg, "ncp.csv"), os.str());
  out << "wrote " << output_path(cfg, "ncp.csv").string() << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 1) throw UsageError("--n must be positive");
  GenerateOptions gen;
  gen.random_diagonal = cfg.tii;
  const std::vector<CaseRecord> cases =
      cfg.cases_in.empty() ? generate_cases(cfg.n, cfg.seed, gen, cfg.tol, cfg.workers)
                           : cases_from_json(read_json_file(cfg.cases_in), cfg.tol);
  if (!cfg.cases_out.empty()) write_text(cfg.cases_out, dump(cases_to_json(cases)));
  const SweepReport rep = sweep_cases(cases, cfg.seed, cfg.tol, cfg.workers);
  write_text(output_path(cfg, "sweep.csv"), sweep_csv(rep));
  write_text(output_path(cfg, "summary.json"), dump(to_json(rep.summary)));
  const SweepSummary& s = rep.summary;
  out << "cases " << s.n << ", retained " << s.retained << ", resolved " << s.resolved << ", unresolved "
      << s.unresolved << ", min unitary fidelity " << format_number(s.unitary_fidelity_min) << "\n";
  return (cfg.strict && s.unresolved > 0) ? kExitUnresolved : kExitOk;
}

Mat4c gate_from_json(const Json& j) {
  if (j.contains("U")) return complex_matrix_from_json(j.at("U"), 4, 4);
  if (j.contains("alpha")) return nonlocal_unitary(params_from_json(j));
  const std::string g = j.value("gate", std::string("cnot"));
  if (g == "cnot") return cnot();
  if (g == "swap") return swap_gate();
  if (g == "swap_cnot") return swap_cnot();
  if (g == "identity") return Mat4c::Identity();
  throw JsonFormatError("unknown gate \"" + g + "\"");
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Json j = read_json_file(cfg.case_file);
  const Mat4c U = gate_from_json(j);
  TwoQubitState state = j.contains("rho") ? decompose(complex_matrix_from_json(j.at("rho"), 4, 4))
                                          : state_from_json(j.contains("state") ? j.at("state") : j);
  if (j.contains("measurement")) {
    state = apply_closed_form(state, measurement_from_json(j.at("measurement")), Outcome::Plus).post_state;
  }
  Json result = to_json(solve_env(U, state, cfg.tol));
  result["min_eigenvalue"] = is_valid(state).min_eigenvalue;
  const std::string text = dump(result);
  write_text(output_path(cfg, "solve.json"), text);
  out << text;
  return kExitOk;
}

int cmd_dilate(const RunConfig& cfg, std::ostream& out) {
  const KrausChannel ch = channel_from_json(read_json_file(cfg.channel_file));
  const Dilation d = stinespring_dilate(ch);
  Json result = to_json(d);
  result["unitarity_defect"] = (d.W.adjoint() * d.W - Mat4c::Identity()).cwiseAbs().maxCoeff();
  result["completeness_defect"] = ch.completeness_defect();
  const std::string text = dump(result);
  write_text(output_path(cfg, "dilation.json"), text);
  out << text;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"U-generation analysis of correlated two-qubit dynamics", "ugen"};
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "RNG seed")->envname("UGEN_SEED");
  app.add_option("--tol", cfg.tol, "matching residual tolerance, in (0, 1e-3]")->envname("UGEN_TOL");
  app.add_option("--workers", cfg.workers, "worker threads")->envname("UGEN_WORKERS")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out_dir, "output directory")->envname("UGEN_OUT");
  app.add_flag("--strict", cfg.strict, "nonzero exit when an empirical claim fails")->envname("UGEN_STRICT");
  app.add_flag("--tii", cfg.tii, "draw diagonal correlations uniformly in [-1, 1]")->envname("UGEN_TII");

  auto* werner = app.add_subcommand("werner", "Werner-state minimum strength and fidelity curve");
  werner->add_option("--lambda-steps", cfg.lambda_steps, "grid points on [0, 1]");
  werner->add_flag("--numeric", cfg.werner_numeric, "also run the numerical minimization");
  auto* swapcnot = app.add_subcommand("swapcnot", "SWAP.CNOT minimum strength versus R_y(theta)");
  swapcnot->add_option("--theta-steps", cfg.theta_steps, "grid points on [0, pi/2]");
  auto* ncp = app.add_subcommand("ncp", "realigned spectra of the correlated CNOT family");
  ncp->add_option("--p", cfg.ps, "list of p values")->delimiter(',');
  ncp->add_option("--t-steps", cfg.t_steps, "time points in (0, pi/2]");
  auto* sw = app.add_subcommand("sweep", "randomized repair campaign");
  sw->add_option("--n", cfg.n, "number of cases");
  sw->add_option("--cases", cfg.cases_in, "replay a case-list JSON instead of generating");
  sw->add_option("--export-cases", cfg.cases_out, "write the case list as JSON");
  auto* solve = app.add_subcommand("solve", "solve the matching condition for one case");
  solve->add_option("--case", cfg.case_file, "case JSON")->required();
  auto* dilate = app.add_subcommand("dilate", "one-ancilla dilation of a two-term channel");
  dilate->add_option("--channel", cfg.channel_file, "channel JSON")->required();
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!(cfg.tol > 0.0 && cfg.tol <= 1e-3)) throw UsageError("--tol must lie in (0, 1e-3]");
    if (werner->parsed()) return cmd_werner(cfg, out);
    if (swapcnot->parsed()) return cmd_swapcnot(cfg, out);
    if (ncp->parsed()) return cmd_ncp(cfg, out);
    if (sw->parsed()) return cmd_sweep(cfg, out);
    if (solve->parsed()) return cmd_solve(cfg, out);
    if (dilate->parsed()) return cmd_dilate(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const JsonFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidState& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ugen
