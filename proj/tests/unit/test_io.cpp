#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../support.hpp"
#include "ugen/cli.hpp"
#include "ugen/json_io.hpp"

using namespace ugen;
using namespace ugen::testing;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ugen_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const std::string kData = UGEN_DATA_DIR;

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("state and channel JSON roundtrip") {
    std::mt19937_64 g(29);
    const TwoQubitState s = random_state(g);
    const TwoQubitState t = state_from_json(parse_json(to_json(s).dump()));
    CHECK((t.a() - s.a()).norm() < 1e-15);
    CHECK((t.T() - s.T()).norm() < 1e-15);
    const KrausChannel ch({haar2(g) / std::sqrt(2.0), haar2(g) / std::sqrt(2.0)});
    const KrausChannel back = channel_from_json(parse_json(to_json(ch).dump()));
    CHECK(max_abs(back.operators()[1] - ch.operators()[1]) < 1e-15);
    const Mat4c U = haar4(g);
    CHECK(max_abs(complex_matrix_from_json(complex_matrix_to_json(U), 4, 4) - U) < 1e-15);
  }

  TEST_CASE("case list roundtrip") {
    const auto cases = generate_cases(5, 4);
    const auto back = cases_from_json(parse_json(cases_to_json(cases).dump()));
    REQUIRE(back.size() == cases.size());
    for (std::size_t k = 0; k < cases.size(); ++k) {
      CHECK(back[k].id == cases[k].id);
      CHECK((back[k].state.T() - cases[k].state.T()).norm() < 1e-15);
      CHECK(back[k].retained == cases[k].retained);
    }
  }

  TEST_CASE("malformed JSON reports the position") {
    try {
      parse_json("{\n  \"a\": [1, 2,\n}");
      FAIL("expected an exception");
    } catch (const JsonFormatError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  }

  TEST_CASE("werner subcommand row count") {
    const fs::path dir = scratch_dir("werner");
    const CliRun r = run({"werner", "--lambda-steps", "21", "--out", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(count_lines(slurp(dir / "werner.csv")) == 22);
  }

  TEST_CASE("swapcnot and ncp subcommands") {
    const fs::path dir = scratch_dir("figs");
    CHECK(run({"swapcnot", "--theta-steps", "5", "--out", dir.string()}).code == kExitOk);
    CHECK(count_lines(slurp(dir / "swapcnot.csv")) == 6);
    CHECK(run({"ncp", "--p", "0.25,0.5", "--t-steps", "10", "--out", dir.string()}).code == kExitOk);
    CHECK(count_lines(slurp(dir / "ncp.csv")) == 21);
  }

  TEST_CASE("solve subcommand") {
    const fs::path dir = scratch_dir("solve");
    const CliRun bare = run({"solve", "--case", kData + "/bell_cnot.json", "--out", dir.string()});
    CHECK(bare.code == kExitOk);
    // Without a measurement the system output |+><+| cannot come from I/2 (x) zeta at all:
    // the controlled gate dephases the system, so no zeta reaches it.
    const Json bare_json = parse_json(slurp(dir / "solve.json"));
    CHECK(bare_json.at("feasibility") != "valid");
    CHECK(bare_json.at("feasibility") == "inconsistent");
    CHECK(bare_json.at("residual").get<double>() == doctest::Approx(1.0));
    const CliRun meas = run({"solve", "--case", kData + "/bell_cnot_measured.json", "--out", dir.string()});
    CHECK(meas.code == kExitOk);
    CHECK(parse_json(meas.out).at("feasibility") == "valid");
  }

  TEST_CASE("dilate subcommand") {
    const fs::path dir = scratch_dir("dilate");
    const CliRun r = run({"dilate", "--channel", kData + "/amplitude_damping.json", "--out", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(parse_json(r.out).at("unitarity_defect").get<double>() < 1e-10);
  }

  TEST_CASE("sweep subcommand is reproducible") {
    const fs::path a = scratch_dir("sweep_a"), b = scratch_dir("sweep_b");
    CHECK(run({"sweep", "--n", "8", "--seed", "7", "--out", a.string()}).code == kExitOk);
    CHECK(run({"--seed", "7", "sweep", "--n", "8", "--workers", "3", "--out", b.string()}).code == kExitOk);
    CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
    CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
    CHECK(count_lines(slurp(a / "sweep.csv")) == 9);
  }

  TEST_CASE("argument and input errors") {
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"werner", "--tol", "0.5"}).code == kExitUsage);
    CHECK(run({"werner", "--tol", "-1"}).code == kExitUsage);
    const fs::path dir = scratch_dir("bad");
    std::ofstream(dir / "bad.json") << "{ \"gate\": \"cnot\",\n  \"state\": [1, 2\n";
    const CliRun r = run({"solve", "--case", (dir / "bad.json").string(), "--out", dir.string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("line") != std::string::npos);
  }
}
