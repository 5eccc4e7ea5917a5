// End-to-end checks of the command-line interface: exit-code contract,
// report determinism and the worked solve examples.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

namespace {

const std::string cli = LATCLIFF_CLI_PATH;

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

int run(const std::string& args) {
  const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string strip_wall(std::string text) {
  return std::regex_replace(text, std::regex{R"("wall_ms": [0-9.e+-]+)"}, "\"wall_ms\": 0");
}

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run("verify --dim 1 --trials 10 --seed 7") == 0);
  CHECK(run("verify --dim 0") == 2);
  CHECK(run("verify --dim 1 --trials 10 --inject-mutation leibniz-rhs") == 1);
  CHECK(run("verify --dim 1 --trials 10 --inject-mutation dagger-sign") == 1);
  CHECK(run("no-such-command") == 2);
}

TEST_CASE("verify reports are deterministic") {
  const std::string a = tmp("latcliff_verify_a.json");
  const std::string b = tmp("latcliff_verify_b.json");
  REQUIRE(run("verify --dim 2 --trials 25 --seed 11 --report " + a) == 0);
  REQUIRE(run("verify --dim 2 --trials 25 --seed 11 --report " + b) == 0);
  CHECK(strip_wall(slurp(a)) == strip_wall(slurp(b)));

  const auto j = nlohmann::json::parse(slurp(a));
  CHECK(j["schema"] == 1);
  CHECK(j["config"]["seed"] == 11);
  CHECK(j["suites"].size() == 7);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("solve-kg worked example") {
  const std::string field = tmp("latcliff_kg_field.csv");
  const std::string report = tmp("latcliff_kg_report.json");
  REQUIRE(run("solve-kg --dim 1 --h 1 --mass 1.4142135 --box -4:4 --out " + field +
              " --report " + report) == 0);

  // the field carries the 1, 2, 7, 26 pattern
  const std::string csv = slurp(field);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "k1,blade_mask,re,im");
  double vals[10] = {0};
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    const int k = std::stoi(cell);
    std::getline(ls, cell, ',');
    std::getline(ls, cell, ',');
    if (k >= 0) vals[k] = std::stod(cell);
  }
  CHECK(std::abs(vals[0] - 1.0) < 1e-5);
  CHECK(std::abs(vals[1] - 2.0) < 1e-5);
  CHECK(std::abs(vals[2] - 7.0) < 1e-5);
  CHECK(std::abs(vals[3] - 26.0) < 1e-5);

  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK(j["checks"][0]["max_residual"].get<double>() < 1e-9);
  std::filesystem::remove(field);
  std::filesystem::remove(report);
}

TEST_CASE("solve-dirac writes both components and the residual report") {
  const std::string out = tmp("latcliff_dirac.csv");
  const std::string report = tmp("latcliff_dirac.json");
  REQUIRE(run("solve-dirac --dim 2 --h 1 --mass 1 --box -4:4 --mass-term k --semantics s1 "
              "--out " + out + " --report " + report) == 0);
  CHECK(std::filesystem::exists(tmp("latcliff_dirac_plus.csv")));
  CHECK(std::filesystem::exists(tmp("latcliff_dirac_minus.csv")));

  const auto j = nlohmann::json::parse(slurp(report));
  bool saw_diagonal = false;
  for (const auto& c : j["checks"]) {
    if (c["id"] == "solve.dirac.coupled_diagonal") {
      saw_diagonal = true;
      CHECK(c["status"] == "report-only");
    } else {
      CHECK(c["status"] == "pass");
    }
  }
  CHECK(saw_diagonal);
  std::filesystem::remove(tmp("latcliff_dirac_plus.csv"));
  std::filesystem::remove(tmp("latcliff_dirac_minus.csv"));
  std::filesystem::remove(report);

  // the staggered dressing is never asserted, only recorded
  const std::string chi_args = " --dim 1 --mass 1 --mass-term chi --out " +
                               tmp("latcliff_chi.csv") + " --report " + tmp("latcliff_chi.json");
  CHECK(run("solve-dirac --convention shifted" + chi_args) == 0);
  CHECK(run("solve-dirac --convention static" + chi_args) == 0);
  std::filesystem::remove(tmp("latcliff_chi_plus.csv"));
  std::filesystem::remove(tmp("latcliff_chi_minus.csv"));
  std::filesystem::remove(tmp("latcliff_chi.json"));
}

TEST_CASE("solve-kg defaults write field.csv and report.json in the working directory") {
  const auto dir = std::filesystem::temp_directory_path() / "latcliff_default_out";
  std::filesystem::create_directories(dir);
  const std::string cmd = "cd " + dir.string() + " && " + cli +
                          " solve-kg --dim 1 --h 1 --mass 1.4142135 --box -4:4 > /dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(std::filesystem::exists(dir / "field.csv"));
  CHECK(std::filesystem::exists(dir / "report.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("dispersion zero reports") {
  const std::string zeros = tmp("latcliff_zeros.json");
  REQUIRE(run("dispersion --dim 1 --grid 64 --operator central --zeros --zeros-out " + zeros) ==
          0);
  auto j = nlohmann::json::parse(slurp(zeros));
  CHECK(j["count_identified"] == 2);
  CHECK(j["count_raw"] == 3);

  REQUIRE(run("dispersion --dim 2 --grid 64 --operator dh --zeros --zeros-out " + zeros) == 0);
  j = nlohmann::json::parse(slurp(zeros));
  CHECK(j["count_identified"] == 1);
  CHECK(j["note"].get<std::string>().find("2/h") != std::string::npos);
  std::filesystem::remove(zeros);

  const std::string curve = tmp("latcliff_curve.csv");
  REQUIRE(run("dispersion --dim 1 --grid 16 --operator kg --mass 1 --out " + curve) == 0);
  std::istringstream is(slurp(curve));
  std::string header;
  std::getline(is, header);
  CHECK(header == "xi1,magnitude");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == 16);
  std::filesystem::remove(curve);
}

TEST_CASE("opcalc verdicts and exit codes") {
  CHECK(run("opcalc --check leibniz --dim 3") == 0);
  CHECK(run("opcalc --check all --dim 2") == 0);
  CHECK(run("opcalc --check nilpotent --dim 1 --sign minus") == 0);
  CHECK(run("opcalc --check bogus") == 2);
}

TEST_CASE("io failures exit with code 3") {
  CHECK(run("solve-kg --dim 1 --out /nonexistent-dir/field.csv") == 3);
}
