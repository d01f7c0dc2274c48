#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "berth/commands.hpp"
#include "berth/scenario.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace berth;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("berth_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

CommandOptions options(const std::string& scenario, const fs::path& out) {
  CommandOptions o;
  o.scenario = scenario;
  o.out_dir = out;
  o.quiet = true;
  return o;
}

}  // namespace

TEST_CASE("check accepts every built-in") {
  for (const auto& n : builtin_names()) {
    std::ostringstream out, err;
    CHECK(cmd_check(options(n, "."), out, err) == kExitOk);
    CHECK(out.str() == n + ": ok\n");
  }
}

TEST_CASE("unknown scenario is a usage error listing valid names") {
  std::ostringstream out, err;
  CHECK(cmd_check(options("atlantis", "."), out, err) == kExitUsage);
  CHECK(err.str().find("nanko_berth") != std::string::npos);
  CHECK(cmd_plan(options("atlantis", scratch("unknown")), out, err) == kExitUsage);
}

TEST_CASE("check reports validation failures with field paths") {
  const auto dir = scratch("check");
  auto j = json::parse(builtin_source("nanko_berth"));
  j["domain"]["W"] = 150.0;
  std::ofstream(dir / "narrow.json") << j.dump();
  std::ostringstream out, err;
  CHECK(cmd_check(options((dir / "narrow.json").string(), dir), out, err) == kExitValidation);
  CHECK(err.str().find("domain.W: ") != std::string::npos);

  auto c = json::parse(coefficients_to_json(builtin("nanko_berth").model.coeffs));
  c.erase("thruster");
  std::ofstream(dir / "coeffs.json") << c.dump();
  j = json::parse(builtin_source("nanko_berth"));
  j["coefficients"] = "coeffs.json";
  std::ofstream(dir / "nothruster.json") << j.dump();
  std::ostringstream out2, err2;
  CHECK(cmd_check(options((dir / "nothruster.json").string(), dir), out2, err2) == kExitValidation);
  CHECK(err2.str().find("coefficients.thruster") != std::string::npos);
}

TEST_CASE("plan is deterministic and its best schedule replays to the same J") {
  const auto a = scratch("plan_a");
  const auto b = scratch("plan_b");
  auto opt = options("straight_berth", a);
  opt.seed = 3;
  opt.budget = 400;
  opt.threads = 2;
  std::ostringstream out, err;
  REQUIRE(cmd_plan(opt, out, err) == kExitOk);
  opt.out_dir = b;
  opt.threads = 1;
  REQUIRE(cmd_plan(opt, out, err) == kExitOk);
  for (const char* f : {"trajectory.csv", "controls.csv", "convergence.csv", "best_x.json", "trajectory.svg"}) {
    INFO(f);
    CHECK(slurp(a / f) == slurp(b / f));
    CHECK(!slurp(a / f).empty());
  }
  const auto rep = json::parse(slurp(a / "report.json"));
  CHECK(rep["evaluations"].get<long>() <= 400);
  CHECK(rep["seed"].get<std::uint64_t>() == 3);

  const auto rows = csv_rows(a / "trajectory.csv");
  const std::vector<std::string> header{"t", "x0", "y0", "psi_deg", "u", "vm", "r_degps",
                                        "delta_deg", "np", "nbt", "nst", "inst_penalty"};
  CHECK(rows.front() == header);
  const double tf = rep["t_f"].get<double>();
  CHECK(std::stod(rows.back()[0]) == doctest::Approx(tf));
  CHECK(rows.size() == 1 + static_cast<std::size_t>(std::ceil(tf - 1e-9)) + 1);

  const auto c = scratch("replay");
  auto sim = options("straight_berth", c);
  sim.schedule = a / "best_x.json";
  REQUIRE(cmd_simulate(sim, out, err) == kExitOk);
  const auto replay = json::parse(slurp(c / "report.json"));
  CHECK(replay["objective"]["J"].get<double>() == rep["objective"]["J"].get<double>());
  CHECK(replay["feasible"] == rep["feasible"]);
  CHECK(slurp(c / "trajectory.csv") == slurp(a / "trajectory.csv"));
}

TEST_CASE("zero input at rest gives a constant trajectory") {
  const auto dir = scratch("rest");
  auto j = json::parse(builtin_source("straight_berth"));
  j["initial_state"] = {{"x0", -300.0}, {"u", 0.0}, {"y0", -80.0}, {"vm", 0.0}, {"psi", 0.4}, {"r", 0.0}};
  j["obstacles"] = json::array();
  j["objective"] = {{"w_U", 1.0}};  // the default derives from the (zero) initial speed
  std::ofstream(dir / "rest.json") << j.dump();
  const auto sc = load_scenario(dir / "rest.json");
  std::vector<double> X(sc.dimension(), 0.0);
  X[0] = 450.0;
  std::ofstream(dir / "zero.json") << json{{"X", X}}.dump();

  auto opt = options((dir / "rest.json").string(), dir / "out");
  opt.schedule = dir / "zero.json";
  std::ostringstream out, err;
  REQUIRE(cmd_simulate(opt, out, err) == kExitOk);
  const auto rows = csv_rows(dir / "out" / "trajectory.csv");
  REQUIRE(rows.size() == 452);
  for (std::size_t k = 2; k < rows.size(); ++k)
    for (std::size_t c = 1; c < rows[k].size(); ++c) CHECK(rows[k][c] == rows[1][c]);
}

TEST_CASE("simulate rejects malformed schedules") {
  const auto dir = scratch("badsched");
  std::ofstream(dir / "short.json") << json{{"X", std::vector<double>(7, 0.0)}}.dump();
  auto opt = options("straight_berth", dir);
  opt.schedule = dir / "short.json";
  std::ostringstream out, err;
  CHECK(cmd_simulate(opt, out, err) == kExitUsage);
  CHECK(err.str().find("4m+1 = 41") != std::string::npos);

  std::vector<double> X(41, 0.0);
  X[0] = 5000.0;
  std::ofstream(dir / "outside.json") << json{{"X", X}}.dump();
  opt.schedule = dir / "outside.json";
  CHECK(cmd_simulate(opt, out, err) == kExitUsage);
}

TEST_CASE("domain rings") {
  const auto dir = scratch("domain");
  auto opt = options("nanko_berth", dir);
  opt.speeds_kn = {0.0, 3.5, 6.0};
  std::ostringstream out, err;
  REQUIRE(cmd_domain(opt, out, err) == kExitOk);
  const auto rows = csv_rows(dir / "domain.csv");
  REQUIRE(rows.size() == 1 + 3 * 13);
  CHECK(std::stod(rows[1][2]) == doctest::Approx(112.5));
  CHECK(std::stod(rows[14][2]) == doctest::Approx(229.5));
  CHECK(std::stod(rows[27][2]) == doctest::Approx(346.5));
  CHECK(fs::exists(dir / "domain.svg"));

  opt.speeds_kn.clear();
  REQUIRE(cmd_domain(opt, out, err) == kExitOk);
  CHECK(csv_rows(dir / "domain.csv").size() == 1);

  opt.speeds_kn = {2.0, -1.0};
  CHECK(cmd_domain(opt, out, err) == kExitUsage);
}
