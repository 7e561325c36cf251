#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "zdcm/error.hpp"
#include "zdcm/scenario.hpp"

using namespace zdcm;
using namespace zdcm::testing;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

Scenario figure1_at(double t, double x) {
  Scenario s;
  s.preset = "figure1";
  s.ts = {t};
  s.x_min = s.x_max = x;
  s.x_n = 1;
  return s;
}

}  // namespace

TEST_CASE("parsers") {
  CHECK(parse_complex("1.5,-2") == cplx(1.5, -2));
  CHECK(parse_complex("3") == cplx(3, 0));
  CHECK_THROWS_AS(parse_complex("1,2,3"), Error);
  CHECK_THROWS_AS(parse_complex("x"), Error);
  const auto l = parse_complex_list("0,-1 1.5,-0.7");
  REQUIRE(l.size() == 2);
  CHECK(l[1] == cplx(1.5, -0.7));
  const auto r = parse_real_list("0.4,0.2 0.1");
  CHECK(r == std::vector<double>{0.4, 0.2, 0.1});
}

TEST_CASE("scenario validation") {
  Scenario s;
  CHECK_THROWS_AS(scenario_u0(s), Error);
  s.preset = "figure1";
  CHECK(std::abs(scenario_u0(s)(0.0) - cplx(0, -1)) < 1e-15);
  s.preset = "unknown";
  CHECK_THROWS_AS(scenario_u0(s), Error);

  Scenario heavy;
  heavy.u0_num = {cplx(1.5)};
  heavy.u0_poles = {cplx(0, -1)};
  try {
    scenario_u0(heavy);
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigInvalid);
  }
  heavy.sign = SignMode::defocusing;
  CHECK_NOTHROW(scenario_u0(heavy));

  Scenario bad_pole;
  bad_pole.u0_num = {cplx(1.0)};
  bad_pole.u0_poles = {cplx(0, 1)};
  try {
    scenario_u0(bad_pole);
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigInvalid);
  }

  Scenario grid;
  CHECK(scenario_x_grid(grid).size() == 201);
  grid.x_n = 0;
  CHECK_THROWS_AS(scenario_x_grid(grid), Error);
}

TEST_CASE("zd command: benchmark row") {
  std::ostringstream csv, log;
  CHECK(run_zd(figure1_at(2.0, -3.0), csv, log) == kExitOk);
  const auto rows = csv_rows(csv.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"t", "x", "re", "im", "modulus", "phase", "ell", "route", "excluded_reason"});
  CHECK(std::abs(std::stod(rows[1][2]) + 0.5) < 1e-9);
  CHECK(std::abs(std::stod(rows[1][3])) < 1e-9);
  CHECK(rows[1][6] == "1");
  CHECK(rows[1][7] == "rational");
}

TEST_CASE("zd command: t = 0 reproduces u0, route all agrees") {
  Scenario s;
  s.preset = "figure1";
  s.ts = {0.0};
  s.x_n = 21;
  std::ostringstream csv, log;
  CHECK(run_zd(s, csv, log) == kExitOk);
  const auto rows = csv_rows(csv.str());
  REQUIRE(rows.size() == 22);
  const auto u = scenario_u0(s);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][1]);
    CHECK(std::abs(cplx(std::stod(rows[i][2]), std::stod(rows[i][3])) - eval(u, x)) < 1e-14);
  }

  s.ts = {2.0};
  s.route = "all";
  std::ostringstream csv2, log2;
  CHECK(run_zd(s, csv2, log2) == kExitOk);
  CHECK(csv_rows(csv2.str()).size() == 1 + 3 * 21);
  CHECK(log2.str().find("max_discrepancy t=2") != std::string::npos);

  s.route = "fastest";
  std::ostringstream sink;
  CHECK_THROWS_AS(run_zd(s, sink, sink), Error);
}

TEST_CASE("zd command: nudging is logged") {
  Scenario s = figure1_at(2.0, -3.0);
  const auto cv = critical_values(scenario_u0(s), 2.0, SignMode::focusing, default_window(scenario_u0(s)));
  s.x_min = s.x_max = cv[0];
  std::ostringstream csv, log;
  run_zd(s, csv, log);
  CHECK(csv_rows(csv.str())[1].back() == "near_critical");
  s.nudge = true;
  std::ostringstream csv2, log2;
  CHECK(run_zd(s, csv2, log2) == kExitOk);
  CHECK(log2.str().find("nudged") != std::string::npos);
}

TEST_CASE("shock command") {
  Scenario s;
  s.preset = "figure1";
  s.ts = {0.25, 2.0};
  s.x_n = 81;
  std::ostringstream out, log;
  CHECK(run_shock(s, out, log) == kExitOk);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(std::abs(j["t_star"].get<double>() - 4.0 / (3.0 * std::sqrt(3.0))) < 1e-4);
  CHECK(j["times"][0]["critical_values"].empty());
  CHECK(j["times"][0]["ell_histogram"].size() == 1);
  CHECK(j["times"][0]["ell_histogram"]["0"] == 81);
  const auto cv = j["times"][1]["critical_values"].get<std::vector<double>>();
  REQUIRE(cv.size() == 2);
  for (const auto& p : j["times"][1]["ell_profile"]) {
    if (p["ell"].is_null()) continue;
    const double x = p["x"];
    CHECK(p["ell"].get<int>() == (x > cv[0] && x < cv[1] ? 1 : 0));
  }
}

TEST_CASE("sweep command") {
  Scenario s;
  s.preset = "figure1";
  s.ts = {1.0};
  s.modes = 1024;
  std::ostringstream csv, meta, log;
  CHECK_THROWS_AS(run_sweep(s, csv, meta, log), Error);
  s.eps_list = {0.4, 0.2, 0.1};
  CHECK(run_sweep(s, csv, meta, log) == kExitOk);
  const auto rows = csv_rows(csv.str());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"eps", "err_0", "err_1", "err_2", "mass_drift"});
  for (std::size_t c = 1; c <= 3; ++c) {
    CHECK(std::stod(rows[2][c]) < std::stod(rows[1][c]));
    CHECK(std::stod(rows[3][c]) < std::stod(rows[2][c]));
  }
  for (std::size_t r = 1; r < 4; ++r) CHECK(std::stod(rows[r][4]) <= 1e-8);
  const auto m = nlohmann::json::parse(meta.str());
  CHECK(m["runs"].size() == 3);
}
