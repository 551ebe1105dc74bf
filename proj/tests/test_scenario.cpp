#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hopspin/scenario.hpp"

using namespace hopspin;

namespace {

const char* kBasic = R"({
  "model": {"n_sites": 2, "eta": 10.0, "preset": "xy"},
  "initial": {"site": 1, "e_spin": "up", "static": "down-down"},
  "run": {"hamiltonian": "exact", "t_max": 5.0, "n_points": 51}
})";

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : split(csv, '\n')) rows.push_back(split(line, ','));
  return rows;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  REQUIRE(res.ec == std::errc{});
  REQUIRE(res.ptr == s.data() + s.size());
  return v;
}

std::string config_error(std::string_view text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("parse_config defaults and fields") {
  const auto c = parse_config(kBasic);
  CHECK(c.model.n_sites == 2);
  CHECK(c.model.eta == 10.0);
  CHECK(c.model.j_xy == 1.0);
  CHECK(c.model.j_z == 0.0);
  CHECK(c.run.grid.n_points == 51);
  CHECK(c.run.effective == EffectiveVariant::two_site);
  CHECK(c.output.columns == all_columns(2));
  CHECK_FALSE(c.output.path.has_value());

  const auto h = parse_config(R"({"model": {"n_sites": 3, "eta": 20, "preset": "heisenberg", "j_xy": 0.5}})");
  CHECK(h.model.j_z == 1.0);
  CHECK(h.run.grid.t_max == 30.0);
  CHECK(h.run.grid.n_points == 2001);
  CHECK(h.run.effective == EffectiveVariant::three_site_middle_start);
  CHECK(h.run.ratios == std::vector<double>{1.0, 2.0, 10.0, 100.0});
  CHECK(h.initial.site == 1);

  const auto cols = parse_config(R"({"model": {"n_sites": 3, "eta": 1, "preset": "xy"},
      "output": {"columns": ["F2", "P0", "t", "P1"]}})");
  CHECK(cols.output.columns == std::vector<Column>{Column::t, Column::P1, Column::P0, Column::F2});
}

TEST_CASE("parse_config errors") {
  CHECK(config_error(R"({"model": {"n_sites": 4, "eta": 1, "preset": "xy"}})").find("n_sites") !=
        std::string::npos);
  const auto heis = config_error(R"({"model": {"n_sites": 2, "eta": 1, "preset": "heisenberg",
                                    "j_xy": 1.0, "j_z": 1.0}})");
  CHECK(heis.find("model.j_z") != std::string::npos);
  CHECK(heis.find("j_z = 2 * j_xy") != std::string::npos);
  CHECK(config_error(R"({"model": {"n_sites": 2, "eta": 1, "preset": "xy", "jz": 0}})").find("model.jz") !=
        std::string::npos);
  CHECK(config_error(R"({"model": {"n_sites": 2, "eta": 1, "preset": "xy"}, "extra": 1})").find("extra") !=
        std::string::npos);
  CHECK(config_error(R"({"model": {"n_sites": 2, "eta": -1, "preset": "xy"}})").find("model.eta") !=
        std::string::npos);
  CHECK(config_error(R"({"model": {"n_sites": 2, "eta": 1, "preset": "xy"}, "initial": {"site": 0}})")
            .find("initial.site") != std::string::npos);
  CHECK(config_error(R"({"model": {"n_sites": 2, "eta": 1, "preset": "xy"},
                         "run": {"hamiltonian": "three_site_projector"}})")
            .find("run") != std::string::npos);
  CHECK(config_error(R"({"model": {"n_sites": 2, "eta": 1, "preset": "xy"},
                         "output": {"columns": ["P0"]}})")
            .find("P0") != std::string::npos);
  CHECK(config_error(R"({"model": {"n_sites": 2, "eta": 1, "preset": "xy"}, "run": {"n_points": 1}})")
            .find("n_points") != std::string::npos);
  CHECK(config_error("{}").find("model") != std::string::npos);
  CHECK(config_error("[1, 2]").find("object") != std::string::npos);

  const auto syntax = config_error("{\n  \"model\": {\n    \"n_sites\": 2,,\n  }\n}");
  CHECK(syntax.find("line 3") != std::string::npos);

  CHECK_THROWS_AS(load_config("/nonexistent/scenario.json"), IoError);
}

TEST_CASE("format_number round-trips") {
  for (double v : {0.0, 1.0, -0.5, 0.1, 1.0 / 3.0, 6.02214076e23, 1e-300}) {
    CHECK(to_double(format_number(v)) == v);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(30.0) == "30");
}

TEST_CASE("run_simulate output") {
  const auto config = parse_config(kBasic);
  const auto result = run_simulate(config);
  const auto rows = csv_rows(result.csv);
  REQUIRE(rows.size() == 52);
  CHECK(rows[0] == std::vector<std::string>{"t", "P1", "P2", "P_up", "F_plus", "F_minus", "logneg", "F2", "Sz",
                                            "S12sq", "norm"});
  CHECK(to_double(rows[1][0]) == 0.0);
  CHECK(to_double(rows[51][0]) == 5.0);
  CHECK(to_double(rows[1][1]) == doctest::Approx(1.0));

  SUBCASE("summary extrema equal the CSV extrema") {
    for (const auto& s : result.summary) {
      const auto col = static_cast<std::size_t>(std::find(rows[0].begin(), rows[0].end(), column_name(s.column)) -
                                                rows[0].begin());
      double lo = 1e300, hi = -1e300;
      for (std::size_t r = 1; r < rows.size(); ++r) {
        lo = std::min(lo, to_double(rows[r][col]));
        hi = std::max(hi, to_double(rows[r][col]));
      }
      CHECK(s.min == lo);
      CHECK(s.max == hi);
    }
    const auto line = result.summary_line();
    CHECK(line.rfind("summary rows=51 P1[min=", 0) == 0);
  }
  SUBCASE("probabilities stay in [0, 1]") {
    for (std::size_t r = 1; r < rows.size(); ++r) {
      for (std::size_t c = 1; c <= 5; ++c) {
        const double v = to_double(rows[r][c]);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
  SUBCASE("deterministic") { CHECK(run_simulate(config).csv == result.csv); }
}

TEST_CASE("run_compare and run_analytic") {
  const auto config = parse_config(kBasic);
  const auto rows = csv_rows(run_compare(config, {1.0, 10.0}));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == "eta_over_j");
  CHECK(rows[0].size() == 9);
  CHECK(to_double(rows[1][0]) == 1.0);
  CHECK(to_double(rows[2][1]) < to_double(rows[1][1]));
  CHECK_THROWS_AS(run_compare(config, {}), ConfigError);

  const auto analytic = csv_rows(run_analytic(config));
  REQUIRE(analytic.size() == 52);
  CHECK(analytic[0] == std::vector<std::string>{"t", "alpha_up_sq", "alpha_down_sq"});
  CHECK(to_double(analytic[1][1]) == 1.0);
  for (std::size_t r = 1; r < analytic.size(); ++r) {
    CHECK(to_double(analytic[r][1]) + to_double(analytic[r][2]) == doctest::Approx(1.0));
  }

  const auto custom = parse_config(R"({"model": {"n_sites": 2, "eta": 1, "preset": "custom", "j_xy": 1, "j_z": 0.3}})");
  CHECK_THROWS_AS(run_analytic(custom), ConfigError);
}

TEST_CASE("write_text_file") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = (dir / "hopspin_scenario_test.csv").string();
  write_text_file(path, "a,b\n1,2\n");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "a,b\n1,2\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.csv", "x"), IoError);
}
