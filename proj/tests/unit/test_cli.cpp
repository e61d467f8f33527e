#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <algorithm>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "casimir/cli/commands.hpp"
#include "casimir/cli/config.hpp"
#include "casimir/cli/output.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(CASIMIR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Settings parse(const std::string& text) {
  std::istringstream in(text);
  return parse_settings(in);
}

RunConfig config_for(const std::string& command, Settings s) {
  return build_config(s, command, CASIMIR_TEST_DATA_DIR);
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config file parsing") {
  const auto s = parse("# comment\nradius_um = 150   # trailing\n\n  gap_um=0.5\n");
  CHECK(s.at("radius_um") == "150");
  CHECK(s.at("gap_um") == "0.5");
  try {
    parse("radius_um = 1\nbogus = 3\n");
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    CHECK(e.row() == 2u);
  }
  try {
    parse("radius_um = 1\n\nno equals sign\n");
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.row() == 3u);
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config_for("force", {{"gap_um", "0.5"}}), ValidationError);
  CHECK_THROWS_AS(config_for("force", {{"radius_um", "150"}, {"gap_um", "-0.5"}}), ValidationError);
  CHECK_THROWS_AS(config_for("force", {{"radius_um", "150"}, {"gap_um", "abc"}}), ValidationError);
  const Settings plasma{{"radius_um", "150"}, {"gap_um", "0.5"}, {"material", "plasma"}};
  CHECK_THROWS_AS(run_command("force", config_for("force", plasma), plasma, std::cerr), DomainError);
  CHECK_THROWS_AS(config_for("force", {{"radius_um", "150"}, {"gap_um", "0.5"}, {"format", "xml"}}),
                  ValidationError);
  const Settings below_floor{{"radius_um", "5"}, {"gap_um", "1"}, {"l_max", "3"}};
  CHECK_THROWS_AS(truncation_for(config_for("compare", below_floor), 1e-6), ValidationError);
  const auto c = config_for("force", {{"radius_um", "150"},
                                      {"gap_min_um", "0.2"},
                                      {"gap_max_um", "2"},
                                      {"gap_points", "5"},
                                      {"gap_spacing", "log"}});
  REQUIRE(c.gaps.size() == 5);
  CHECK(c.gaps.front() == doctest::Approx(0.2e-6));
  CHECK(c.gaps.back() == doctest::Approx(2e-6));
  CHECK(c.gaps[1] / c.gaps[0] == doctest::Approx(c.gaps[4] / c.gaps[3]));
  CHECK(c.radius == doctest::Approx(150e-6));
}

TEST_CASE("data files resolve against the data directory") {
  const auto c = config_for("gradient", {{"radius_um", "150"},
                                         {"gap_um", "0.3"},
                                         {"material", "tabulated"},
                                         {"optical_data", "au_optical_synthetic.txt"},
                                         {"theta_table", "au_theta_300K.txt"}});
  CHECK(c.optical_table->rows().size() == 121);
  CHECK(c.thetas->rows().size() == 24);
  CHECK_THROWS_AS(config_for("gradient", {{"radius_um", "150"}, {"gap_um", "0.3"}, {"theta_table", "missing.txt"}}),
                  ValidationError);
}

TEST_CASE("canonical settings and hash") {
  const Settings a{{"radius_um", "150"}, {"gap_um", "0.5"}, {"output", "x.csv"}};
  const Settings b{{"gap_um", "0.5"}, {"radius_um", "150"}};
  CHECK(canonical_settings(a) == "gap_um=0.5;radius_um=150;");
  CHECK(settings_hash(a) == settings_hash(b));
  CHECK(settings_hash(a) != settings_hash({{"gap_um", "0.6"}, {"radius_um", "150"}}));
}

TEST_CASE("CSV writer") {
  Table t{{"a", "b,c"}, {{1.5, std::string("x\"y")}, {2, 1e-20}}};
  std::ostringstream out;
  write_csv(out, {{"k", "v"}}, t);
  CHECK(out.str() == "# k: v\na,\"b,c\"\n1.5,\"x\"\"y\"\n2,1e-20\n");
  CHECK(format_number(0.1 + 0.2) == "0.3");
}

TEST_CASE("JSON writer") {
  Table t{{"a", "b"}, {{1.5, 3}, {NAN, std::string("s")}}};
  std::ostringstream out;
  write_json(out, {{"k", "v"}}, t);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j["metadata"]["k"] == "v");
  CHECK(j["columns"].size() == 2);
  CHECK(j["rows"][0]["a"] == 1.5);
  CHECK(j["rows"][0]["b"].is_number_integer());
  CHECK(j["rows"][1]["a"].is_null());
  CHECK(j["rows"][1]["b"] == "s");
}

TEST_CASE("gradient command reports F'/2 pi R in mPa") {
  const Settings s{{"radius_um", "150"}, {"gap_um", "0.3"}};
  const auto r = run_command("gradient", config_for("gradient", s), s, std::cerr);
  REQUIRE(r.table.rows.size() == 1);
  const auto& cols = r.table.columns;
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin());
  };
  const auto& row = r.table.rows[0];
  CHECK(row[col("approx_over_2piR_mPa")].number ==
        doctest::Approx(row[col("dF_approx_N_per_m")].number / (2.0 * units::pi * 150e-6) * 1e3).epsilon(1e-15));
  CHECK(row[col("pfa_over_2piR_mPa")].number ==
        doctest::Approx(row[col("dF_pfa_N_per_m")].number / (2.0 * units::pi * 150e-6) * 1e3).epsilon(1e-15));
  bool has_hash = false;
  for (const auto& [k, v] : r.metadata) has_hash |= (k == "config_hash" && v.size() == 16);
  CHECK(has_hash);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("force --radius-um 150 --gap-um 0.5").status == kExitOk);
  CHECK(run_cli("force --radius-um 150 --gap-um -0.5").status == kExitValidation);
  CHECK(run_cli("force --radius-um 150 --gap-um 0.5 --material plasma").status == kExitValidation);
  CHECK(run_cli("force --radius-um 150 --gap-um 5").status == kExitValidation);
  CHECK(run_cli("force --radius-um 150 --gap-um 0.5 --no-such-flag 1").status == kExitValidation);
  CHECK(run_cli("force --config /nonexistent/file.cfg").status == kExitValidation);
  CHECK(run_cli("theta --gap-um 1").status == kExitOk);
  // a / R = 1e-15: the n = 0 series needs more terms than the hard cap.
  CHECK(run_cli("force --radius-um 1e14 --gap-um 0.1").status == kExitNumerical);
}

TEST_CASE("output is CSV with a metadata preamble, or JSON") {
  const auto csv = run_cli("gradient --radius-um 150 --gap-min-um 0.2 --gap-max-um 0.7 --gap-points 6");
  REQUIRE(csv.status == 0);
  CHECK(csv.out.rfind("# program: casimir-sp\n", 0) == 0);
  CHECK(csv.out.find("# config_hash: ") != std::string::npos);
  CHECK(csv.out.find("# kernel_isa: ") != std::string::npos);
  const auto lines = data_lines(csv.out);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0].rfind("a_um,dF_approx_N_per_m,", 0) == 0);

  const auto json = run_cli("gradient --radius-um 150 --gap-um 0.5 --format json");
  REQUIRE(json.status == 0);
  const auto j = nlohmann::json::parse(json.out);
  CHECK(j["metadata"]["command"] == "gradient");
  CHECK(j["rows"].size() == 1);
  CHECK(j["rows"][0]["a_um"] == 0.5);
}

TEST_CASE("flags override the config file") {
  const std::string path = "cli_test_override.cfg";
  {
    FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("radius_um = 150\ngap_um = 0.5\nformat = json\n", f);
    std::fclose(f);
  }
  const auto from_file = nlohmann::json::parse(run_cli("force --config " + path).out);
  const auto overridden = nlohmann::json::parse(run_cli("force --config " + path + " --gap-um 0.7").out);
  CHECK(from_file["rows"][0]["a_um"] == 0.5);
  CHECK(overridden["rows"][0]["a_um"] == 0.7);
  std::remove(path.c_str());
}

TEST_CASE("repeated runs are bit identical, independent of the thread count") {
  const std::string args = "compare --radius-um 2 --gap-um 0.5 --l-max 12 --m-max 6";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const std::string env_args = "CASIMIR_THREADS=3 ";
  const std::string cmd = env_args + CASIMIR_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  CHECK(out == a.out);
}

TEST_CASE("force magnitude decreases over a logarithmic gap grid") {
  const auto r = run_cli("force --radius-um 150 --gap-min-um 0.2 --gap-max-um 2 --gap-points 20 --gap-spacing log");
  REQUIRE(r.status == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 21);
  double prev = INFINITY;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string a, f;
    std::getline(row, a, ',');
    std::getline(row, f, ',');
    const double value = std::stod(f);
    CHECK(value < 0.0);
    CHECK(std::abs(value) < prev);
    prev = std::abs(value);
  }
}

}
