#include <doctest.h>

#include <algorithm>
#include <iostream>

#include "casimir/cli/commands.hpp"
#include "casimir/cli/config.hpp"
#include "casimir/scattering.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

Table compare(const Settings& s) {
  return run_command("compare", build_config(s, "compare", CASIMIR_TEST_DATA_DIR), s, std::cerr).table;
}

std::size_t col(const Table& t, const std::string& name) {
  return static_cast<std::size_t>(std::find(t.columns.begin(), t.columns.end(), name) - t.columns.begin());
}

}  // namespace

TEST_SUITE("oracle_claims") {

TEST_CASE("R = 5 um: semi-analytic force against the oracle at l_max = 120") {
  const auto t = compare({{"radius_um", "5"}, {"gaps_um", "0.3,0.5,1"}, {"l_max", "120"}});
  REQUIRE(t.rows.size() == 3);
  for (const auto& row : t.rows) {
    const double approx_err = std::abs(row[col(t, "approx_error_percent")].number);
    const double pfa_err = std::abs(row[col(t, "pfa_error_percent")].number);
    MESSAGE("a = " << row[0].number << " um: approx error " << approx_err << "%, PFA error " << pfa_err << "%");
    CHECK(approx_err <= 0.3);
    CHECK(pfa_err > approx_err);
    CHECK(approx_err <= 0.2);
  }
  CHECK(std::abs(t.rows[0][col(t, "approx_error_percent")].number) <= 0.15);
}

TEST_CASE("R = 8 um, a = 1 um: error shrinks with the radius") {
  const auto t = compare({{"radius_um", "8"}, {"gap_um", "1"}, {"l_max", "120"}});
  const double err = std::abs(t.rows.at(0)[col(t, "approx_error_percent")].number);
  MESSAGE("approx error " << err << "%");
  CHECK(err <= 0.1);
  CHECK(err <= 0.08);
}

}
