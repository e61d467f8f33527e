#include <doctest.h>

#include <cmath>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/material.hpp"
#include "oracles.hpp"

using namespace casimir;

namespace {

const double kWp = units::ev_to_rad_per_s(9.0);
const double kGamma = units::ev_to_rad_per_s(0.035);

std::shared_ptr<const OpticalDataTable> sampled_drude(double wp, double gamma, int per_decade) {
  std::vector<OpticalSample> rows;
  const double lo = units::ev_to_rad_per_s(1e-3);
  const double hi = units::ev_to_rad_per_s(1e4);
  const int count = static_cast<int>(std::log10(hi / lo) * per_decade) + 1;
  for (int i = 0; i < count; ++i) {
    const double w = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    rows.push_back({w, wp * wp * gamma / (w * (w * w + gamma * gamma))});
  }
  return std::make_shared<const OpticalDataTable>(rows, DrudeParams{wp, gamma});
}

}  // namespace

TEST_SUITE("material") {

TEST_CASE("eps_drude reduces to the plasma model without damping") {
  for (double xi = 1e12; xi < 1e18; xi *= 3.7) CHECK(eps_drude(xi, kWp, 0.0) == doctest::Approx(eps_plasma(xi, kWp)).epsilon(1e-15));
}

TEST_CASE("eps_drude vacuum limit") { CHECK(eps_drude(1e14, 1e-30, kGamma) == doctest::Approx(1.0)); }

TEST_CASE("eps_drude at the first Matsubara frequency matches extended precision") {
  const double xi1 = 2.0 * units::pi * units::k_B * 300.0 / units::hbar;
  CHECK(xi1 == doctest::Approx(2.468e14).epsilon(1e-3));
  const double ref = static_cast<double>(
      oracle::eps_drude(oracle::xi_n(300.0L, 1), oracle::ev(9.0L), oracle::ev(0.035L)));
  CHECK(oracle::rel(eps_drude(xi1, kWp, kGamma), ref) < 1e-13);
}

TEST_CASE("eps_plasma special values and monotonicity") {
  CHECK(eps_plasma(kWp, kWp) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eps_plasma(1e30, kWp) == doctest::Approx(1.0));
  double prev = INFINITY;
  for (int i = 0; i < 50; ++i) {
    const double xi = 1e12 * std::pow(1e6, i / 49.0);
    const double e = eps_plasma(xi, kWp);
    CHECK(e < prev);
    CHECK(e > 1.0);
    prev = e;
  }
}

TEST_CASE("analytic models reject non-positive frequencies") {
  CHECK_THROWS_AS(eps_drude(0.0, kWp, kGamma), DomainError);
  CHECK_THROWS_AS(eps_plasma(-1.0, kWp), DomainError);
  CHECK_THROWS_AS(MaterialModel::gold_drude().eps(0.0), DomainError);
  CHECK_THROWS_AS(MaterialModel::drude(0.0, kGamma), DomainError);
}

TEST_CASE("optical data loader") {
  SUBCASE("minimal file") {
    std::istringstream in("# two rows\n1.0 0.5\n2.0 0.25\n");
    const auto t = load_optical_data(in, {});
    CHECK(t.rows().size() == 2);
    CHECK(t.rows()[1].omega == doctest::Approx(units::ev_to_rad_per_s(2.0)));
  }
  SUBCASE("duplicated frequency names the line") {
    std::istringstream in("# header\n1.0 0.5\n2.0 0.3\n2.0 0.25\n");
    try {
      load_optical_data(in, {});
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      REQUIRE(e.row().has_value());
      CHECK(*e.row() == 4);
      CHECK(std::string(e.what()).find("increasing") != std::string::npos);
    }
  }
  SUBCASE("negative eps''") {
    std::istringstream in("1.0 0.5\n2.0 -0.3\n");
    CHECK_THROWS_AS(load_optical_data(in, {}), ValidationError);
  }
  SUBCASE("single row") {
    std::istringstream in("1.0 0.5\n");
    CHECK_THROWS_AS(load_optical_data(in, {}), ValidationError);
  }
  SUBCASE("garbage") {
    std::istringstream in("1.0 0.5\n2.0 abc\n");
    CHECK_THROWS_AS(load_optical_data(in, {}), ValidationError);
  }
}

TEST_CASE("shipped Au file loads and round-trips") {
  const auto table = load_optical_data_file(CASIMIR_TEST_DATA_DIR "/au_optical_synthetic.txt", gold_drude_defaults());
  CHECK(table.rows().size() >= 100);
  CHECK(units::rad_per_s_to_ev(table.rows().front().omega) == doctest::Approx(0.1));
  CHECK(units::rad_per_s_to_ev(table.rows().back().omega) == doctest::Approx(1e4));
  CHECK(table.provenance().find("synthetic") != std::string::npos);

  std::stringstream buffer;
  write_optical_data(buffer, table);
  const auto again = load_optical_data(buffer, gold_drude_defaults());
  REQUIRE(again.rows().size() == table.rows().size());
  for (std::size_t i = 0; i < table.rows().size(); ++i) {
    CHECK(oracle::rel(again.rows()[i].omega, table.rows()[i].omega) < 1e-15);
    CHECK(again.rows()[i].eps_imag == table.rows()[i].eps_imag);
  }
  CHECK(again.provenance() == table.provenance());
}

TEST_CASE("dispersion integral of sampled Drude data reproduces eps_drude") {
  const auto table = sampled_drude(kWp, kGamma, 40);
  for (double xi = 1e13; xi <= 1e17; xi *= 3.0) {
    const double ref = eps_drude(xi, kWp, kGamma);
    CHECK(oracle::rel(eps_tabulated(*table, xi), ref) < 5e-3);
  }
}

TEST_CASE("zero table with zero extrapolation gives vacuum") {
  const OpticalDataTable table({{1e14, 0.0}, {1e15, 0.0}}, {0.0, 0.0});
  CHECK(eps_tabulated(table, 1e14) == 1.0);
}

TEST_CASE("tabulated eps is monotone and converged in the panel count") {
  const auto table = load_optical_data_file(CASIMIR_TEST_DATA_DIR "/au_optical_synthetic.txt", gold_drude_defaults());
  double prev = INFINITY;
  for (int i = 0; i < 30; ++i) {
    const double xi = 1e13 * std::pow(1e4, i / 29.0);
    const double e = eps_tabulated(table, xi);
    CHECK(e > 1.0);
    CHECK(e < prev);
    prev = e;
    const double doubled = eps_tabulated(table, xi, {2, 1e-13});
    CHECK(oracle::rel(doubled, e) < 1e-6);
  }
}

TEST_CASE("tail formula is smooth across xi = gamma") {
  const auto table = sampled_drude(kWp, kGamma, 20);
  const double below = eps_tabulated(*table, kGamma * (1.0 - 1e-4));
  const double at = eps_tabulated(*table, kGamma);
  const double above = eps_tabulated(*table, kGamma * (1.0 + 1e-4));
  CHECK(below > at);
  CHECK(at > above);
  CHECK(oracle::rel(at, 0.5 * (below + above)) < 1e-6);
}

TEST_CASE("material model static response") {
  CHECK(MaterialModel::gold_drude().static_response() == StaticResponse::drude);
  CHECK(MaterialModel::plasma(kWp).static_response() == StaticResponse::plasma);
  const auto dielectric = std::make_shared<const OpticalDataTable>(
      std::vector<OpticalSample>{{1e15, 1.0}, {2e15, 2.0}, {4e15, 0.5}}, DrudeParams{});
  CHECK(MaterialModel::tabulated(dielectric).static_response() == StaticResponse::dielectric);
  CHECK(MaterialModel::gold_drude().describe().find("drude") != std::string::npos);
}

}
