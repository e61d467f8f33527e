#include <doctest.h>

#include <cmath>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/pfa.hpp"
#include "oracles.hpp"

using namespace casimir;

namespace {

const ThetaTable& au_table() {
  static const ThetaTable table = load_theta_table_file(std::string(CASIMIR_TEST_DATA_DIR) + "/au_theta_300K.txt");
  return table;
}

}  // namespace

TEST_SUITE("pfa") {

TEST_CASE("theta table loads with its tags") {
  const auto& t = au_table();
  CHECK(t.rows().size() == 24);
  CHECK(t.material() == "Au");
  CHECK(t.temperature() == 300.0);
  CHECK(t.min_gap() == doctest::Approx(0.1e-6));
  CHECK(t.max_gap() == doctest::Approx(2.0e-6));
}

TEST_CASE("node values are reproduced exactly") {
  const auto& t = au_table();
  CHECK(theta_coeffs(t, 0.2e-6).theta == 0.6645);
  CHECK(theta_coeffs(t, 0.2e-6).theta_tilde == 0.470);
  CHECK(theta_coeffs(t, 1e-6).theta == 0.378);
  CHECK(theta_coeffs(t, 1e-6).theta_tilde == 0.332);
  CHECK(theta_coeffs(t, 2e-6).theta == 0.237);
  CHECK(theta_coeffs(t, 2e-6).theta_tilde == 0.225);
  for (const auto& row : t.rows()) {
    CHECK(t.at(row.gap).theta == row.theta);
    CHECK(t.at(row.gap).theta_tilde == row.theta_tilde);
  }
}

TEST_CASE("no extrapolation") {
  CHECK_THROWS_AS(au_table().at(0.05e-6), RangeError);
  CHECK_THROWS_AS(au_table().at(2.5e-6), RangeError);
}

TEST_CASE("interpolation stays monotone between nodes") {
  const auto& t = au_table();
  double prev = INFINITY;
  double prev_tilde = INFINITY;
  for (int i = 0; i <= 600; ++i) {
    const double a = 0.4e-6 + i * (2.0e-6 - 0.4e-6) / 600.0;
    const auto c = t.at(a);
    CHECK(c.theta <= prev);
    CHECK(c.theta_tilde <= prev_tilde);
    prev = c.theta;
    prev_tilde = c.theta_tilde;
  }
  // Between bracketing nodes.
  const auto mid = t.at(1.1e-6);
  CHECK(mid.theta < 0.378);
  CHECK(mid.theta > 0.339);
}

TEST_CASE("malformed theta tables") {
  std::istringstream bad("# a_um theta theta_tilde\n0.1 0.7 0.4\n0.1 0.6 0.4\n");
  CHECK_THROWS_AS(load_theta_table(bad), ValidationError);
  std::istringstream single("0.1 0.7 0.4\n");
  CHECK_THROWS_AS(load_theta_table(single), ValidationError);
  std::istringstream out_of_range("0.1 0.7 0.4\n0.2 1.2 0.4\n");
  CHECK_THROWS_AS(load_theta_table(out_of_range), ValidationError);
  std::istringstream text("0.1 x 0.4\n0.2 0.6 0.4\n");
  CHECK_THROWS_AS(load_theta_table(text), ValidationError);
}

TEST_CASE("theta table round trip") {
  std::ostringstream out;
  write_theta_table(out, au_table());
  std::istringstream in(out.str());
  const auto copy = load_theta_table(in);
  REQUIRE(copy.rows().size() == au_table().rows().size());
  for (std::size_t i = 0; i < copy.rows().size(); ++i) {
    CHECK(copy.rows()[i].gap == au_table().rows()[i].gap);
    CHECK(copy.rows()[i].theta == au_table().rows()[i].theta);
  }
  CHECK(copy.material() == "Au");
}

TEST_CASE("PFA is linear in the radius") {
  const auto model = MaterialModel::gold_drude();
  const auto grid = MatsubaraGrid::for_separation(300.0, 0.5e-6);
  const double f1 = force_pfa_npos(model, 10e-6, 0.5e-6, grid);
  const double f3 = force_pfa_npos(model, 30e-6, 0.5e-6, grid);
  CHECK(oracle::rel(f3, 3.0 * f1) < 1e-14);
  CHECK(f1 < 0.0);
  CHECK(gradient_pfa_npos(model, 10e-6, 0.5e-6, grid) > 0.0);
}

TEST_CASE("PFA gradient is the derivative of the PFA force") {
  const auto model = MaterialModel::gold_drude();
  for (double a_um : {0.2, 0.7, 1.5}) {
    const double a = a_um * 1e-6;
    const auto grid = MatsubaraGrid::for_separation(300.0, a);
    const auto f = [&](double x) { return force_pfa_npos(model, 20e-6, x, grid); };
    CHECK(oracle::rel(gradient_pfa_npos(model, 20e-6, a, grid), oracle::derivative(f, a, 1e-3 * a)) < 1e-6);
    const auto full = [&](double x) { return force_pfa(model, 20e-6, x, grid); };
    CHECK(oracle::rel(gradient_pfa(model, 20e-6, a, grid), oracle::derivative(full, a, 1e-3 * a)) < 1e-6);
  }
}

TEST_CASE("approximate formula recombines bit for bit") {
  const auto model = MaterialModel::gold_drude();
  for (double a_um : {0.1, 0.37, 1.0, 2.0}) {
    for (auto r : {force_approx(model, 150e-6, a_um * 1e-6, 300.0, au_table()),
                   gradient_approx(model, 150e-6, a_um * 1e-6, 300.0, au_table())}) {
      CHECK(r.value == r.n0_exact + r.npos_pfa * r.correction_factor);
      CHECK(r.correction_factor == 1.0 - r.de_coefficient * r.gap / r.radius);
      CHECK(r.n_max == MatsubaraGrid::for_separation(300.0, r.gap).n_max());
    }
    const auto f = force_approx(model, 150e-6, a_um * 1e-6, 300.0, au_table());
    CHECK(f.value < 0.0);
    CHECK(f.de_coefficient == au_table().at(a_um * 1e-6).theta);
    const auto g = gradient_approx(model, 150e-6, a_um * 1e-6, 300.0, au_table());
    CHECK(g.value > 0.0);
    CHECK(g.de_coefficient == au_table().at(a_um * 1e-6).theta_tilde);
  }
}

TEST_CASE("large spheres approach the full PFA") {
  const auto model = MaterialModel::gold_drude();
  const double a = 0.5e-6;
  const auto grid = MatsubaraGrid::for_separation(300.0, a);
  double prev = INFINITY;
  for (double radius : {1e-4, 1e-3, 1e-2}) {
    const double ratio = force_approx(model, radius, a, 300.0, au_table()).value / force_pfa(model, radius, a, grid);
    CHECK(std::abs(ratio - 1.0) < prev);
    prev = std::abs(ratio - 1.0);
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("correction factor stays in (0, 1) for R >= 5 um") {
  const auto model = MaterialModel::gold_drude();
  for (double radius_um : {5.0, 20.0, 150.0}) {
    for (const auto& row : au_table().rows()) {
      const auto r = force_approx(model, radius_um * 1e-6, row.gap, 300.0, au_table());
      const double x = r.de_coefficient * row.gap / (radius_um * 1e-6);
      CHECK(x > 0.0);
      CHECK(x < 1.0);
    }
  }
}

TEST_CASE("n > 0 share is small at large separation") {
  const auto model = MaterialModel::gold_drude();
  const double a = 5e-6;
  const double radius = 5e-6;
  const auto grid = MatsubaraGrid::for_separation(300.0, a);
  const double npos = force_pfa_npos(model, radius, a, grid);
  const double n0 = force_n0(Geometry(radius, a), 300.0);
  CHECK(std::abs(npos) / std::abs(n0 + npos) < 0.02);
}

TEST_CASE("ideal-conductor PFA force") {
  const double radius = 100e-6, a = 1e-6;
  CHECK(oracle::rel(ideal_pfa_force(radius, a),
                    -std::pow(units::pi, 3) * units::hbar * units::c * radius / (360.0 * a * a * a)) < 1e-14);
  CHECK(oracle::rel(ideal_pfa_force(radius, a), 2.0 * units::pi * radius * ideal_free_energy(a)) < 1e-14);
}

TEST_CASE("preconditions") {
  const auto model = MaterialModel::gold_drude();
  CHECK_THROWS_AS(force_approx(model, 150e-6, 0.05e-6, 300.0, au_table()), RangeError);
  CHECK_THROWS_AS(force_approx(model, -1.0, 0.5e-6, 300.0, au_table()), DomainError);
  CHECK_THROWS_AS(force_approx(MaterialModel::plasma(units::ev_to_rad_per_s(9.0)), 150e-6, 0.5e-6, 300.0, au_table()),
                  DomainError);
  CHECK_THROWS_AS(force_approx(model, 150e-6, 0.5e-6, 77.0, au_table()), ValidationError);
}

}
