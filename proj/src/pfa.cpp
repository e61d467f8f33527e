#include "casimir/pfa.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

// Fritsch-Carlson derivatives with the shape-preserving three-point end conditions.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1);
  std::vector<double> delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  std::vector<double> d(n, 0.0);
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  auto edge = [](double h0, double h1, double m0, double m1) {
    double s = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (s * m0 <= 0.0) return 0.0;
    if (m0 * m1 <= 0.0 && std::abs(s) > std::abs(3.0 * m0)) s = 3.0 * m0;
    return s;
  };
  d[0] = edge(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

double hermite(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * h * d0 + (-2.0 * t3 + 3.0 * t2) * y1 +
         (t3 - t2) * h * d1;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void require_sphere(double radius, double gap) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("sphere radius must be positive");
  if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("gap must be positive");
}

void require_drude_static(const MaterialModel& model) {
  if (model.static_response() != StaticResponse::drude)
    throw DomainError("the exact n = 0 channel is only available for a Drude-type static response");
}

void require_table_temperature(const ThetaTable& table, double temperature) {
  if (table.temperature() > 0.0 && std::abs(temperature - table.temperature()) > 1e-6 * table.temperature()) {
    std::ostringstream msg;
    msg << "theta table was computed for T = " << table.temperature() << " K, requested T = "
        << temperature << " K";
    throw ValidationError(msg.str());
  }
}

ForceResult assemble(Quantity quantity, const MaterialModel& model, double radius, double gap,
                     double temperature, const ThetaTable& table, const ApproxOptions& options) {
  require_sphere(radius, gap);
  require_drude_static(model);
  require_table_temperature(table, temperature);
  const ThetaCoeffs coeffs = table.at(gap);
  const auto grid = MatsubaraGrid::for_separation(temperature, gap, options.matsubara_factor);
  const auto n0 = classical_zero_mode(Geometry(radius, gap), temperature, options.series_tolerance);

  ForceResult r;
  r.quantity = quantity;
  if (quantity == Quantity::force) {
    r.n0_exact = n0.force;
    r.npos_pfa = force_pfa_npos(model, radius, gap, grid);
    r.de_coefficient = coeffs.theta;
  } else {
    r.n0_exact = n0.gradient;
    r.npos_pfa = gradient_pfa_npos(model, radius, gap, grid);
    r.de_coefficient = coeffs.theta_tilde;
  }
  r.correction_factor = 1.0 - r.de_coefficient * gap / radius;
  r.value = r.n0_exact + r.npos_pfa * r.correction_factor;
  r.radius = radius;
  r.gap = gap;
  r.temperature = temperature;
  r.n_max = grid.n_max();
  r.series_tolerance = options.series_tolerance;
  r.material = model.describe();
  return r;
}

}  // namespace

ThetaTable::ThetaTable(std::vector<ThetaRow> rows, std::string material, double temperature)
    : rows_(std::move(rows)), material_(std::move(material)), temperature_(temperature) {
  if (rows_.size() < 2) throw ValidationError("theta table needs at least two rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (!(r.gap > 0.0) || !std::isfinite(r.gap)) throw ValidationError("theta table gap must be positive", i);
    if (i > 0 && !(r.gap > rows_[i - 1].gap))
      throw ValidationError("theta table gaps must be strictly increasing", i);
    if (!(r.theta > 0.0 && r.theta < 1.0) || !(r.theta_tilde > 0.0 && r.theta_tilde < 1.0))
      throw ValidationError("theta coefficients must lie in (0, 1)", i);
  }
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> tt;
  for (const auto& r : rows_) {
    x.push_back(r.gap);
    t.push_back(r.theta);
    tt.push_back(r.theta_tilde);
  }
  slope_theta_ = pchip_slopes(x, t);
  slope_theta_tilde_ = pchip_slopes(x, tt);
}

ThetaCoeffs ThetaTable::at(double gap) const {
  // relative slack absorbs unit-conversion rounding at the end points
  const double slack = 1e-12;
  if (!(gap >= min_gap() * (1.0 - slack)) || !(gap <= max_gap() * (1.0 + slack))) {
    std::ostringstream msg;
    msg << "gap " << gap * 1e6 << " um is outside the theta table range [" << min_gap() * 1e6 << ", "
        << max_gap() * 1e6 << "] um";
    throw RangeError(msg.str());
  }
  gap = std::clamp(gap, min_gap(), max_gap());
  auto it = std::upper_bound(rows_.begin(), rows_.end(), gap,
                             [](double g, const ThetaRow& r) { return g < r.gap; });
  std::size_t k = static_cast<std::size_t>(it - rows_.begin());
  k = k == 0 ? 0 : k - 1;
  if (rows_[k].gap == gap) return {rows_[k].theta, rows_[k].theta_tilde};
  const auto& lo = rows_[k];
  const auto& hi = rows_[k + 1];
  return {hermite(lo.gap, hi.gap, lo.theta, hi.theta, slope_theta_[k], slope_theta_[k + 1], gap),
          hermite(lo.gap, hi.gap, lo.theta_tilde, hi.theta_tilde, slope_theta_tilde_[k],
                  slope_theta_tilde_[k + 1], gap)};
}

ThetaTable load_theta_table(std::istream& in) {
  std::vector<ThetaRow> rows;
  std::string material;
  double temperature = 0.0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body[0] == '#') {
      const std::string tag = trim(body.substr(1));
      if (tag.rfind("material:", 0) == 0) {
        material = trim(tag.substr(9));
      } else if (tag.rfind("temperature_K:", 0) == 0) {
        try {
          temperature = std::stod(tag.substr(14));
        } catch (const std::exception&) {
          throw ValidationError("theta table: bad temperature tag", line_no);
        }
      }
      continue;
    }
    std::istringstream fields(body);
    double a_um = 0.0;
    double theta = 0.0;
    double theta_tilde = 0.0;
    std::string extra;
    if (!(fields >> a_um >> theta >> theta_tilde) || (fields >> extra))
      throw ValidationError("theta table: expected 'a_um theta theta_tilde'", line_no);
    rows.push_back({units::um_to_m(a_um), theta, theta_tilde});
  }
  return ThetaTable(std::move(rows), std::move(material), temperature);
}

ThetaTable load_theta_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open theta table '" + path + "'");
  return load_theta_table(in);
}

void write_theta_table(std::ostream& out, const ThetaTable& table) {
  if (!table.material().empty()) out << "# material: " << table.material() << '\n';
  if (table.temperature() > 0.0) out << "# temperature_K: " << table.temperature() << '\n';
  out << "# a_um theta theta_tilde\n";
  out << std::setprecision(17);
  for (const auto& r : table.rows())
    out << units::m_to_um(r.gap) << ' ' << r.theta << ' ' << r.theta_tilde << '\n';
}

ThetaCoeffs theta_coeffs(const ThetaTable& table, double gap) { return table.at(gap); }

double force_pfa_npos(const MaterialModel& model, double radius, double gap, const MatsubaraGrid& grid) {
  require_sphere(radius, gap);
  return 2.0 * units::pi * radius * pp_free_energy_npos(model, gap, grid);
}

double gradient_pfa_npos(const MaterialModel& model, double radius, double gap,
                         const MatsubaraGrid& grid) {
  require_sphere(radius, gap);
  return 2.0 * units::pi * radius * pp_pressure_npos(model, gap, grid);
}

double force_pfa(const MaterialModel& model, double radius, double gap, const MatsubaraGrid& grid) {
  require_sphere(radius, gap);
  return 2.0 * units::pi * radius * pp_free_energy(model, gap, grid);
}

double gradient_pfa(const MaterialModel& model, double radius, double gap, const MatsubaraGrid& grid) {
  require_sphere(radius, gap);
  return 2.0 * units::pi * radius * pp_pressure(model, gap, grid);
}

double ideal_pfa_force(double radius, double gap) {
  require_sphere(radius, gap);
  return -units::pi * units::pi * units::pi * units::hbar * units::c * radius / (360.0 * gap * gap * gap);
}

ForceResult force_approx(const MaterialModel& model, double radius, double gap, double temperature,
                         const ThetaTable& table, const ApproxOptions& options) {
  return assemble(Quantity::force, model, radius, gap, temperature, table, options);
}

ForceResult gradient_approx(const MaterialModel& model, double radius, double gap,
                            double temperature, const ThetaTable& table,
                            const ApproxOptions& options) {
  return assemble(Quantity::gradient, model, radius, gap, temperature, table, options);
}

}  // namespace casimir
