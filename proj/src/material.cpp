#include "casimir/material.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

void require_positive_frequency(double xi, const char* who) {
  if (!(xi > 0.0) || !std::isfinite(xi))
    throw DomainError(std::string(who) + ": imaginary frequency must be positive and finite");
}

double drude_eps_imag(double omega, const DrudeParams& p) {
  const double wp2 = p.plasma_frequency * p.plasma_frequency;
  const double g = p.relaxation_rate;
  return wp2 * g / (omega * (omega * omega + g * g));
}

// (2/pi) int_0^w1 omega eps''_Drude / (omega^2 + xi^2) d omega in closed form:
// wp^2 [atan(w1/g) - g atan(w1/xi)/xi] / (xi^2 - g^2) * (2/pi).
double drude_head(const DrudeParams& p, double w1, double xi) {
  const double wp2 = p.plasma_frequency * p.plasma_frequency;
  if (wp2 == 0.0) return 0.0;
  const double g = p.relaxation_rate;
  if (xi == 0.0) return std::numeric_limits<double>::infinity();
  if (std::abs(xi - g) < 1e-5 * g) {
    // removable singularity at xi = g: limit is -wp^2 h'(g) / 2, h(x) = atan(w1/x)/x
    const double dh = -std::atan(w1 / g) / (g * g) - w1 / (g * (g * g + w1 * w1));
    return (2.0 / units::pi) * (-0.5 * wp2 * dh);
  }
  const double num = std::atan2(w1, g) - g * std::atan(w1 / xi) / xi;
  return (2.0 / units::pi) * wp2 * num / (xi * xi - g * g);
}

struct TableIntegrand {
  const OpticalDataTable* table;
  double xi;
  // integrand in u = ln omega
  double operator()(double u) const {
    const double w = std::exp(u);
    return w * w * table->eps_imag(w) / (w * w + xi * xi);
  }
};

double gl8(const TableIntegrand& f, double lo, double hi) {
  return quadrature::integrate_panel(std::cref(f), lo, hi, 8);
}

double adaptive(const TableIntegrand& f, double lo, double hi, double whole, double abs_tol,
                int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = gl8(f, lo, mid);
  const double right = gl8(f, mid, hi);
  const double refined = left + right;
  if (depth >= 30 || std::abs(refined - whole) <= abs_tol) return refined;
  return adaptive(f, lo, mid, left, 0.5 * abs_tol, depth + 1) +
         adaptive(f, mid, hi, right, 0.5 * abs_tol, depth + 1);
}

double tabulated_eps(const OpticalDataTable& table, double xi, const DispersionOptions& options) {
  const auto& rows = table.rows();
  const double head = drude_head(table.extrapolation(), rows.front().omega, xi);
  const TableIntegrand f{&table, xi};
  const int per = options.panels_per_interval;

  std::vector<double> breaks;
  breaks.reserve((rows.size() - 1) * static_cast<std::size_t>(per) + 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double lo = std::log(rows[i - 1].omega);
    const double hi = std::log(rows[i].omega);
    for (int k = 0; k < per; ++k) breaks.push_back(lo + (hi - lo) * k / per);
  }
  breaks.push_back(std::log(rows.back().omega));

  std::vector<double> coarse(breaks.size() - 1);
  double coarse_total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    coarse[i] = gl8(f, breaks[i], breaks[i + 1]);
    coarse_total += coarse[i];
  }
  const double scale = std::abs(coarse_total) + 0.5 * units::pi * std::abs(head);
  const double abs_tol = options.relative_tolerance * scale / static_cast<double>(coarse.size());
  double body = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    body += adaptive(f, breaks[i], breaks[i + 1], coarse[i], abs_tol, 0);
  return 1.0 + head + (2.0 / units::pi) * body;
}

}  // namespace

DrudeParams gold_drude_defaults() {
  return {units::ev_to_rad_per_s(9.0), units::ev_to_rad_per_s(0.035)};
}

OpticalDataTable::OpticalDataTable(std::vector<OpticalSample> rows, DrudeParams extrapolation,
                                   std::string provenance)
    : rows_(std::move(rows)), extrapolation_(extrapolation), provenance_(std::move(provenance)) {
  if (rows_.size() < 2) throw ValidationError("optical data needs at least two rows");
  if (!(extrapolation_.plasma_frequency >= 0.0) || !(extrapolation_.relaxation_rate >= 0.0))
    throw ValidationError("Drude extrapolation parameters must be non-negative");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (!(r.omega > 0.0) || !std::isfinite(r.omega))
      throw ValidationError("optical data frequency must be positive", i);
    if (!(r.eps_imag >= 0.0) || !std::isfinite(r.eps_imag))
      throw ValidationError("optical data eps'' must be finite and non-negative", i);
    if (i > 0 && !(r.omega > rows_[i - 1].omega))
      throw ValidationError("optical data frequencies must be strictly increasing", i);
  }
}

double OpticalDataTable::eps_imag(double omega) const {
  if (omega < rows_.front().omega) {
    if (extrapolation_.plasma_frequency == 0.0 || extrapolation_.relaxation_rate == 0.0) return 0.0;
    return drude_eps_imag(omega, extrapolation_);
  }
  if (omega > rows_.back().omega) return 0.0;
  auto it = std::upper_bound(rows_.begin(), rows_.end(), omega,
                             [](double w, const OpticalSample& s) { return w < s.omega; });
  if (it == rows_.end()) return rows_.back().eps_imag;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double frac = std::log(omega / lo.omega) / std::log(hi.omega / lo.omega);
  if (lo.eps_imag > 0.0 && hi.eps_imag > 0.0)
    return lo.eps_imag * std::exp(frac * std::log(hi.eps_imag / lo.eps_imag));
  return lo.eps_imag + frac * (hi.eps_imag - lo.eps_imag);
}

OpticalDataTable load_optical_data(std::istream& in, DrudeParams extrapolation) {
  std::vector<OpticalSample> rows;
  std::string provenance;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const std::string body = line.substr(first + 1);
      const auto key = body.find("provenance:");
      if (key != std::string::npos) {
        auto text = body.substr(key + 11);
        text.erase(0, text.find_first_not_of(" \t"));
        while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.pop_back();
        if (!provenance.empty()) provenance += ' ';
        provenance += text;
      }
      continue;
    }
    std::istringstream fields(line);
    double omega_ev = 0.0;
    double eps_imag = 0.0;
    std::string extra;
    if (!(fields >> omega_ev >> eps_imag) || (fields >> extra))
      throw ValidationError("optical data: expected two numeric columns 'omega_eV eps_imag'", line_no);
    if (!(omega_ev > 0.0)) throw ValidationError("optical data: frequency must be positive", line_no);
    if (!(eps_imag >= 0.0)) throw ValidationError("optical data: negative eps''", line_no);
    const double omega = units::ev_to_rad_per_s(omega_ev);
    if (!rows.empty() && !(omega > rows.back().omega))
      throw ValidationError("optical data: frequencies must be strictly increasing", line_no);
    rows.push_back({omega, eps_imag});
  }
  if (rows.size() < 2) throw ValidationError("optical data needs at least two rows");
  return OpticalDataTable(std::move(rows), extrapolation, std::move(provenance));
}

OpticalDataTable load_optical_data_file(const std::string& path, DrudeParams extrapolation) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open optical data file '" + path + "'");
  return load_optical_data(in, extrapolation);
}

void write_optical_data(std::ostream& out, const OpticalDataTable& table) {
  if (!table.provenance().empty()) out << "# provenance: " << table.provenance() << '\n';
  out << "# omega_eV  eps_imag\n";
  out << std::setprecision(17);
  for (const auto& r : table.rows()) out << units::rad_per_s_to_ev(r.omega) << ' ' << r.eps_imag << '\n';
}

double eps_drude(double xi, double wp, double gamma) {
  require_positive_frequency(xi, "eps_drude");
  if (!(wp >= 0.0) || !(gamma >= 0.0)) throw DomainError("eps_drude: wp and gamma must be >= 0");
  return 1.0 + wp * wp / (xi * (xi + gamma));
}

double eps_plasma(double xi, double wp) {
  require_positive_frequency(xi, "eps_plasma");
  if (!(wp >= 0.0)) throw DomainError("eps_plasma: wp must be >= 0");
  return 1.0 + (wp / xi) * (wp / xi);
}

double eps_tabulated(const OpticalDataTable& table, double xi, const DispersionOptions& options) {
  require_positive_frequency(xi, "eps_tabulated");
  if (options.panels_per_interval < 1 || !(options.relative_tolerance > 0.0))
    throw DomainError("eps_tabulated: need panels_per_interval >= 1 and a positive tolerance");
  return tabulated_eps(table, xi, options);
}

MaterialModel::MaterialModel(MaterialKind kind, DrudeParams params,
                             std::shared_ptr<const OpticalDataTable> table)
    : kind_(kind), params_(params), table_(std::move(table)) {}

MaterialModel MaterialModel::drude(double plasma_frequency, double relaxation_rate) {
  if (!(plasma_frequency > 0.0) || !(relaxation_rate >= 0.0))
    throw DomainError("Drude model needs plasma_frequency > 0 and relaxation_rate >= 0");
  return MaterialModel(MaterialKind::drude, {plasma_frequency, relaxation_rate}, nullptr);
}

MaterialModel MaterialModel::plasma(double plasma_frequency) {
  if (!(plasma_frequency > 0.0)) throw DomainError("plasma model needs plasma_frequency > 0");
  return MaterialModel(MaterialKind::plasma, {plasma_frequency, 0.0}, nullptr);
}

MaterialModel MaterialModel::tabulated(std::shared_ptr<const OpticalDataTable> table) {
  if (!table) throw DomainError("tabulated model needs a table");
  const DrudeParams p = table->extrapolation();
  return MaterialModel(MaterialKind::tabulated, p, std::move(table));
}

MaterialModel MaterialModel::gold_drude() {
  const DrudeParams p = gold_drude_defaults();
  return drude(p.plasma_frequency, p.relaxation_rate);
}

double MaterialModel::eps(double xi) const {
  switch (kind_) {
    case MaterialKind::drude:
      return eps_drude(xi, params_.plasma_frequency, params_.relaxation_rate);
    case MaterialKind::plasma:
      return eps_plasma(xi, params_.plasma_frequency);
    case MaterialKind::tabulated:
      return eps_tabulated(*table_, xi);
  }
  throw DomainError("unknown material kind");
}

StaticResponse MaterialModel::static_response() const {
  switch (kind_) {
    case MaterialKind::drude:
      return StaticResponse::drude;
    case MaterialKind::plasma:
      return StaticResponse::plasma;
    case MaterialKind::tabulated:
      if (params_.plasma_frequency == 0.0) return StaticResponse::dielectric;
      return params_.relaxation_rate > 0.0 ? StaticResponse::drude : StaticResponse::plasma;
  }
  return StaticResponse::drude;
}

std::string MaterialModel::describe() const {
  std::ostringstream s;
  s << std::setprecision(6);
  const double wp = units::rad_per_s_to_ev(params_.plasma_frequency);
  const double g = units::rad_per_s_to_ev(params_.relaxation_rate);
  switch (kind_) {
    case MaterialKind::drude:
      s << "drude(wp=" << wp << " eV, gamma=" << g << " eV)";
      break;
    case MaterialKind::plasma:
      s << "plasma(wp=" << wp << " eV)";
      break;
    case MaterialKind::tabulated:
      s << "tabulated(" << table_->rows().size() << " rows, drude tail wp=" << wp
        << " eV, gamma=" << g << " eV)";
      break;
  }
  return s.str();
}

}  // namespace casimir
