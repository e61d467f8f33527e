#include "casimir/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/simd/kernels.hpp"

namespace casimir::cli {

namespace {

constexpr double kOracleMaxRatio = 20.0;

double percent_error(double approx, double reference) { return 100.0 * (approx - reference) / std::abs(reference); }

ApproxOptions approx_options(const RunConfig& c) { return {c.series_tolerance, c.matsubara_factor}; }

MatsubaraGrid pfa_grid(const RunConfig& c, double gap) {
  return MatsubaraGrid::for_separation(c.temperature, gap, c.matsubara_factor);
}

double per_2pi_r_mpa(double gradient, double radius) { return gradient / (2.0 * units::pi * radius) * 1e3; }

std::string truncation_text(const MultipoleTruncation& t) {
  std::ostringstream s;
  s << "l_max=" << t.l_max << " m_max=" << t.m_max << " n_max=" << t.n_max
    << " nodes=" << t.quadrature_nodes();
  return s.str();
}

ScatteringForce oracle_value(const RunConfig& c, const MaterialModel& model, double gap, Quantity q) {
  const Geometry geom(c.radius, gap);
  const auto trunc = truncation_for(c, gap);
  return q == Quantity::force ? force_scattering(model, geom, c.temperature, trunc)
                              : gradient_scattering(model, geom, c.temperature, trunc);
}

void add_oracle_columns(Table& t) {
  t.columns.insert(t.columns.end(), {"oracle", "approx_error_percent", "l_max", "m_max", "n_max"});
}

void append_oracle(std::vector<Cell>& row, const RunConfig& c, const MaterialModel& model, double gap,
                   Quantity q, double approx) {
  const auto trunc = truncation_for(c, gap);
  const double oracle = oracle_value(c, model, gap, q).value;
  row.insert(row.end(), {oracle, percent_error(approx, oracle), trunc.l_max, trunc.m_max, trunc.n_max});
}

}  // namespace

CommandResult cmd_force(const RunConfig& c) {
  const auto model = make_material(c);
  CommandResult r;
  r.table.columns = {"a_um",  "F_approx_N", "F_n0_exact_N",    "F_npos_pfa_N",
                     "theta", "correction", "F_pfa_N",         "F_approx_over_F_ideal_pfa"};
  if (c.oracle) add_oracle_columns(r.table);
  for (double gap : c.gaps) {
    const auto f = force_approx(model, c.radius, gap, c.temperature, *c.thetas, approx_options(c));
    const double pfa = force_pfa(model, c.radius, gap, pfa_grid(c, gap));
    std::vector<Cell> row{units::m_to_um(gap), f.value, f.n0_exact, f.npos_pfa, f.de_coefficient,
                          f.correction_factor, pfa, f.value / ideal_pfa_force(c.radius, gap)};
    if (c.oracle) append_oracle(row, c, model, gap, Quantity::force, f.value);
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

CommandResult cmd_gradient(const RunConfig& c) {
  const auto model = make_material(c);
  CommandResult r;
  r.table.columns = {"a_um",
                     "dF_approx_N_per_m",
                     "dF_n0_exact_N_per_m",
                     "dF_npos_pfa_N_per_m",
                     "theta_tilde",
                     "correction",
                     "dF_pfa_N_per_m",
                     "approx_over_2piR_mPa",
                     "pfa_over_2piR_mPa",
                     "approx_vs_pfa_percent"};
  if (c.oracle) add_oracle_columns(r.table);
  for (double gap : c.gaps) {
    const auto g = gradient_approx(model, c.radius, gap, c.temperature, *c.thetas, approx_options(c));
    const double pfa = gradient_pfa(model, c.radius, gap, pfa_grid(c, gap));
    std::vector<Cell> row{units::m_to_um(gap),
                          g.value,
                          g.n0_exact,
                          g.npos_pfa,
                          g.de_coefficient,
                          g.correction_factor,
                          pfa,
                          per_2pi_r_mpa(g.value, c.radius),
                          per_2pi_r_mpa(pfa, c.radius),
                          percent_error(g.value, pfa)};
    if (c.oracle) append_oracle(row, c, model, gap, Quantity::gradient, g.value);
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

CommandResult cmd_compare(const RunConfig& c) {
  const auto model = make_material(c);
  const bool force = c.quantity == Quantity::force;
  CommandResult r;
  r.table.columns = {"a_um", "approx", "oracle", "approx_error_percent", "pfa", "pfa_error_percent",
                     "l_max", "m_max", "n_max"};
  for (double gap : c.gaps) {
    const auto trunc = truncation_for(c, gap);
    const auto approx = force ? force_approx(model, c.radius, gap, c.temperature, *c.thetas, approx_options(c))
                              : gradient_approx(model, c.radius, gap, c.temperature, *c.thetas, approx_options(c));
    const double pfa = force ? force_pfa(model, c.radius, gap, pfa_grid(c, gap))
                             : gradient_pfa(model, c.radius, gap, pfa_grid(c, gap));
    const double oracle = oracle_value(c, model, gap, c.quantity).value;
    r.table.rows.push_back({units::m_to_um(gap), approx.value, oracle, percent_error(approx.value, oracle), pfa,
                            percent_error(pfa, oracle), trunc.l_max, trunc.m_max, trunc.n_max});
  }
  r.metadata.emplace_back("quantity", force ? "force_N" : "gradient_N_per_m");
  return r;
}

CommandResult cmd_converge(const RunConfig& c) {
  const auto model = make_material(c);
  const double gap = c.gaps.front();
  const Geometry geom(c.radius, gap);
  auto base = truncation_for(c, gap);
  const auto report = convergence_scan(model, geom, c.temperature, c.schedule, base, c.target, c.scan_quantity);
  CommandResult r;
  const bool energy = c.scan_quantity == ScanQuantity::free_energy;
  r.table.columns = {"l_max", energy ? "free_energy_npos_J" : "force_N", "relative_delta"};
  for (std::size_t i = 0; i < report.l_max.size(); ++i)
    r.table.rows.push_back({report.l_max[i], report.values[i], report.deltas[i]});
  r.metadata.emplace_back("gap_um", format_number(units::m_to_um(gap)));
  r.metadata.emplace_back("target", format_number(report.target));
  r.metadata.emplace_back("converged_l_max", std::to_string(report.converged_l_max));
  base.l_max = c.schedule.back();
  r.metadata.emplace_back("fixed_truncations", "m_max=" + std::to_string(base.m_max) +
                                                   " n_max=" + std::to_string(base.n_max) +
                                                   (c.nodes ? " nodes=" + std::to_string(c.nodes)
                                                            : std::string(" nodes=l_max+40")));
  return r;
}

CommandResult cmd_theta(const RunConfig& c) {
  CommandResult r;
  r.table.columns = {"a_um", "theta", "theta_tilde"};
  if (c.gaps.empty()) {
    for (const auto& row : c.thetas->rows())
      r.table.rows.push_back({units::m_to_um(row.gap), row.theta, row.theta_tilde});
  } else {
    for (double gap : c.gaps) {
      const auto k = theta_coeffs(*c.thetas, gap);
      r.table.rows.push_back({units::m_to_um(gap), k.theta, k.theta_tilde});
    }
  }
  return r;
}

CommandResult run_command(const std::string& command, const RunConfig& c, const Settings& settings,
                          std::ostream& warn) {
  const bool uses_oracle = command == "compare" || command == "converge" || c.oracle;
  if (uses_oracle) {
    for (double gap : c.gaps)
      if (c.radius / gap > kOracleMaxRatio)
        warn << "warning: R/a = " << format_number(c.radius / gap)
             << " exceeds the validated oracle range R/a <= 20\n";
  }

  CommandResult r;
  if (command == "force") r = cmd_force(c);
  else if (command == "gradient") r = cmd_gradient(c);
  else if (command == "compare") r = cmd_compare(c);
  else if (command == "converge") r = cmd_converge(c);
  else if (command == "theta") r = cmd_theta(c);
  else throw ValidationError("unknown command '" + command + "'");

  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(settings_hash(settings)));
  Metadata meta{{"program", "casimir-sp"},
                {"version", CASIMIR_VERSION},
                {"command", command},
                {"config_hash", hash},
                {"config", canonical_settings(settings)}};
  if (command != "theta") {
    const auto model = make_material(c);
    meta.emplace_back("radius_um", format_number(units::m_to_um(c.radius)));
    meta.emplace_back("temperature_K", format_number(c.temperature));
    meta.emplace_back("material", model.describe());
    meta.emplace_back("material_provenance",
                      c.optical_table ? c.optical_data + ": " + c.optical_table->provenance()
                                      : std::string("analytic model"));
    meta.emplace_back("pfa_truncation", "n_max=ceil(" + format_number(c.matsubara_factor) +
                                            " lambda_T/a) series_tol=" + format_number(c.series_tolerance));
    if (uses_oracle && command != "converge")
      meta.emplace_back("oracle_truncation", truncation_text(truncation_for(c, c.gaps.front())) +
                                                 (c.gaps.size() > 1 ? " (first gap; per-row columns)" : ""));
    meta.emplace_back("kernel_isa", std::string(simd::isa_name(simd::active_isa())));
  }
  if (c.thetas) {
    meta.emplace_back("theta_table", c.theta_table);
    meta.emplace_back("theta_table_tags", "material=" + c.thetas->material() +
                                              " temperature_K=" + format_number(c.thetas->temperature()));
  }
  meta.insert(meta.end(), r.metadata.begin(), r.metadata.end());
  r.metadata = std::move(meta);
  return r;
}

}  // namespace casimir::cli
