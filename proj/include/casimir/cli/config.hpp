#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "casimir/material.hpp"
#include "casimir/pfa.hpp"
#include "casimir/scattering.hpp"

namespace casimir::cli {

/// Raw key = value settings. Keys are the long flag names with '_' for '-'.
using Settings = std::map<std::string, std::string>;

struct SettingSpec {
  std::string key;
  std::string help;
};

/// Every accepted key, in the order shown by --help.
const std::vector<SettingSpec>& setting_specs();

/// Parses "key = value" lines; '#' starts a comment. Unknown keys and malformed
/// lines throw ValidationError with the line number.
Settings parse_settings(std::istream& in);
Settings load_settings_file(const std::string& path);

enum class OutputFormat { csv, json };

struct RunConfig {
  double radius = 0.0;               // m
  std::vector<double> gaps;          // m, ascending
  double temperature = 300.0;        // K
  std::string material_kind = "drude";
  double wp_ev = 9.0;
  double gamma_ev = 0.035;
  std::string optical_data;          // path, tabulated only
  std::string theta_table;           // path
  OutputFormat format = OutputFormat::csv;
  std::string output;                // empty: stdout
  bool oracle = false;
  Quantity quantity = Quantity::force;
  ScanQuantity scan_quantity = ScanQuantity::free_energy;
  std::optional<int> l_max;
  std::optional<int> m_max;
  std::optional<int> n_max;
  int nodes = 0;
  double matsubara_factor = 10.0;
  double series_tolerance = kDefaultSeriesTolerance;
  std::vector<int> schedule;
  double target = 1e-4;

  std::shared_ptr<const OpticalDataTable> optical_table;  // loaded by build_config
  std::shared_ptr<const ThetaTable> thetas;               // loaded by build_config
};

/// Validates settings for one subcommand and loads referenced files. Throws
/// ValidationError with an actionable message.
RunConfig build_config(const Settings& settings, const std::string& command,
                       const std::string& default_data_dir);

MaterialModel make_material(const RunConfig& config);

/// Oracle truncation at one gap: defaults from the geometry, then overrides.
MultipoleTruncation truncation_for(const RunConfig& config, double gap);

/// Canonical "key=value;..." rendering of the merged settings, and its FNV-1a hash.
std::string canonical_settings(const Settings& settings);
std::uint64_t settings_hash(const Settings& settings);

}  // namespace casimir::cli
