#include "casimir/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>

#include "casimir/ceil_count.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool known_key(const std::string& key) {
  const auto& specs = setting_specs();
  return std::any_of(specs.begin(), specs.end(), [&](const SettingSpec& s) { return s.key == key; });
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(key + ": expected a number, got '" + text + "'");
}

int parse_int(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(key + ": expected an integer, got '" + text + "'");
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ValidationError(key + ": expected true or false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ValidationError(key + " must be positive");
  return v;
}

// Relative names that do not exist as given are looked up in the data directory.
std::string resolve_file(const std::string& key, const std::string& path, const std::string& data_dir) {
  if (std::filesystem::is_regular_file(path)) return path;
  const std::filesystem::path p(path);
  if (p.is_relative()) {
    const auto in_data = std::filesystem::path(data_dir) / p;
    if (std::filesystem::is_regular_file(in_data)) return in_data.string();
  }
  throw ValidationError(key + ": file '" + path + "' does not exist");
}

std::vector<double> gap_grid(const Settings& s) {
  std::vector<double> gaps_um;
  const bool has_single = s.count("gap_um") > 0;
  const bool has_list = s.count("gaps_um") > 0;
  const bool has_range = s.count("gap_min_um") > 0 || s.count("gap_max_um") > 0;
  if (static_cast<int>(has_single) + static_cast<int>(has_list) + static_cast<int>(has_range) > 1)
    throw ValidationError("give exactly one of gap_um, gaps_um or gap_min_um/gap_max_um");
  if (has_single) {
    gaps_um.push_back(parse_double("gap_um", s.at("gap_um")));
  } else if (has_list) {
    for (const auto& item : split_list(s.at("gaps_um"))) gaps_um.push_back(parse_double("gaps_um", item));
  } else if (has_range) {
    if (!s.count("gap_min_um") || !s.count("gap_max_um"))
      throw ValidationError("a gap range needs both gap_min_um and gap_max_um");
    const double lo = positive("gap_min_um", parse_double("gap_min_um", s.at("gap_min_um")));
    const double hi = positive("gap_max_um", parse_double("gap_max_um", s.at("gap_max_um")));
    if (!(hi >= lo)) throw ValidationError("gap_max_um must not be below gap_min_um");
    const int points = s.count("gap_points") ? parse_int("gap_points", s.at("gap_points")) : 10;
    if (points < 1) throw ValidationError("gap_points must be >= 1");
    const std::string spacing = s.count("gap_spacing") ? s.at("gap_spacing") : "lin";
    if (spacing != "lin" && spacing != "log") throw ValidationError("gap_spacing must be lin or log");
    for (int i = 0; i < points; ++i) {
      const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
      gaps_um.push_back(spacing == "lin" ? lo + f * (hi - lo) : lo * std::pow(hi / lo, f));
    }
  }
  std::vector<double> gaps;
  for (double g : gaps_um) gaps.push_back(units::um_to_m(positive("gap", g)));
  return gaps;
}

}  // namespace

const std::vector<SettingSpec>& setting_specs() {
  static const std::vector<SettingSpec> specs{
      {"radius_um", "sphere radius R in um"},
      {"gap_um", "single minimum gap a in um"},
      {"gaps_um", "comma separated list of gaps in um"},
      {"gap_min_um", "first gap of a grid, um"},
      {"gap_max_um", "last gap of a grid, um"},
      {"gap_points", "number of grid points (default 10)"},
      {"gap_spacing", "lin or log grid spacing (default lin)"},
      {"temperature_K", "temperature in K (default 300)"},
      {"material", "drude, plasma or tabulated (default drude)"},
      {"wp_eV", "plasma frequency in eV (default 9.0); also the tabulated low-frequency tail"},
      {"gamma_eV", "Drude relaxation rate in eV (default 0.035)"},
      {"optical_data", "optical data file for material = tabulated"},
      {"theta_table", "theta table file (default: shipped Au table)"},
      {"format", "csv or json (default csv)"},
      {"output", "output file (default stdout)"},
      {"oracle", "also evaluate the scattering oracle (force, gradient)"},
      {"quantity", "force or gradient (compare); free_energy or force (converge)"},
      {"l_max", "oracle multipole cutoff (default ceil(6 R/a))"},
      {"m_max", "oracle azimuthal cutoff (default ceil(6 sqrt(R/a)))"},
      {"n_max", "oracle Matsubara cutoff (default ceil(10 lambda_T/a))"},
      {"nodes", "oracle quadrature nodes per block (default l_max + 40)"},
      {"matsubara_factor", "PFA Matsubara cutoff factor, n_max = factor lambda_T/a (default 10)"},
      {"series_tol", "relative tolerance of the n = 0 series (default 1e-12)"},
      {"schedule", "comma separated ascending l_max values (converge)"},
      {"target", "convergence target for successive deltas (default 1e-4)"},
  };
  return specs;
}

Settings parse_settings(std::istream& in) {
  Settings out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config: expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_key(key)) throw ValidationError("config: unknown key '" + key + "'", line_no);
    if (value.empty()) throw ValidationError("config: empty value for '" + key + "'", line_no);
    out[key] = value;
  }
  return out;
}

Settings load_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  return parse_settings(in);
}

RunConfig build_config(const Settings& s, const std::string& command,
                       const std::string& default_data_dir) {
  for (const auto& [key, value] : s)
    if (!known_key(key)) throw ValidationError("unknown setting '" + key + "'");

  RunConfig c;
  const bool needs_sphere = command != "theta";
  if (needs_sphere) {
    if (!s.count("radius_um")) throw ValidationError("radius_um is required");
    c.radius = units::um_to_m(positive("radius_um", parse_double("radius_um", s.at("radius_um"))));
  } else if (s.count("radius_um")) {
    c.radius = units::um_to_m(positive("radius_um", parse_double("radius_um", s.at("radius_um"))));
  }
  c.gaps = gap_grid(s);
  if (needs_sphere && c.gaps.empty()) throw ValidationError("no gap given (gap_um, gaps_um or a gap range)");
  if (command == "converge" && c.gaps.size() != 1) throw ValidationError("converge takes a single gap_um");

  if (s.count("temperature_K"))
    c.temperature = positive("temperature_K", parse_double("temperature_K", s.at("temperature_K")));
  if (s.count("material")) c.material_kind = s.at("material");
  if (c.material_kind != "drude" && c.material_kind != "plasma" && c.material_kind != "tabulated")
    throw ValidationError("material must be drude, plasma or tabulated");
  if (s.count("wp_eV")) c.wp_ev = positive("wp_eV", parse_double("wp_eV", s.at("wp_eV")));
  if (s.count("gamma_eV")) {
    c.gamma_ev = parse_double("gamma_eV", s.at("gamma_eV"));
    if (c.gamma_ev < 0.0) throw ValidationError("gamma_eV must be >= 0");
  }
  if (c.material_kind == "tabulated") {
    if (!s.count("optical_data")) throw ValidationError("material = tabulated needs optical_data");
    c.optical_data = resolve_file("optical_data", s.at("optical_data"), default_data_dir);
    c.optical_table = std::make_shared<const OpticalDataTable>(load_optical_data_file(
        c.optical_data, {units::ev_to_rad_per_s(c.wp_ev), units::ev_to_rad_per_s(c.gamma_ev)}));
  } else if (s.count("optical_data")) {
    throw ValidationError("optical_data is only used with material = tabulated");
  }

  if (command != "converge") {
    c.theta_table = s.count("theta_table") ? s.at("theta_table") : default_data_dir + "/au_theta_300K.txt";
    c.theta_table = resolve_file("theta_table", c.theta_table, default_data_dir);
    c.thetas = std::make_shared<const ThetaTable>(load_theta_table_file(c.theta_table));
  }

  if (s.count("format")) {
    const auto& f = s.at("format");
    if (f == "csv") c.format = OutputFormat::csv;
    else if (f == "json") c.format = OutputFormat::json;
    else throw ValidationError("format must be csv or json");
  }
  if (s.count("output")) c.output = s.at("output");
  if (s.count("oracle")) c.oracle = parse_bool("oracle", s.at("oracle"));

  if (s.count("quantity")) {
    const auto& q = s.at("quantity");
    if (command == "converge") {
      if (q == "free_energy") c.scan_quantity = ScanQuantity::free_energy;
      else if (q == "force") c.scan_quantity = ScanQuantity::force;
      else throw ValidationError("converge: quantity must be free_energy or force");
    } else {
      if (q == "force") c.quantity = Quantity::force;
      else if (q == "gradient") c.quantity = Quantity::gradient;
      else throw ValidationError("quantity must be force or gradient");
    }
  }

  auto optional_int = [&](const char* key, int minimum) -> std::optional<int> {
    if (!s.count(key)) return std::nullopt;
    const int v = parse_int(key, s.at(key));
    if (v < minimum) throw ValidationError(std::string(key) + " must be >= " + std::to_string(minimum));
    return v;
  };
  c.l_max = optional_int("l_max", 1);
  c.m_max = optional_int("m_max", 0);
  c.n_max = optional_int("n_max", 1);
  c.nodes = optional_int("nodes", 0).value_or(0);
  if (s.count("matsubara_factor"))
    c.matsubara_factor = positive("matsubara_factor", parse_double("matsubara_factor", s.at("matsubara_factor")));
  if (s.count("series_tol")) {
    c.series_tolerance = parse_double("series_tol", s.at("series_tol"));
    if (!(c.series_tolerance > 0.0 && c.series_tolerance <= 1e-6))
      throw ValidationError("series_tol must lie in (0, 1e-6]");
  }
  if (s.count("target")) c.target = positive("target", parse_double("target", s.at("target")));

  if (command == "converge") {
    if (s.count("schedule")) {
      for (const auto& item : split_list(s.at("schedule"))) c.schedule.push_back(parse_int("schedule", item));
    } else {
      const int base = ceil_count(6.0 * c.radius / c.gaps.front());
      c.schedule = {std::max(1, base / 2), base, 2 * base};
    }
    if (c.schedule.empty()) throw ValidationError("schedule is empty");
    for (std::size_t i = 1; i < c.schedule.size(); ++i)
      if (!(c.schedule[i] > c.schedule[i - 1])) throw ValidationError("schedule must be strictly ascending");
    const int floor = ceil_count(c.radius / c.gaps.front());
    if (c.schedule.front() < floor)
      throw ValidationError("schedule starts below the geometric floor ceil(R/a) = " + std::to_string(floor));
  }
  return c;
}

MaterialModel make_material(const RunConfig& c) {
  const double wp = units::ev_to_rad_per_s(c.wp_ev);
  if (c.material_kind == "plasma") return MaterialModel::plasma(wp);
  if (c.material_kind == "tabulated") return MaterialModel::tabulated(c.optical_table);
  return MaterialModel::drude(wp, units::ev_to_rad_per_s(c.gamma_ev));
}

MultipoleTruncation truncation_for(const RunConfig& c, double gap) {
  const Geometry geom(c.radius, gap);
  MultipoleTruncation t = MultipoleTruncation::defaults(geom, c.temperature);
  if (c.l_max) t.l_max = *c.l_max;
  if (c.n_max) t.n_max = *c.n_max;
  t.m_max = c.m_max ? *c.m_max : std::min(t.m_max, t.l_max);
  t.nodes = c.nodes;
  t.validate(geom);
  return t;
}

std::string canonical_settings(const Settings& settings) {
  std::string out;
  for (const auto& [key, value] : settings) {
    if (key == "output") continue;
    out += key + "=" + value + ";";
  }
  return out;
}

std::uint64_t settings_hash(const Settings& settings) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char ch : canonical_settings(settings)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace casimir::cli
