// casimir-sp: sphere-plate Casimir force and gradient from the command line.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include "casimir/cli/commands.hpp"
#include "casimir/errors.hpp"

namespace {

using casimir::cli::Settings;

std::string flag_name(std::string key) {
  for (auto& ch : key)
    if (ch == '_') ch = '-';
  return "--" + key;
}

std::string data_dir() {
  if (const char* env = std::getenv("CASIMIR_DATA_DIR")) return env;
  return CASIMIR_DEFAULT_DATA_DIR;
}

int run(const std::string& command, const std::string& config_path, const Settings& flags) {
  Settings settings;
  if (!config_path.empty()) settings = casimir::cli::load_settings_file(config_path);
  for (const auto& [key, value] : flags) settings[key] = value;

  const auto config = casimir::cli::build_config(settings, command, data_dir());
  const auto result = casimir::cli::run_command(command, config, settings, std::cerr);

  std::ofstream file;
  if (!config.output.empty()) {
    file.open(config.output);
    if (!file) throw casimir::ValidationError("cannot write output file '" + config.output + "'");
  }
  std::ostream& out = config.output.empty() ? std::cout : file;
  if (config.format == casimir::cli::OutputFormat::json)
    casimir::cli::write_json(out, result.metadata, result.table);
  else
    casimir::cli::write_csv(out, result.metadata, result.table);
  return casimir::cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sphere-plate Casimir force and force gradient at finite temperature.\n"
               "Inputs in um, eV, K; outputs in SI plus mPa for F'/2 pi R.\n"
               "Thread count: CASIMIR_THREADS (default: all cores)."};
  app.set_version_flag("--version", CASIMIR_VERSION);
  app.require_subcommand(1);

  const std::map<std::string, std::string> descriptions{
      {"force", "semi-analytic force with n = 0 / n > 0 breakdown and PFA comparison"},
      {"gradient", "semi-analytic force gradient, including F'/2 pi R in mPa"},
      {"compare", "semi-analytic formula and PFA against the scattering oracle"},
      {"converge", "oracle convergence scan over an l_max schedule"},
      {"theta", "dump or interpolate the theta / theta_tilde table"}};

  std::string config_path;
  Settings flags;
  std::map<std::string, std::string> values;
  for (const auto& [name, text] : descriptions) {
    auto* sub = app.add_subcommand(name, text);
    sub->add_option("--config", config_path, "key = value config file; flags override it");
    for (const auto& spec : casimir::cli::setting_specs())
      sub->add_option(flag_name(spec.key), values[name + "/" + spec.key], spec.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? casimir::cli::kExitOk : casimir::cli::kExitValidation;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  for (const auto& spec : casimir::cli::setting_specs())
    if (sub->count(flag_name(spec.key)) > 0) flags[spec.key] = values[command + "/" + spec.key];

  try {
    return run(command, config_path, flags);
  } catch (const casimir::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return casimir::cli::kExitNumerical;
  } catch (const casimir::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return casimir::cli::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return casimir::cli::kExitNumerical;
  }
}
