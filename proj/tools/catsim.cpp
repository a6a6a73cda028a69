// catsim command-line front end.
//
//   catsim run <config.json>      evolve / steady state, write timeseries and snapshots
//   catsim sweep <config.json>    one run per sweep value plus sweep.csv
//   catsim validate <config.json> parse and print the resolved config
//   catsim schema                 print the config JSON schema
//
// Exit codes: 0 success, 1 validation failure, 2 numerical failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "catsim/config.hpp"
#include "catsim/diagnostics.hpp"
#include "catsim/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct Truncation {
  int na = 0;
  std::optional<int> nb;
};

Truncation parse_truncation(const std::string& text) {
  Truncation t;
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const std::string first = text.substr(0, comma);
    t.na = std::stoi(first, &used);
    if (used != first.size()) throw std::invalid_argument(text);
    if (comma != std::string::npos) {
      const std::string second = text.substr(comma + 1);
      t.nb = std::stoi(second, &used);
      if (used != second.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw catsim::ValidationError("--truncation expects N or N,M (got '" + text + "')");
  }
  return t;
}

catsim::ScenarioConfig load(const std::string& path, const std::string& truncation) {
  nlohmann::json doc = catsim::load_json_file(path);
  if (!truncation.empty()) {
    const Truncation t = parse_truncation(truncation);
    catsim::override_truncation(doc, t.na, t.nb);
  }
  return catsim::parse_config(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven-dissipative cat-state simulator"};
  app.require_subcommand(1);

  std::string out_dir;
  int workers = 0;
  std::string truncation;
  bool quiet = false;
  app.add_option("--out", out_dir, "Output directory (overrides output_dir in the config)");
  app.add_option("--workers", workers, "Concurrent sweep points / cases")->check(CLI::PositiveNumber);
  app.add_option("--truncation", truncation, "Override truncation: N or N,M");
  app.add_flag("--quiet", quiet, "Suppress progress and warnings");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a scenario");
  run->add_option("config", config_path, "Scenario JSON")->required();
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("config", config_path, "Scenario JSON with a sweep block")->required();
  auto* validate = app.add_subcommand("validate", "Validate a scenario and print the resolved config");
  validate->add_option("config", config_path, "Scenario JSON")->required();
  auto* schema = app.add_subcommand("schema", "Print the scenario JSON schema");

  // Global flags are accepted after the subcommand too.
  for (auto* sub : {run, sweep, validate, schema}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  catsim::set_warnings_enabled(!quiet);

  try {
    if (schema->parsed()) {
      std::cout << catsim::config_schema();
      return kExitOk;
    }
    const catsim::ScenarioConfig config = load(config_path, truncation);
    if (validate->parsed()) {
      if (!quiet) std::cout << catsim::to_json(config).dump(2) << '\n';
      return kExitOk;
    }

    catsim::RunOptions opt;
    opt.out_dir = !out_dir.empty() ? out_dir : (!config.output_dir.empty() ? config.output_dir : "out");
    opt.workers = workers > 0 ? workers : config.workers;
    opt.quiet = quiet;

    catsim::RunSummary summary;
    if (sweep->parsed()) {
      if (!config.sweep) throw catsim::ValidationError("sweep: config has no sweep block");
      summary = catsim::run_sweep(config, opt);
    } else {
      summary = catsim::run_scenario(config, opt);
    }
    if (!summary.ok) {
      std::cerr << "catsim: numerical failure (" << summary.status << "): " << summary.message << '\n';
      return kExitNumerical;
    }
    if (!quiet) std::clog << "catsim: wrote " << summary.files.size() << " files to " << opt.out_dir.string() << '\n';
    return kExitOk;
  } catch (const catsim::ValidationError& e) {
    std::cerr << "catsim: invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const catsim::NumericalError& e) {
    std::cerr << "catsim: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "catsim: error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
