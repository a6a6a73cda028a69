#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "catsim/config.hpp"

namespace catsim {

struct RunOptions {
  std::filesystem::path out_dir = "out";
  int workers = 1;
  bool quiet = false;
};

/// Outcome of a run. Numerical failures do not throw: partial outputs are
/// kept, the failure is recorded in meta.json and `ok` is false.
struct RunSummary {
  bool ok = true;
  std::string status = "ok";  // ok | step_underflow | non_convergence | degenerate_kernel | numerical_error
  std::string message;
  std::vector<std::filesystem::path> files;  // relative to out_dir
};

/// Column order of timeseries.csv for a resolved config.
std::vector<std::string> timeseries_columns(const ScenarioConfig& config);
const std::vector<std::string>& sweep_columns();

/// Writes timeseries.csv, the requested snapshot files and meta.json. With
/// labeled initial states each case gets its own subdirectory.
RunSummary run_scenario(const ScenarioConfig& config, const RunOptions& options);

/// One full run per sweep value under point_<i>/, plus sweep.csv.
RunSummary run_sweep(const ScenarioConfig& config, const RunOptions& options);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace catsim
