#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kScratch = fs::path(CATSIM_TEST_SCRATCH) / "cli";

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CATSIM_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write_config(const std::string& name, const json& doc) {
  fs::create_directories(kScratch);
  const fs::path p = kScratch / name;
  std::ofstream(p) << doc.dump(2);
  return p;
}

json small_run() {
  return json::parse(R"({
    "system": "one_mode",
    "energy_unit": "eta_a",
    "mode_a": {"U": 1, "G": [1.4142135623730951, -1.4142135623730951], "gamma": 0.2, "eta": 1},
    "truncation": 14,
    "initial_state": [
      {"label": "vac", "state": {"type": "fock", "n": 0}},
      {"label": "one", "state": {"type": "fock", "n": 1}}
    ],
    "time": {"t_max": 1, "samples": 6},
    "steady_state": {"method": "propagate", "tol": 1e-6},
    "outputs": {
      "wigner": [{"mode": "a", "re": [-3, 3, 13], "im": [-3, 3, 13], "times": [0.4, "final"]}],
      "quadrature": [{"mode": "a", "phi": 0, "x": [-5, 5, 41], "times": ["final"]}],
      "components": {"k": 2, "times": ["final"]}
    }
  })");
}

std::vector<std::string> csv_rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  return rows;
}

}  // namespace

TEST(Cli, SchemaAndValidate) {
  EXPECT_EQ(run_cli("schema"), 0);
  const auto cfg = write_config("valid.json", small_run());
  EXPECT_EQ(run_cli("validate " + cfg.string() + " --quiet"), 0);
  EXPECT_EQ(run_cli("validate " + cfg.string() + " --truncation 10"), 0);
}

TEST(Cli, ValidationFailuresExitOne) {
  json bad = small_run();
  bad["mode_a"]["gamma"] = -0.2;
  EXPECT_EQ(run_cli("validate " + write_config("bad.json", bad).string()), 1);
  EXPECT_EQ(run_cli("run " + write_config("bad.json", bad).string() + " --out " + (kScratch / "bad").string()), 1);
  std::ofstream(kScratch / "broken.json") << "{ not json";
  EXPECT_EQ(run_cli("validate " + (kScratch / "broken.json").string()), 1);
  EXPECT_EQ(run_cli("validate " + (kScratch / "missing.json").string()), 1);
  EXPECT_EQ(run_cli("validate " + write_config("ok.json", small_run()).string() + " --truncation x"), 1);
  EXPECT_EQ(run_cli("sweep " + write_config("nosweep.json", small_run()).string()), 1);
  EXPECT_EQ(run_cli("frobnicate"), 1);
  EXPECT_EQ(run_cli(""), 1);
}

TEST(Cli, NumericalFailureExitsTwo) {
  json doc = small_run();
  doc["steady_state"] = json::parse(R"({"method": "propagate", "tol": 1e-14, "t_max": 0.2})");
  const fs::path out = kScratch / "nonconv";
  fs::remove_all(out);
  EXPECT_EQ(run_cli("run " + write_config("nonconv.json", doc).string() + " --quiet --out " + out.string()), 2);
  // Partial outputs are kept and the failure is flagged.
  const json meta = json::parse(slurp(out / "meta.json"));
  EXPECT_EQ(meta["status"], "non_convergence");
  EXPECT_TRUE(fs::exists(out / "vac" / "timeseries.csv"));
}

TEST(Cli, RunIsDeterministic) {
  const auto cfg = write_config("det.json", small_run());
  const fs::path a = kScratch / "det_a", b = kScratch / "det_b";
  fs::remove_all(a);
  fs::remove_all(b);
  ASSERT_EQ(run_cli("run " + cfg.string() + " --quiet --out " + a.string()), 0);
  ASSERT_EQ(run_cli("run " + cfg.string() + " --quiet --workers 2 --out " + b.string()), 0);
  int files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), a);
    ASSERT_TRUE(fs::exists(b / rel)) << rel;
    EXPECT_EQ(slurp(e.path()), slurp(b / rel)) << rel;
    ++files;
  }
  EXPECT_GE(files, 10);
  for (const char* name : {"timeseries.csv", "wigner_a_t0.4.csv", "wigner_a_t0.4.json", "wigner_a_final.csv",
                           "quadrature_a_phi0_final.csv", "components_final.json"}) {
    EXPECT_TRUE(fs::exists(a / "vac" / name)) << name;
  }
  const auto rows = csv_rows(a / "vac" / "timeseries.csv");
  EXPECT_EQ(rows.front(), "t,n_a,parity_a,entropy,purity,trace_drift");
  const json meta = json::parse(slurp(a / "meta.json"));
  EXPECT_EQ(meta["status"], "ok");
  EXPECT_EQ(meta["cases"].size(), 2u);
  const json comps = json::parse(slurp(a / "one" / "components_final.json"));
  EXPECT_EQ(comps["modes"]["a"].size(), 2u);
}

TEST(Cli, NullScenarioIsConstant) {
  const fs::path out = kScratch / "null";
  fs::remove_all(out);
  ASSERT_EQ(run_cli("run " + (fs::path(CATSIM_SCENARIO_DIR) / "null_scenario.json").string() + " --quiet --out " +
                    out.string()),
            0);
  const auto rows = csv_rows(out / "timeseries.csv");
  ASSERT_EQ(rows.size(), 12u);
  std::vector<double> first;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::istringstream in(rows[r]);
    std::vector<double> vals;
    for (std::string cell; std::getline(in, cell, ',');) vals.push_back(std::stod(cell));
    if (first.empty()) first = vals;
    for (std::size_t c = 1; c < vals.size(); ++c) EXPECT_NEAR(vals[c], first[c], 1e-12) << rows[r];
  }
}

TEST(Cli, SweepWritesSummary) {
  json doc = small_run();
  doc["initial_state"] = json::parse(R"({"type": "fock", "n": 0})");
  doc["outputs"] = json::object();
  doc["sweep"] = json::parse(R"({"parameter": "mode_a.gamma", "values": [0.1, 0.3]})");
  const fs::path out = kScratch / "sweep";
  fs::remove_all(out);
  ASSERT_EQ(run_cli("sweep " + write_config("sweep.json", doc).string() + " --quiet --workers 2 --out " + out.string()),
            0);
  const auto rows = csv_rows(out / "sweep.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "value,alpha_abs,alpha_arg,max_fidelity,final_purity,final_entropy,min_wigner,converged");
  EXPECT_EQ(rows[1].rfind("0.1,", 0), 0u);
  EXPECT_TRUE(fs::exists(out / "point_001" / "meta.json"));
}
