#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "catsim/dynamics.hpp"
#include "catsim/models.hpp"
#include "catsim/types.hpp"

namespace catsim {

enum class SystemKind { OneMode, TwoModeLinear, TwoModeNonlinear };
// Arbitrary skips the normalization check (e.g. a fully undriven, lossless run).
enum class EnergyUnit { EtaA, AbsGaOver10, Arbitrary };

std::string_view to_string(SystemKind kind);
std::string_view to_string(EnergyUnit unit);

/// Initial-state description. Product is only meaningful for two-mode
/// systems and holds the a and b factors in `parts`.
struct StateSpec {
  enum class Kind { Fock, Superposition, Mixture, Coherent, Cat, Product };
  Kind kind = Kind::Fock;
  int n = 0;                                // Fock
  std::vector<std::pair<int, cplx>> terms;  // Superposition, normalized on load
  std::vector<double> probabilities;        // Mixture, one per part
  std::vector<StateSpec> parts;             // Mixture members or Product factors
  cplx alpha{};                             // Coherent amplitude or cat xi
  bool steady_xi = false;                   // Cat: xi taken from steady_alpha
  CatParity parity = CatParity::Even;
};

struct InitialCase {
  std::string label;  // empty for a single unlabeled initial state
  StateSpec state;
};

struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

/// Snapshot times. `final` means the last state of the run (the steady state
/// when one is requested).
struct SnapshotTimes {
  std::vector<double> times;
  bool final = false;
};

struct WignerRequest {
  char mode = 'a';
  std::optional<AxisSpec> re;  // default: +-(|alpha_ss| + 3), 201 points
  std::optional<AxisSpec> im;
  SnapshotTimes at;
};

struct QuadratureRequest {
  char mode = 'a';
  double phi = 0.0;
  AxisSpec x{-8.0, 8.0, 401};
  SnapshotTimes at;
};

struct JointQuadratureRequest {
  AxisSpec xa{-6.0, 6.0, 121};
  AxisSpec xb{-6.0, 6.0, 121};
  SnapshotTimes at;
};

struct ComponentsRequest {
  int k = 2;
  std::vector<char> modes;
  SnapshotTimes at;
};

struct OutputSpec {
  std::vector<std::string> observables;  // canonical order, resolved
  std::vector<WignerRequest> wigner;
  std::vector<QuadratureRequest> quadrature;
  std::vector<JointQuadratureRequest> joint_quadrature;
  std::optional<ComponentsRequest> components;
};

struct TimeGrid {
  double t_max = 0.0;
  int samples = 0;  // including t = 0
};

struct SteadyStateSpec {
  SteadyStateMethod method = SteadyStateMethod::Propagate;
  double tol = 1e-6;
  double check_interval = 0.1;
  double t_max = 1e4;
  double degeneracy = 1e-8;
};

struct SweepSpec {
  std::string parameter;  // dotted path into the resolved config, e.g. mode_a.gamma
  std::vector<double> values;
};

struct ScenarioConfig {
  SystemKind system = SystemKind::OneMode;
  EnergyUnit energy_unit = EnergyUnit::EtaA;
  ModeParams mode_a;
  ModeParams mode_b;
  double coupling = 0.0;
  int na = 0;
  int nb = 0;  // two-mode only
  std::vector<InitialCase> cases;
  bool labeled_cases = false;
  std::optional<TimeGrid> time;
  std::optional<SteadyStateSpec> steady_state;
  OutputSpec outputs;
  IntegratorOptions tolerances;
  std::optional<SweepSpec> sweep;
  std::string output_dir;
  std::uint64_t seed = 0;  // reserved
  int workers = 1;

  bool two_mode() const noexcept { return system != SystemKind::OneMode; }
};

/// Timeseries observables in column order. The applicable subset depends on
/// the system kind.
std::vector<std::string> known_observables(SystemKind kind);

/// Parses and validates. Errors are ValidationError with a field path prefix.
ScenarioConfig parse_config(const nlohmann::json& doc);

/// Fully resolved document (defaults filled in). parse_config(to_json(c))
/// reproduces c.
nlohmann::json to_json(const ScenarioConfig& config);

nlohmann::json load_json_file(const std::filesystem::path& path);

/// Numeric field addressed by a dotted path (array indices as numbers, e.g.
/// mode_a.G.1). Throws ValidationError when the path does not name a number.
nlohmann::json& numeric_field(nlohmann::json& doc, std::string_view dotted);

/// Replaces the truncation in a raw or resolved document.
void override_truncation(nlohmann::json& doc, int na, std::optional<int> nb);

/// The JSON schema shipped with the tool.
std::string_view config_schema();

SystemModel build_model(const ScenarioConfig& config);
DensityMatrix build_initial_state(const ScenarioConfig& config, const StateSpec& spec);

}  // namespace catsim
