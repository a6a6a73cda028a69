#include "catsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "catsim/fock.hpp"
#include "schema_text.hpp"

namespace catsim {

using nlohmann::json;

namespace {

constexpr double kProbabilityTol = 1e-10;
constexpr double kUnitTol = 1e-9;

// Path-tracking view of a JSON node. Every error names the offending field.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError((path_.empty() ? std::string("config") : path_) + ": " + msg);
  }

  Node child(const std::string& key) const { return Node(j_.at(key), path_.empty() ? key : path_ + "." + key); }
  Node at(std::size_t i) const { return Node(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }
  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  void require_object(std::initializer_list<const char*> allowed) const {
    if (!j_.is_object()) fail("expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j_.items()) {
      if (!ok.count(key)) {
        Node(value, path_.empty() ? key : path_ + "." + key).fail("unknown field");
      }
    }
  }
  void require(const std::string& key) const {
    if (!has(key)) Node(json(), path_.empty() ? key : path_ + "." + key).fail("missing required field");
  }
  void require_array() const {
    if (!j_.is_array()) fail("expected an array");
  }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    const double v = j_.get<double>();
    if (!std::isfinite(v)) fail("must be finite");
    return v;
  }
  double number_or(const std::string& key, double fallback) const { return has(key) ? child(key).number() : fallback; }
  double nonneg(const std::string& key, double fallback) const {
    const double v = number_or(key, fallback);
    if (v < 0.0) child(key).fail("must be non-negative");
    return v;
  }
  double positive(const std::string& key, double fallback) const {
    const double v = number_or(key, fallback);
    if (!(v > 0.0)) {
      if (has(key)) child(key).fail("must be positive");
      fail("'" + key + "' must be positive");
    }
    return v;
  }
  long integer() const {
    if (!j_.is_number_integer() && !(j_.is_number_float() && j_.get<double>() == std::floor(j_.get<double>()))) {
      fail("expected an integer");
    }
    return j_.get<long>();
  }
  int int_in(long lo, long hi) const {
    const long v = integer();
    if (v < lo || v > hi) fail("must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
  }
  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  cplx complex() const {
    if (j_.is_number()) return {number(), 0.0};
    if (!j_.is_array() || j_.size() != 2) fail("expected a complex number [re, im]");
    return {at(0).number(), at(1).number()};
  }

 private:
  const json& j_;
  std::string path_;
};

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

ModeParams parse_mode(const Node& n) {
  n.require_object({"detuning", "U", "G", "gamma", "eta"});
  ModeParams p;
  p.detuning = n.number_or("detuning", 0.0);
  p.self_interaction = n.number_or("U", 0.0);
  if (n.has("G")) p.drive = n.child("G").complex();
  p.single_photon_decay = n.nonneg("gamma", 0.0);
  p.two_photon_decay = n.nonneg("eta", 0.0);
  return p;
}

json mode_json(const ModeParams& p) {
  return {{"detuning", p.detuning},
          {"U", p.self_interaction},
          {"G", complex_json(p.drive)},
          {"gamma", p.single_photon_decay},
          {"eta", p.two_photon_decay}};
}

CatParity parse_parity(const Node& n) {
  const std::string s = n.string();
  if (s == "even") return CatParity::Even;
  if (s == "odd") return CatParity::Odd;
  n.fail("parity must be 'even' or 'odd'");
}

StateSpec parse_state(const Node& n, bool two_mode, bool inside_product) {
  if (!n.raw().is_object()) n.fail("expected an initial-state object");
  n.require("type");
  const std::string type = n.child("type").string();
  StateSpec s;
  if (type == "fock") {
    n.require_object({"type", "n"});
    n.require("n");
    s.kind = StateSpec::Kind::Fock;
    s.n = n.child("n").int_in(0, 1'000'000);
  } else if (type == "superposition") {
    n.require_object({"type", "terms"});
    n.require("terms");
    const Node terms = n.child("terms");
    terms.require_array();
    if (terms.raw().empty()) terms.fail("needs at least one term");
    s.kind = StateSpec::Kind::Superposition;
    double norm2 = 0.0;
    std::set<int> seen;
    for (std::size_t i = 0; i < terms.raw().size(); ++i) {
      const Node t = terms.at(i);
      t.require_object({"n", "amplitude"});
      t.require("n");
      t.require("amplitude");
      const int k = t.child("n").int_in(0, 1'000'000);
      if (!seen.insert(k).second) t.child("n").fail("duplicate Fock index");
      const cplx c = t.child("amplitude").complex();
      norm2 += std::norm(c);
      s.terms.emplace_back(k, c);
    }
    if (!(norm2 > 0.0)) terms.fail("amplitudes are all zero");
    // Already-normalized input is kept bit-exact so resolved configs are stable.
    if (std::abs(norm2 - 1.0) > 8 * std::numeric_limits<double>::epsilon()) {
      for (auto& term : s.terms) term.second /= std::sqrt(norm2);
    }
  } else if (type == "mixture") {
    n.require_object({"type", "members"});
    n.require("members");
    const Node members = n.child("members");
    members.require_array();
    if (members.raw().empty()) members.fail("needs at least one member");
    s.kind = StateSpec::Kind::Mixture;
    double total = 0.0;
    for (std::size_t i = 0; i < members.raw().size(); ++i) {
      const Node m = members.at(i);
      m.require_object({"p", "state"});
      m.require("p");
      m.require("state");
      const double p = m.child("p").number();
      if (p < 0.0) m.child("p").fail("probability must be non-negative");
      total += p;
      s.probabilities.push_back(p);
      s.parts.push_back(parse_state(m.child("state"), two_mode, inside_product));
    }
    if (std::abs(total - 1.0) > kProbabilityTol) members.fail("probabilities sum to " + std::to_string(total) + ", expected 1");
  } else if (type == "coherent") {
    n.require_object({"type", "alpha"});
    n.require("alpha");
    s.kind = StateSpec::Kind::Coherent;
    s.alpha = n.child("alpha").complex();
  } else if (type == "cat") {
    n.require_object({"type", "xi", "parity"});
    n.require("xi");
    s.kind = StateSpec::Kind::Cat;
    const Node xi = n.child("xi");
    if (xi.raw().is_string()) {
      if (xi.string() != "steady") xi.fail("expected [re, im] or \"steady\"");
      s.steady_xi = true;
    } else {
      s.alpha = xi.complex();
    }
    s.parity = n.has("parity") ? parse_parity(n.child("parity")) : CatParity::Even;
    if (!s.steady_xi && s.parity == CatParity::Odd && s.alpha == cplx{}) n.fail("odd cat with xi = 0 is a null vector");
  } else if (type == "product") {
    n.require_object({"type", "a", "b"});
    if (!two_mode) n.fail("product states need a two-mode system");
    if (inside_product) n.fail("product states cannot be nested");
    n.require("a");
    n.require("b");
    s.kind = StateSpec::Kind::Product;
    s.parts.push_back(parse_state(n.child("a"), two_mode, true));
    s.parts.push_back(parse_state(n.child("b"), two_mode, true));
  } else {
    n.child("type").fail("unknown state type '" + type + "'");
  }
  return s;
}

// Two-mode systems need a product at the top (possibly inside a mixture).
void check_state_shape(const StateSpec& s, const Node& n, bool two_mode) {
  if (!two_mode) return;
  if (s.kind == StateSpec::Kind::Product) return;
  if (s.kind == StateSpec::Kind::Mixture) {
    for (const auto& p : s.parts) check_state_shape(p, n, two_mode);
    return;
  }
  n.fail("two-mode initial states must be products {\"type\": \"product\", \"a\": ..., \"b\": ...}");
}

json state_json(const StateSpec& s) {
  switch (s.kind) {
    case StateSpec::Kind::Fock: return {{"type", "fock"}, {"n", s.n}};
    case StateSpec::Kind::Superposition: {
      json terms = json::array();
      for (const auto& [k, c] : s.terms) terms.push_back({{"n", k}, {"amplitude", complex_json(c)}});
      return {{"type", "superposition"}, {"terms", terms}};
    }
    case StateSpec::Kind::Mixture: {
      json members = json::array();
      for (std::size_t i = 0; i < s.parts.size(); ++i) {
        members.push_back({{"p", s.probabilities[i]}, {"state", state_json(s.parts[i])}});
      }
      return {{"type", "mixture"}, {"members", members}};
    }
    case StateSpec::Kind::Coherent: return {{"type", "coherent"}, {"alpha", complex_json(s.alpha)}};
    case StateSpec::Kind::Cat:
      return {{"type", "cat"},
              {"xi", s.steady_xi ? json("steady") : complex_json(s.alpha)},
              {"parity", s.parity == CatParity::Even ? "even" : "odd"}};
    case StateSpec::Kind::Product: return {{"type", "product"}, {"a", state_json(s.parts[0])}, {"b", state_json(s.parts[1])}};
  }
  return {};
}

AxisSpec parse_axis(const Node& n) {
  if (!n.raw().is_array() || n.raw().size() != 3) n.fail("expected an axis [lo, hi, count]");
  AxisSpec a{n.at(0).number(), n.at(1).number(), n.at(2).int_in(1, 100'000)};
  if (a.count > 1 && !(a.hi > a.lo)) n.fail("axis needs hi > lo");
  return a;
}

json axis_json(const AxisSpec& a) { return json::array({a.lo, a.hi, a.count}); }

SnapshotTimes parse_times(const Node& n, const std::optional<TimeGrid>& grid) {
  n.require_array();
  if (n.raw().empty()) n.fail("needs at least one time");
  SnapshotTimes out;
  for (std::size_t i = 0; i < n.raw().size(); ++i) {
    const Node t = n.at(i);
    if (t.raw().is_string()) {
      if (t.string() != "final") t.fail("expected a time or \"final\"");
      out.final = true;
      continue;
    }
    const double v = t.number();
    if (!grid) t.fail("numeric snapshot times need a 'time' grid; use \"final\"");
    if (v < 0.0 || v > grid->t_max) t.fail("snapshot time outside [0, t_max]");
    out.times.push_back(v);
  }
  std::sort(out.times.begin(), out.times.end());
  out.times.erase(std::unique(out.times.begin(), out.times.end()), out.times.end());
  return out;
}

json times_json(const SnapshotTimes& s) {
  json out = json::array();
  for (double t : s.times) out.push_back(t);
  if (s.final) out.push_back("final");
  return out;
}

char parse_mode_name(const Node& n, bool two_mode) {
  const std::string m = n.string();
  if (m == "a") return 'a';
  if (m == "b") {
    if (!two_mode) n.fail("mode 'b' needs a two-mode system");
    return 'b';
  }
  n.fail("mode must be 'a' or 'b'");
}

SteadyStateMethod parse_method(const Node& n) {
  const std::string m = n.string();
  if (m == "propagate") return SteadyStateMethod::Propagate;
  if (m == "kernel") return SteadyStateMethod::Kernel;
  n.fail("method must be 'propagate' or 'kernel'");
}

OutputSpec parse_outputs(const Node& n, const ScenarioConfig& c) {
  n.require_object({"observables", "wigner", "quadrature", "joint_quadrature", "components"});
  OutputSpec o;
  const auto known = known_observables(c.system);
  if (n.has("observables")) {
    const Node list = n.child("observables");
    list.require_array();
    std::set<std::string> want;
    for (std::size_t i = 0; i < list.raw().size(); ++i) {
      const std::string name = list.at(i).string();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        list.at(i).fail("unknown observable '" + name + "' for this system");
      }
      want.insert(name);
    }
    for (const auto& k : known) {
      if (want.count(k)) o.observables.push_back(k);
    }
  } else {
    o.observables = known;
  }
  if (n.has("wigner")) {
    const Node list = n.child("wigner");
    list.require_array();
    for (std::size_t i = 0; i < list.raw().size(); ++i) {
      const Node w = list.at(i);
      w.require_object({"mode", "re", "im", "times"});
      WignerRequest r;
      if (w.has("mode")) r.mode = parse_mode_name(w.child("mode"), c.two_mode());
      if (w.has("re")) r.re = parse_axis(w.child("re"));
      if (w.has("im")) r.im = parse_axis(w.child("im"));
      w.require("times");
      r.at = parse_times(w.child("times"), c.time);
      o.wigner.push_back(std::move(r));
    }
  }
  if (n.has("quadrature")) {
    const Node list = n.child("quadrature");
    list.require_array();
    for (std::size_t i = 0; i < list.raw().size(); ++i) {
      const Node q = list.at(i);
      q.require_object({"mode", "phi", "x", "times"});
      QuadratureRequest r;
      if (q.has("mode")) r.mode = parse_mode_name(q.child("mode"), c.two_mode());
      r.phi = q.number_or("phi", 0.0);
      if (q.has("x")) r.x = parse_axis(q.child("x"));
      q.require("times");
      r.at = parse_times(q.child("times"), c.time);
      o.quadrature.push_back(std::move(r));
    }
  }
  if (n.has("joint_quadrature")) {
    const Node list = n.child("joint_quadrature");
    list.require_array();
    if (!c.two_mode() && !list.raw().empty()) list.fail("joint quadratures need a two-mode system");
    for (std::size_t i = 0; i < list.raw().size(); ++i) {
      const Node q = list.at(i);
      q.require_object({"xa", "xb", "times"});
      JointQuadratureRequest r;
      if (q.has("xa")) r.xa = parse_axis(q.child("xa"));
      if (q.has("xb")) r.xb = parse_axis(q.child("xb"));
      q.require("times");
      r.at = parse_times(q.child("times"), c.time);
      o.joint_quadrature.push_back(std::move(r));
    }
  }
  if (n.has("components")) {
    const Node comp = n.child("components");
    comp.require_object({"k", "modes", "times"});
    ComponentsRequest r;
    if (comp.has("k")) r.k = comp.child("k").int_in(1, 1'000'000);
    if (comp.has("modes")) {
      const Node modes = comp.child("modes");
      modes.require_array();
      if (modes.raw().empty()) modes.fail("needs at least one mode");
      for (std::size_t i = 0; i < modes.raw().size(); ++i) {
        const char m = parse_mode_name(modes.at(i), c.two_mode());
        if (std::find(r.modes.begin(), r.modes.end(), m) == r.modes.end()) r.modes.push_back(m);
      }
      std::sort(r.modes.begin(), r.modes.end());
    } else {
      r.modes.push_back('a');
      if (c.two_mode()) r.modes.push_back('b');
    }
    comp.require("times");
    r.at = parse_times(comp.child("times"), c.time);
    o.components = std::move(r);
  }
  return o;
}

// Fock indices beyond the truncation and similar problems only show up once
// the state is built against the model dimensions.
void check_buildable(const ScenarioConfig& c, const StateSpec& s, const Node& where) {
  try {
    build_initial_state(c, s);
  } catch (const ValidationError& e) {
    where.fail(e.what());
  }
}

void check_energy_unit(const Node& root, const ScenarioConfig& c) {
  const double eta = c.mode_a.two_photon_decay;
  if (c.energy_unit == EnergyUnit::Arbitrary) return;
  if (c.energy_unit == EnergyUnit::EtaA) {
    if (std::abs(eta - 1.0) > kUnitTol) {
      root.fail("energy_unit 'eta_a' requires mode_a.eta = 1 (got " + std::to_string(eta) + ")");
    }
  } else {
    if (eta != 0.0) root.fail("energy_unit 'abs_G_a_over_10' requires mode_a.eta = 0");
    if (std::abs(std::abs(c.mode_a.drive) - 10.0) > kUnitTol) {
      root.fail("energy_unit 'abs_G_a_over_10' requires |mode_a.G| = 10");
    }
  }
}

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::OneMode: return "one_mode";
    case SystemKind::TwoModeLinear: return "two_mode_linear";
    case SystemKind::TwoModeNonlinear: return "two_mode_nonlinear";
  }
  return "unknown";
}

std::string_view to_string(EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::EtaA: return "eta_a";
    case EnergyUnit::AbsGaOver10: return "abs_G_a_over_10";
    case EnergyUnit::Arbitrary: return "arbitrary";
  }
  return "unknown";
}

std::vector<std::string> known_observables(SystemKind kind) {
  if (kind == SystemKind::OneMode) return {"n_a", "parity_a", "entropy", "purity"};
  return {"n_a", "parity_a", "entropy", "purity", "n_b", "negativity", "mutual_information"};
}

ScenarioConfig parse_config(const json& doc) {
  const Node root(doc, "");
  root.require_object({"system", "energy_unit", "mode_a", "mode_b", "coupling", "truncation", "initial_state", "time",
                       "steady_state", "outputs", "tolerances", "sweep", "output_dir", "seed", "workers"});
  ScenarioConfig c;

  root.require("system");
  const std::string system = root.child("system").string();
  if (system == "one_mode") {
    c.system = SystemKind::OneMode;
  } else if (system == "two_mode_linear") {
    c.system = SystemKind::TwoModeLinear;
  } else if (system == "two_mode_nonlinear") {
    c.system = SystemKind::TwoModeNonlinear;
  } else {
    root.child("system").fail("expected one_mode, two_mode_linear or two_mode_nonlinear");
  }

  root.require("energy_unit");
  const std::string unit = root.child("energy_unit").string();
  if (unit == "eta_a") {
    c.energy_unit = EnergyUnit::EtaA;
  } else if (unit == "abs_G_a_over_10") {
    c.energy_unit = EnergyUnit::AbsGaOver10;
  } else if (unit == "arbitrary") {
    c.energy_unit = EnergyUnit::Arbitrary;
  } else {
    root.child("energy_unit").fail("expected eta_a, abs_G_a_over_10 or arbitrary");
  }

  root.require("mode_a");
  c.mode_a = parse_mode(root.child("mode_a"));
  check_energy_unit(root.child("mode_a"), c);
  if (c.two_mode()) {
    root.require("mode_b");
    c.mode_b = parse_mode(root.child("mode_b"));
    c.coupling = root.nonneg("coupling", 0.0);
    if (c.system == SystemKind::TwoModeNonlinear && c.mode_b.drive != cplx{}) {
      root.child("mode_b").child("G").fail("mode b has no two-photon drive under nonlinear coupling");
    }
  } else {
    if (root.has("mode_b")) root.child("mode_b").fail("only two-mode systems take mode_b");
    if (root.has("coupling")) root.child("coupling").fail("only two-mode systems take a coupling");
  }

  root.require("truncation");
  const Node trunc = root.child("truncation");
  if (trunc.raw().is_array()) {
    const std::size_t want = c.two_mode() ? 2 : 1;
    if (trunc.raw().size() != want) trunc.fail("expected " + std::to_string(want) + " truncation value(s)");
    c.na = trunc.at(0).int_in(4, 100'000);
    if (c.two_mode()) c.nb = trunc.at(1).int_in(4, 100'000);
  } else {
    c.na = trunc.int_in(4, 100'000);
    if (c.two_mode()) c.nb = c.na;
  }

  if (root.has("time")) {
    const Node t = root.child("time");
    t.require_object({"t_max", "samples"});
    t.require("t_max");
    t.require("samples");
    TimeGrid g{t.positive("t_max", 0.0), t.child("samples").int_in(2, 10'000'000)};
    c.time = g;
  }
  if (root.has("steady_state")) {
    const Node s = root.child("steady_state");
    s.require_object({"method", "tol", "check_interval", "t_max", "degeneracy"});
    SteadyStateSpec spec;
    if (s.has("method")) spec.method = parse_method(s.child("method"));
    spec.tol = s.positive("tol", spec.tol);
    spec.check_interval = s.positive("check_interval", spec.check_interval);
    spec.t_max = s.positive("t_max", spec.t_max);
    spec.degeneracy = s.positive("degeneracy", spec.degeneracy);
    c.steady_state = spec;
  }
  if (!c.time && !c.steady_state) root.fail("needs a 'time' grid, a 'steady_state' block, or both");

  root.require("initial_state");
  const Node init = root.child("initial_state");
  if (init.raw().is_array()) {
    if (init.raw().empty()) init.fail("needs at least one case");
    c.labeled_cases = true;
    std::set<std::string> labels;
    for (std::size_t i = 0; i < init.raw().size(); ++i) {
      const Node item = init.at(i);
      item.require_object({"label", "state"});
      item.require("label");
      item.require("state");
      const std::string label = item.child("label").string();
      if (label.empty() || label.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-") !=
                               std::string::npos) {
        item.child("label").fail("labels must be non-empty and use [A-Za-z0-9_-]");
      }
      if (!labels.insert(label).second) item.child("label").fail("duplicate label");
      StateSpec s = parse_state(item.child("state"), c.two_mode(), false);
      check_state_shape(s, item.child("state"), c.two_mode());
      check_buildable(c, s, item.child("state"));
      c.cases.push_back({label, std::move(s)});
    }
  } else {
    StateSpec s = parse_state(init, c.two_mode(), false);
    check_state_shape(s, init, c.two_mode());
    check_buildable(c, s, init);
    c.cases.push_back({"", std::move(s)});
  }

  if (root.has("outputs")) {
    c.outputs = parse_outputs(root.child("outputs"), c);
  } else {
    c.outputs.observables = known_observables(c.system);
  }

  if (root.has("tolerances")) {
    const Node t = root.child("tolerances");
    t.require_object({"rel_tol", "abs_tol", "initial_step", "max_step"});
    c.tolerances.rel_tol = t.positive("rel_tol", c.tolerances.rel_tol);
    c.tolerances.abs_tol = t.positive("abs_tol", c.tolerances.abs_tol);
    c.tolerances.initial_step = t.positive("initial_step", c.tolerances.initial_step);
    c.tolerances.max_step = t.positive("max_step", c.tolerances.max_step);
  }

  if (root.has("sweep")) {
    const Node s = root.child("sweep");
    s.require_object({"parameter", "values"});
    s.require("parameter");
    s.require("values");
    SweepSpec sw;
    sw.parameter = s.child("parameter").string();
    if (sw.parameter.empty()) s.child("parameter").fail("must not be empty");
    const Node values = s.child("values");
    values.require_array();
    if (values.raw().empty()) values.fail("sweep needs at least one value");
    for (std::size_t i = 0; i < values.raw().size(); ++i) sw.values.push_back(values.at(i).number());
    c.sweep = std::move(sw);
  }

  if (c.sweep) {
    if (c.cases.size() != 1) root.child("sweep").fail("sweeps take a single initial state");
    if (!c.steady_state) root.child("sweep").fail("sweeps need a 'steady_state' block");
  }

  if (root.has("output_dir")) c.output_dir = root.child("output_dir").string();
  if (root.has("seed")) {
    const long s = root.child("seed").integer();
    if (s < 0) root.child("seed").fail("must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (root.has("workers")) c.workers = root.child("workers").int_in(1, 4096);
  if (c.sweep) {
    json resolved = to_json(c);
    try {
      numeric_field(resolved, c.sweep->parameter);
    } catch (const ValidationError& e) {
      root.child("sweep").child("parameter").fail(e.what());
    }
  }
  return c;
}

json to_json(const ScenarioConfig& c) {
  json doc;
  doc["system"] = std::string(to_string(c.system));
  doc["energy_unit"] = std::string(to_string(c.energy_unit));
  doc["mode_a"] = mode_json(c.mode_a);
  if (c.two_mode()) {
    doc["mode_b"] = mode_json(c.mode_b);
    doc["coupling"] = c.coupling;
    doc["truncation"] = json::array({c.na, c.nb});
  } else {
    doc["truncation"] = c.na;
  }
  if (c.labeled_cases) {
    json cases = json::array();
    for (const auto& k : c.cases) cases.push_back({{"label", k.label}, {"state", state_json(k.state)}});
    doc["initial_state"] = cases;
  } else {
    doc["initial_state"] = state_json(c.cases.front().state);
  }
  if (c.time) doc["time"] = {{"t_max", c.time->t_max}, {"samples", c.time->samples}};
  if (c.steady_state) {
    const auto& s = *c.steady_state;
    doc["steady_state"] = {{"method", s.method == SteadyStateMethod::Propagate ? "propagate" : "kernel"},
                           {"tol", s.tol},
                           {"check_interval", s.check_interval},
                           {"t_max", s.t_max},
                           {"degeneracy", s.degeneracy}};
  }
  json out;
  out["observables"] = c.outputs.observables;
  json w = json::array();
  for (const auto& r : c.outputs.wigner) {
    json item = {{"mode", std::string(1, r.mode)}, {"times", times_json(r.at)}};
    if (r.re) item["re"] = axis_json(*r.re);
    if (r.im) item["im"] = axis_json(*r.im);
    w.push_back(item);
  }
  out["wigner"] = w;
  json q = json::array();
  for (const auto& r : c.outputs.quadrature) {
    q.push_back({{"mode", std::string(1, r.mode)}, {"phi", r.phi}, {"x", axis_json(r.x)}, {"times", times_json(r.at)}});
  }
  out["quadrature"] = q;
  json jq = json::array();
  for (const auto& r : c.outputs.joint_quadrature) {
    jq.push_back({{"xa", axis_json(r.xa)}, {"xb", axis_json(r.xb)}, {"times", times_json(r.at)}});
  }
  out["joint_quadrature"] = jq;
  if (c.outputs.components) {
    const auto& r = *c.outputs.components;
    json modes = json::array();
    for (char m : r.modes) modes.push_back(std::string(1, m));
    out["components"] = {{"k", r.k}, {"modes", modes}, {"times", times_json(r.at)}};
  }
  doc["outputs"] = out;
  doc["tolerances"] = {{"rel_tol", c.tolerances.rel_tol},
                       {"abs_tol", c.tolerances.abs_tol},
                       {"initial_step", c.tolerances.initial_step},
                       {"max_step", c.tolerances.max_step}};
  if (c.sweep) doc["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}};
  if (!c.output_dir.empty()) doc["output_dir"] = c.output_dir;
  doc["seed"] = c.seed;
  doc["workers"] = c.workers;
  return doc;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  try {
    return json::parse(in, nullptr, true, false);
  } catch (const json::parse_error& e) {
    throw ValidationError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

json& numeric_field(json& doc, std::string_view dotted) {
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key(dotted.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (key.empty()) throw ValidationError("empty segment in path '" + std::string(dotted) + "'");
    if (node->is_object() && node->contains(key)) {
      node = &(*node)[key];
    } else if (node->is_array() && key.find_first_not_of("0123456789") == std::string::npos &&
               std::stoul(key) < node->size()) {
      node = &(*node)[std::stoul(key)];
    } else {
      throw ValidationError("'" + std::string(dotted) + "' does not name a field of the resolved config");
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  if (!node->is_number()) throw ValidationError("'" + std::string(dotted) + "' is not a numeric field");
  return *node;
}

void override_truncation(json& doc, int na, std::optional<int> nb) {
  if (nb) {
    doc["truncation"] = json::array({na, *nb});
  } else {
    const bool two = doc.contains("system") && doc["system"].is_string() && doc["system"] != "one_mode";
    doc["truncation"] = two ? json::array({na, na}) : json(na);
  }
}

std::string_view config_schema() { return detail::kScenarioSchema; }

SystemModel build_model(const ScenarioConfig& c) {
  switch (c.system) {
    case SystemKind::OneMode: return build_one_mode(c.mode_a, c.na);
    case SystemKind::TwoModeLinear:
      return build_two_mode(c.mode_a, c.mode_b, {CouplingKind::Linear, c.coupling}, c.na, c.nb);
    case SystemKind::TwoModeNonlinear:
      return build_two_mode(c.mode_a, c.mode_b, {CouplingKind::Nonlinear, c.coupling}, c.na, c.nb);
  }
  throw ValidationError("unknown system kind");
}

namespace {

Matrix single_mode_state(const StateSpec& s, const ModeParams& mode, int n) {
  switch (s.kind) {
    case StateSpec::Kind::Fock: {
      const Vector v = fock_state(s.n, n).vector();
      return v * v.adjoint();
    }
    case StateSpec::Kind::Superposition: {
      Vector v = Vector::Zero(n);
      for (const auto& [k, c] : s.terms) {
        if (k >= n) {
          throw ValidationError("superposition term |" + std::to_string(k) + "> outside truncation " +
                                std::to_string(n));
        }
        v(k) = c;
      }
      const Vector u = StateVector::normalized(std::move(v)).vector();
      return u * u.adjoint();
    }
    case StateSpec::Kind::Mixture: {
      Matrix m = Matrix::Zero(n, n);
      for (std::size_t i = 0; i < s.parts.size(); ++i) m += s.probabilities[i] * single_mode_state(s.parts[i], mode, n);
      return m;
    }
    case StateSpec::Kind::Coherent: {
      const Vector v = coherent_state(s.alpha, n).vector();
      return v * v.adjoint();
    }
    case StateSpec::Kind::Cat: {
      const cplx xi = s.steady_xi ? steady_alpha(mode) : s.alpha;
      const Vector v = cat_state(xi, s.parity, n).vector();
      return v * v.adjoint();
    }
    case StateSpec::Kind::Product: break;
  }
  throw ValidationError("product state inside a single mode");
}

Matrix two_mode_state(const StateSpec& s, const ScenarioConfig& c) {
  if (s.kind == StateSpec::Kind::Mixture) {
    Matrix m = Matrix::Zero(c.na * c.nb, c.na * c.nb);
    for (std::size_t i = 0; i < s.parts.size(); ++i) m += s.probabilities[i] * two_mode_state(s.parts[i], c);
    return m;
  }
  if (s.kind != StateSpec::Kind::Product) throw ValidationError("two-mode initial states must be products");
  return tensor_product(single_mode_state(s.parts[0], c.mode_a, c.na), single_mode_state(s.parts[1], c.mode_b, c.nb));
}

}  // namespace

DensityMatrix build_initial_state(const ScenarioConfig& c, const StateSpec& spec) {
  if (c.two_mode()) return DensityMatrix::from_matrix(two_mode_state(spec, c), BipartiteDims{c.na, c.nb});
  return DensityMatrix::from_matrix(single_mode_state(spec, c.mode_a, c.na));
}

}  // namespace catsim
