#include "catsim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "catsim/fock.hpp"
#include "catsim/observables.hpp"
#include "catsim/phasespace.hpp"

#ifndef CATSIM_VERSION
#define CATSIM_VERSION "unknown"
#endif

namespace catsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kDefaultGridPoints = 201;
constexpr double kDefaultGridMargin = 3.0;

std::mutex g_log_mutex;

void progress(bool quiet, const std::string& msg) {
  if (quiet) return;
  std::lock_guard lock(g_log_mutex);
  std::clog << msg << '\n';
}

// Single-threaded unless workers > 1; exceptions are rethrown in index order.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::clamp(workers, 1, std::max(n, 1));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

class CsvWriter {
 public:
  CsvWriter() = default;
  explicit CsvWriter(const fs::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot write '" + path.string() + "'");
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
};

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

std::string time_tag(double t) { return "t" + format_double(t); }

bool has_time(const SnapshotTimes& s, double t) { return std::binary_search(s.times.begin(), s.times.end(), t); }

std::vector<double> axis_values(const AxisSpec& a) { return linspace(a.lo, a.hi, a.count); }

double mode_scale(const ScenarioConfig& c, char mode) {
  const auto scale = [](const ModeParams& p) -> std::optional<double> {
    if (p.drive == cplx{}) return std::nullopt;
    try {
      return std::abs(steady_alpha(p));
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  if (mode == 'b' && c.two_mode()) {
    if (auto s = scale(c.mode_b)) return *s;
  }
  return scale(c.mode_a).value_or(0.0);
}

AxisSpec default_axis(const ScenarioConfig& c, char mode) {
  const double half = mode_scale(c, mode) + kDefaultGridMargin;
  return {-half, half, kDefaultGridPoints};
}

struct Reduced {
  DensityMatrix a;
  std::optional<DensityMatrix> b;
};

Reduced reduce(const ScenarioConfig& c, const DensityMatrix& rho) {
  if (!c.two_mode()) return {rho, std::nullopt};
  const BipartiteDims dims{c.na, c.nb};
  return {partial_trace(rho, dims, Subsystem::A), partial_trace(rho, dims, Subsystem::B)};
}

double mean_number(const Matrix& r) {
  double s = 0.0;
  for (Eigen::Index n = 0; n < r.rows(); ++n) s += static_cast<double>(n) * r(n, n).real();
  return s;
}

double mean_parity(const Matrix& r) {
  double s = 0.0;
  for (Eigen::Index n = 0; n < r.rows(); ++n) s += (n % 2 == 0 ? 1.0 : -1.0) * r(n, n).real();
  return s;
}

struct StateStats {
  double n = 0.0;
  double parity = 0.0;
  cplx a2{};
};

StateStats vector_stats(const Vector& v) {
  StateStats s;
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    const double p = std::norm(v(n));
    s.n += static_cast<double>(n) * p;
    s.parity += (n % 2 == 0 ? 1.0 : -1.0) * p;
    if (n >= 2) s.a2 += std::conj(v(n - 2)) * v(n) * std::sqrt(static_cast<double>(n * (n - 1)));
  }
  return s;
}

struct CaseResult {
  std::string label;
  fs::path dir;  // relative to the run root
  std::string status = "ok";
  std::string message;
  std::optional<DensityMatrix> final_state;
  double final_time = 0.0;
  bool converged = false;
  json steady = nullptr;
  double max_fidelity = kNaN;
  std::vector<fs::path> files;
};

class CaseRunner {
 public:
  CaseRunner(const ScenarioConfig& c, const InitialCase& ic, const fs::path& root)
      : c_(c), ic_(ic), root_(root) {
    res_.label = ic.label;
    res_.dir = c.labeled_cases ? fs::path(ic.label) : fs::path();
    fs::create_directories(root_ / res_.dir);
    if (c_.two_mode()) dims_ = BipartiteDims{c_.na, c_.nb};
    try {
      target_ = cat_state(steady_alpha(c_.mode_a), CatParity::Even, c_.na);
    } catch (const Error&) {
      target_.reset();
    }
  }

  CaseResult run() {
    const SystemModel model = build_model(c_);
    const DensityMatrix rho0 = build_initial_state(c_, ic_.state);
    open_timeseries();
    double offset = 0.0;  // start of the steady-state phase
    try {
      DensityMatrix current = rho0;
      if (c_.time) {
        current = run_time_grid(model, rho0);
        res_.final_time = c_.time->t_max;
      } else {
        sample(0.0, rho0, 0.0);
      }
      if (c_.steady_state) {
        offset = res_.final_time;
        current = run_steady_state(model, current, offset);
      }
      timeseries_.flush();
      res_.final_state = current;
      snapshots(current, res_.final_time, true);
    } catch (const StepUnderflow& e) {
      fail("step_underflow", e, offset);
    } catch (const NonConvergence& e) {
      fail("non_convergence", e, offset);
    } catch (const DegenerateKernel& e) {
      fail("degenerate_kernel", e, offset);
    } catch (const NumericalError& e) {
      fail("numerical_error", e, offset);
    }
    timeseries_.flush();
    return std::move(res_);
  }

 private:
  void fail(const char* status, const NumericalError& e, double offset) {
    res_.status = status;
    res_.message = e.what();
    res_.final_time = offset + e.time_reached();
  }

  fs::path rel(const std::string& name) const { return res_.dir / name; }

  void open_timeseries() {
    const fs::path p = rel("timeseries.csv");
    timeseries_ = CsvWriter(root_ / p);
    res_.files.push_back(p);
    timeseries_.row(timeseries_columns(c_));
  }

  DensityMatrix run_time_grid(const SystemModel& model, const DensityMatrix& rho0) {
    const std::vector<double> grid = linspace(0.0, c_.time->t_max, c_.time->samples);
    std::set<double> snaps;
    for (const auto& w : c_.outputs.wigner) snaps.insert(w.at.times.begin(), w.at.times.end());
    for (const auto& q : c_.outputs.quadrature) snaps.insert(q.at.times.begin(), q.at.times.end());
    for (const auto& q : c_.outputs.joint_quadrature) snaps.insert(q.at.times.begin(), q.at.times.end());
    if (c_.outputs.components) snaps.insert(c_.outputs.components->at.times.begin(), c_.outputs.components->at.times.end());
    const std::set<double> rows(grid.begin(), grid.end());
    std::set<double> all = rows;
    all.insert(snaps.begin(), snaps.end());
    const std::vector<double> times(all.begin(), all.end());

    const LindbladGenerator gen(model);
    auto r = integrate(gen, rho0.matrix(), 0.0, times, c_.tolerances,
                       [&](double t, const Matrix& m, const SampleDiagnostics& d) {
                         const auto rho = DensityMatrix::assume_valid(m, dims_);
                         if (rows.count(t)) sample(t, rho, d.trace_drift);
                         if (snaps.count(t)) snapshots(rho, t, false);
                       });
    return DensityMatrix::assume_valid(std::move(r.final_state), dims_);
  }

  DensityMatrix run_steady_state(const SystemModel& model, const DensityMatrix& start, double t_offset) {
    const auto& spec = *c_.steady_state;
    SteadyStateOptions opt;
    opt.tol = spec.tol;
    opt.check_interval = spec.check_interval;
    opt.t_max = spec.t_max;
    opt.degeneracy = spec.degeneracy;
    opt.integrator = c_.tolerances;
    if (spec.method == SteadyStateMethod::Kernel) {
      auto rep = kernel_steady_state(model, opt);
      res_.converged = true;
      res_.steady = {{"method", "kernel"}, {"residual", rep.residual}};
      return DensityMatrix::assume_valid(rep.state.matrix(), dims_);
    }
    const bool skip_first = c_.time.has_value();
    auto rep = propagate_to_steady_state(model, start, opt, [&](double t, const Matrix& m, const SampleDiagnostics& d) {
      if (skip_first && t == 0.0) return;
      sample(t_offset + t, DensityMatrix::assume_valid(m, dims_), d.trace_drift);
    });
    res_.converged = true;
    res_.final_time = t_offset + rep.time;
    res_.steady = {{"method", "propagate"}, {"time", t_offset + rep.time}, {"residual", rep.residual}, {"steps", rep.steps}};
    return DensityMatrix::assume_valid(rep.state.matrix(), dims_);
  }

  void sample(double t, const DensityMatrix& rho, double drift) {
    const Reduced red = reduce(c_, rho);
    if (target_) {
      const double f = fidelity_pure(*target_, red.a);
      if (!(res_.max_fidelity >= f)) res_.max_fidelity = f;
    }
    std::vector<std::string> cells{format_double(t)};
    for (const auto& name : c_.outputs.observables) {
      double v = kNaN;
      if (name == "n_a") {
        v = mean_number(red.a.matrix());
      } else if (name == "parity_a") {
        v = mean_parity(red.a.matrix());
      } else if (name == "entropy") {
        v = von_neumann_entropy(rho);
      } else if (name == "purity") {
        v = purity(rho);
      } else if (name == "n_b") {
        v = mean_number(red.b->matrix());
      } else if (name == "negativity") {
        v = negativity(rho, *dims_);
      } else if (name == "mutual_information") {
        v = mutual_information(rho, *dims_);
      }
      cells.push_back(format_double(v));
    }
    cells.push_back(format_double(drift));
    timeseries_.row(cells);
  }

  const DensityMatrix& mode_state(const Reduced& red, char mode) const { return mode == 'b' ? *red.b : red.a; }

  void snapshots(const DensityMatrix& rho, double t, bool final) {
    const auto wanted = [&](const SnapshotTimes& s) { return final ? s.final : has_time(s, t); };
    const std::string tag = final ? "final" : time_tag(t);
    std::optional<Reduced> red;
    const auto reduced = [&]() -> const Reduced& {
      if (!red) red = reduce(c_, rho);
      return *red;
    };

    const auto& wig = c_.outputs.wigner;
    for (std::size_t i = 0; i < wig.size(); ++i) {
      const auto& w = wig[i];
      if (!wanted(w.at)) continue;
      const auto re = axis_values(w.re.value_or(default_axis(c_, w.mode)));
      const auto im = axis_values(w.im.value_or(default_axis(c_, w.mode)));
      const auto grid = wigner(mode_state(reduced(), w.mode), re, im);
      const std::string stem = "wigner_" + std::string(1, w.mode) + "_" + tag + request_suffix(i, wig.size());
      write_grid_csv(rel(stem + ".csv"), "im\\re", grid.im_axis, grid.re_axis, grid.values);
      json doc = {{"mode", std::string(1, w.mode)},
                  {"t", final ? json("final") : json(t)},
                  {"re", grid.re_axis},
                  {"im", grid.im_axis}};
      json rows = json::array();
      for (Eigen::Index r = 0; r < grid.values.rows(); ++r) {
        std::vector<double> line(static_cast<std::size_t>(grid.values.cols()));
        for (Eigen::Index k = 0; k < grid.values.cols(); ++k) line[static_cast<std::size_t>(k)] = grid.values(r, k);
        rows.push_back(line);
      }
      doc["values"] = rows;
      add_json(rel(stem + ".json"), doc);
    }

    const auto& quad = c_.outputs.quadrature;
    for (std::size_t i = 0; i < quad.size(); ++i) {
      const auto& q = quad[i];
      if (!wanted(q.at)) continue;
      const auto xs = axis_values(q.x);
      const auto dist = quadrature_distribution(mode_state(reduced(), q.mode), q.phi, xs);
      const fs::path p = rel("quadrature_" + std::string(1, q.mode) + "_phi" + format_double(q.phi) + "_" + tag +
                             request_suffix(i, quad.size()) + ".csv");
      CsvWriter out(root_ / p);
      out.row({"x", "density"});
      for (std::size_t k = 0; k < xs.size(); ++k) out.row({format_double(xs[k]), format_double(dist.density[k])});
      res_.files.push_back(p);
    }

    const auto& joint = c_.outputs.joint_quadrature;
    for (std::size_t i = 0; i < joint.size(); ++i) {
      const auto& q = joint[i];
      if (!wanted(q.at)) continue;
      const auto xa = axis_values(q.xa);
      const auto xb = axis_values(q.xb);
      const Eigen::MatrixXd m = joint_quadrature_distribution(rho, *dims_, xa, xb);
      write_grid_csv(rel("joint_quadrature_" + tag + request_suffix(i, joint.size()) + ".csv"), "xa\\xb", xa, xb, m);
    }

    if (c_.outputs.components && wanted(c_.outputs.components->at)) {
      const auto& req = *c_.outputs.components;
      json doc = {{"t", final ? json("final") : json(t)}, {"k", req.k}};
      json modes = json::object();
      for (char m : req.modes) {
        json list = json::array();
        for (const auto& comp : dominant_eigencomponents(mode_state(reduced(), m), req.k)) {
          const auto s = vector_stats(comp.state.vector());
          list.push_back({{"weight", comp.weight}, {"mean_n", s.n}, {"parity", s.parity}});
        }
        modes[std::string(1, m)] = list;
      }
      doc["modes"] = modes;
      add_json(rel("components_" + tag + ".json"), doc);
    }
  }

  static std::string request_suffix(std::size_t i, std::size_t count) {
    return count > 1 ? "_r" + std::to_string(i) : std::string();
  }

  void write_grid_csv(const fs::path& p, const std::string& corner, const std::vector<double>& rows_axis,
                      const std::vector<double>& cols_axis, const Eigen::MatrixXd& values) {
    CsvWriter out(root_ / p);
    std::vector<std::string> header{corner};
    for (double v : cols_axis) header.push_back(format_double(v));
    out.row(header);
    for (std::size_t r = 0; r < rows_axis.size(); ++r) {
      std::vector<std::string> line{format_double(rows_axis[r])};
      for (Eigen::Index k = 0; k < values.cols(); ++k) line.push_back(format_double(values(static_cast<Eigen::Index>(r), k)));
      out.row(line);
    }
    res_.files.push_back(p);
  }

  void add_json(const fs::path& p, const json& doc) {
    write_json(root_ / p, doc);
    res_.files.push_back(p);
  }

  const ScenarioConfig& c_;
  const InitialCase& ic_;
  fs::path root_;
  std::optional<BipartiteDims> dims_;
  std::optional<StateVector> target_;
  CsvWriter timeseries_;
  CaseResult res_;
};

json conventions() {
  return {{"wigner", "W(alpha) = (2/pi) Tr[rho D(alpha) P D(alpha)^dag]; integral over d(Re alpha) d(Im alpha) is 1"},
          {"quadrature", "X_phi = (a^dag e^{i phi} + a e^{-i phi}) / sqrt(2); coherent |alpha> peaks at sqrt(2) Re(alpha e^{-i phi})"},
          {"grid_csv", "header row holds the column axis, first column holds the row axis (Wigner: rows are Im alpha)"},
          {"complex", "[re, im]"},
          {"bipartite_index", "i_a * N_b + i_b"},
          {"entropy", "natural log, total state"},
          {"purity", "Tr[rho^2] of the total state"}};
}

json status_counts(const std::vector<CaseResult>& results) {
  json cases = json::array();
  for (const auto& r : results) {
    json item = {{"label", r.label},
                 {"dir", r.dir.generic_string()},
                 {"status", r.status},
                 {"message", r.message},
                 {"final_time", r.final_time},
                 {"converged", r.converged},
                 {"max_fidelity_even_cat", std::isfinite(r.max_fidelity) ? json(r.max_fidelity) : json(nullptr)}};
    if (!r.steady.is_null()) item["steady_state"] = r.steady;
    json files = json::array();
    for (const auto& f : r.files) files.push_back(f.generic_string());
    item["files"] = files;
    cases.push_back(item);
  }
  return cases;
}

json base_meta(const ScenarioConfig& c) {
  json truncation = c.two_mode() ? json::array({c.na, c.nb}) : json::array({c.na});
  return {{"tool", "catsim"},
          {"version", CATSIM_VERSION},
          {"config", to_json(c)},
          {"truncation", truncation},
          {"conventions", conventions()}};
}

std::vector<CaseResult> run_cases(const ScenarioConfig& c, const fs::path& root, int workers, bool quiet) {
  std::vector<CaseResult> results(c.cases.size());
  parallel_for(static_cast<int>(c.cases.size()), workers, [&](int i) {
    const auto& ic = c.cases[static_cast<std::size_t>(i)];
    CaseRunner runner(c, ic, root);
    results[static_cast<std::size_t>(i)] = runner.run();
    const auto& r = results[static_cast<std::size_t>(i)];
    progress(quiet, "catsim: " + (ic.label.empty() ? std::string("run") : ic.label) + " finished (" + r.status + ")");
  });
  return results;
}

RunSummary summarize(const std::vector<CaseResult>& results) {
  RunSummary s;
  for (const auto& r : results) {
    for (const auto& f : r.files) s.files.push_back(f);
    if (r.status != "ok" && s.ok) {
      s.ok = false;
      s.status = r.status;
      s.message = (r.label.empty() ? std::string() : r.label + ": ") + r.message;
    }
  }
  return s;
}

struct SweepRow {
  double alpha_abs = kNaN;
  double alpha_arg = kNaN;
  double max_fidelity = kNaN;
  double purity = kNaN;
  double entropy = kNaN;
  double min_wigner = kNaN;
  bool converged = false;
};

SweepRow sweep_row(const ScenarioConfig& c, const CaseResult& r) {
  SweepRow row;
  row.max_fidelity = r.max_fidelity;
  row.converged = r.converged && r.status == "ok";
  if (!r.final_state) return row;
  const DensityMatrix rho_a = reduce(c, *r.final_state).a;
  row.purity = purity(rho_a);
  row.entropy = von_neumann_entropy(rho_a);
  // Heaviest eigencomponent in the even sector.
  for (const auto& comp : dominant_eigencomponents(rho_a, rho_a.dim())) {
    const auto s = vector_stats(comp.state.vector());
    if (s.parity > 0.0) {
      row.alpha_abs = std::sqrt(s.n);
      row.alpha_arg = 0.5 * std::arg(s.a2);
      break;
    }
  }
  const auto axis = axis_values(default_axis(c, 'a'));
  row.min_wigner = wigner(rho_a, axis, axis).values.minCoeff();
  return row;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> timeseries_columns(const ScenarioConfig& c) {
  std::vector<std::string> cols{"t"};
  cols.insert(cols.end(), c.outputs.observables.begin(), c.outputs.observables.end());
  cols.push_back("trace_drift");
  return cols;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{"value",        "alpha_abs",     "alpha_arg",  "max_fidelity",
                                             "final_purity", "final_entropy", "min_wigner", "converged"};
  return cols;
}

RunSummary run_scenario(const ScenarioConfig& c, const RunOptions& opt) {
  fs::create_directories(opt.out_dir);
  const auto results = run_cases(c, opt.out_dir, opt.workers, opt.quiet);
  RunSummary s = summarize(results);
  json meta = base_meta(c);
  meta["columns"] = {{"timeseries.csv", timeseries_columns(c)}};
  meta["cases"] = status_counts(results);
  meta["status"] = s.status;
  meta["message"] = s.message;
  write_json(opt.out_dir / "meta.json", meta);
  s.files.push_back("meta.json");
  return s;
}

RunSummary run_sweep(const ScenarioConfig& c, const RunOptions& opt) {
  if (!c.sweep) throw ValidationError("sweep: config has no sweep block");
  json base = to_json(c);
  base.erase("sweep");
  std::vector<ScenarioConfig> points;
  for (std::size_t i = 0; i < c.sweep->values.size(); ++i) {
    json doc = base;
    numeric_field(doc, c.sweep->parameter) = c.sweep->values[i];
    try {
      points.push_back(parse_config(doc));
    } catch (const ValidationError& e) {
      throw ValidationError("sweep.values[" + std::to_string(i) + "]: " + e.what());
    }
  }

  fs::create_directories(opt.out_dir);
  const int n = static_cast<int>(points.size());
  std::vector<CaseResult> results(points.size());
  std::vector<SweepRow> rows(points.size());
  const int width = static_cast<int>(std::to_string(std::max(n - 1, 0)).size());
  const auto point_dir = [&](int i) {
    std::string num = std::to_string(i);
    num.insert(0, static_cast<std::size_t>(std::max(0, std::max(width, 3) - static_cast<int>(num.size()))), '0');
    return fs::path("point_" + num);
  };

  parallel_for(n, opt.workers, [&](int i) {
    const auto& pc = points[static_cast<std::size_t>(i)];
    const fs::path dir = opt.out_dir / point_dir(i);
    fs::create_directories(dir);
    auto res = run_cases(pc, dir, 1, true);
    json meta = base_meta(pc);
    meta["columns"] = {{"timeseries.csv", timeseries_columns(pc)}};
    meta["cases"] = status_counts(res);
    const RunSummary ps = summarize(res);
    meta["status"] = ps.status;
    meta["message"] = ps.message;
    write_json(dir / "meta.json", meta);
    rows[static_cast<std::size_t>(i)] = sweep_row(pc, res.front());
    results[static_cast<std::size_t>(i)] = std::move(res.front());
    progress(opt.quiet, "catsim: sweep point " + std::to_string(i) + " (" + c.sweep->parameter + " = " +
                            format_double(c.sweep->values[static_cast<std::size_t>(i)]) + ") " +
                            results[static_cast<std::size_t>(i)].status);
  });

  RunSummary s;
  {
    CsvWriter out(opt.out_dir / "sweep.csv");
    out.row(sweep_columns());
    for (int i = 0; i < n; ++i) {
      const auto& r = rows[static_cast<std::size_t>(i)];
      out.row({format_double(c.sweep->values[static_cast<std::size_t>(i)]), format_double(r.alpha_abs),
               format_double(r.alpha_arg), format_double(r.max_fidelity), format_double(r.purity),
               format_double(r.entropy), format_double(r.min_wigner), r.converged ? "1" : "0"});
    }
  }
  s.files.push_back("sweep.csv");

  json meta = base_meta(c);
  meta["columns"] = {{"sweep.csv", sweep_columns()}, {"timeseries.csv", timeseries_columns(c)}};
  json pts = json::array();
  for (int i = 0; i < n; ++i) {
    const auto& r = results[static_cast<std::size_t>(i)];
    pts.push_back({{"value", c.sweep->values[static_cast<std::size_t>(i)]},
                   {"dir", point_dir(i).generic_string()},
                   {"status", r.status},
                   {"message", r.message}});
    for (const auto& f : r.files) s.files.push_back(point_dir(i) / f);
    if (r.status != "ok" && s.ok) {
      s.ok = false;
      s.status = r.status;
      s.message = "point " + std::to_string(i) + ": " + r.message;
    }
  }
  meta["points"] = pts;
  meta["status"] = s.status;
  meta["message"] = s.message;
  write_json(opt.out_dir / "meta.json", meta);
  s.files.push_back("meta.json");
  return s;
}

}  // namespace catsim
