// Acceptance run: one PASS/FAIL line per criterion on stdout, progress on
// stderr. Optional arguments restrict the run to the listed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "catsim/config.hpp"
#include "catsim/diagnostics.hpp"
#include "catsim/dynamics.hpp"
#include "catsim/fock.hpp"
#include "catsim/models.hpp"
#include "catsim/observables.hpp"
#include "catsim/phasespace.hpp"
#include "catsim/scenario.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace catsim;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Worst trace drift and most negative eigenvalue seen by any run below.
struct Health {
  double drift = 0.0;
  double min_eig = 0.0;
  void state(const Matrix& rho, double drift_now, bool spectrum = true) {
    drift = std::max(drift, drift_now);
    if (spectrum) min_eig = std::min(min_eig, hermitian_eigensystem(rho, 1e-8).values.minCoeff());
  }
} health;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ModeParams cat_mode(double gamma) {
  ModeParams p;
  p.self_interaction = 1.0;
  p.two_photon_decay = 1.0;
  p.drive = std::polar(10.0, -pi / 4);
  p.single_photon_decay = gamma;
  return p;
}

DensityMatrix fock_dm(int k, int n) { return DensityMatrix::pure(fock_state(k, n)); }

SteadyStateReport relax(const SystemModel& m, const DensityMatrix& rho0, double tol) {
  SteadyStateOptions opt;
  opt.tol = tol;
  return propagate_to_steady_state(m, rho0, opt, [](double, const Matrix& r, const SampleDiagnostics& d) {
    health.state(r, d.trace_drift, false);
  });
}

SteadyStateReport relax_checked(const SystemModel& m, const DensityMatrix& rho0, double tol) {
  auto rep = relax(m, rho0, tol);
  health.state(rep.state.matrix(), std::abs(rep.state.matrix().trace() - 1.0));
  return rep;
}

// Fidelities of the gamma = 0 steady states from |0> and |1> with the even and odd cats.
struct CatFidelities {
  double even = 0.0, odd = 0.0, seconds_even = 0.0, seconds_odd = 0.0;
};

CatFidelities cat_fidelities(int n) {
  const ModeParams p = cat_mode(0.0);
  const auto m = build_one_mode(p, n);
  const cplx alpha = steady_alpha(p);
  CatFidelities f;
  auto t0 = std::chrono::steady_clock::now();
  f.even = fidelity_pure(cat_state(alpha, CatParity::Even, n), relax_checked(m, fock_dm(0, n), 1e-8).state);
  f.seconds_even = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  f.odd = fidelity_pure(cat_state(alpha, CatParity::Odd, n), relax_checked(m, fock_dm(1, n), 1e-8).state);
  f.seconds_odd = seconds_since(t0);
  return f;
}

std::optional<CatFidelities> n40;

Outcome criterion1() {
  n40 = cat_fidelities(40);
  const bool pass = n40->even >= 0.99 && n40->odd >= 0.99 && n40->seconds_even <= 60 && n40->seconds_odd <= 60;
  return {pass, "F_even=" + fmt(n40->even) + " F_odd=" + fmt(n40->odd) + " time=" + fmt(n40->seconds_even) + "s/" +
                    fmt(n40->seconds_odd) + "s"};
}

Outcome criterion2() {
  const int n = 40;
  const auto m = build_one_mode(cat_mode(0.0), n);
  const Matrix parity = ladder_operators(FockSpace(n)).parity;
  Vector sup = Vector::Zero(n);
  sup(0) = sup(1) = 1.0 / std::sqrt(2.0);
  std::vector<double> times;
  for (int i = 1; i <= 100; ++i) times.push_back(0.05 * i);
  double worst = 0.0;
  for (const auto& rho0 : {fock_dm(0, n), fock_dm(1, n), DensityMatrix::pure(StateVector(sup))}) {
    const double p0 = expectation(parity, rho0).real();
    const auto traj = evolve(m, rho0, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      health.state(traj.states[i].matrix(), traj.diagnostics[i].trace_drift, i % 20 == 19);
      worst = std::max(worst, std::abs(expectation(parity, traj.states[i]).real() - p0));
    }
  }
  return {worst < 1e-6, "max|dP|=" + fmt(worst)};
}

Outcome criterion3() {
  const int n = 40;
  const ModeParams p = cat_mode(0.0);
  const auto m = build_one_mode(p, n);
  const Matrix mix = 0.5 * (fock_dm(0, n).matrix() + fock_dm(1, n).matrix());
  const auto rep = relax_checked(m, DensityMatrix::from_matrix(mix), 1e-8);
  const auto comps = dominant_eigencomponents(rep.state, 2);
  const cplx alpha = steady_alpha(p);
  const Vector even = cat_state(alpha, CatParity::Even, n).vector();
  const Vector odd = cat_state(alpha, CatParity::Odd, n).vector();
  // Match each component to whichever cat it resembles more.
  double f_even = 0.0, f_odd = 0.0;
  for (const auto& c : comps) {
    f_even = std::max(f_even, std::norm(even.dot(c.state.vector())));
    f_odd = std::max(f_odd, std::norm(odd.dot(c.state.vector())));
  }
  const bool pass = std::abs(comps[0].weight - 0.5) <= 0.01 && std::abs(comps[1].weight - 0.5) <= 0.01 &&
                    f_even >= 0.99 && f_odd >= 0.99;
  return {pass, "w=" + fmt(comps[0].weight) + "," + fmt(comps[1].weight) + " F_even=" + fmt(f_even) +
                    " F_odd=" + fmt(f_odd)};
}

Outcome criterion4() {
  const int n = 40;
  const auto rep = relax_checked(build_one_mode(cat_mode(0.1), n), fock_dm(0, n), 1e-6);
  const double pur = purity(rep.state), s = von_neumann_entropy(rep.state);
  const bool pass = rep.residual < 1e-6 && std::abs(pur - 0.5) <= 0.02 && std::abs(s - std::numbers::ln2) <= 0.02;
  return {pass, "purity=" + fmt(pur) + " entropy=" + fmt(s) + " t=" + fmt(rep.time) + " residual=" + fmt(rep.residual)};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error("missing column " + name);
  return static_cast<int>(it - header.begin());
}

Outcome criterion5() {
  // Runs the shipped sweep scenario end to end and reads sweep.csv back.
  const auto config = parse_config(load_json_file(fs::path(CATSIM_SCENARIO_DIR) / "gamma_sweep.json"));
  RunOptions opt;
  opt.out_dir = fs::path(CATSIM_TEST_SCRATCH) / "acceptance_sweep";
  opt.quiet = true;
  fs::remove_all(opt.out_dir);
  const auto summary = run_sweep(config, opt);
  if (!summary.ok) return {false, "sweep failed: " + summary.message};
  const auto rows = read_csv(opt.out_dir / "sweep.csv");
  const int cv = column(rows[0], "value"), ca = column(rows[0], "alpha_abs");
  std::vector<double> g, a;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    g.push_back(std::stod(rows[i][cv]));
    a.push_back(std::stod(rows[i][ca]));
  }
  for (const auto& e : fs::directory_iterator(opt.out_dir)) {
    if (!e.is_directory()) continue;
    const auto ts = read_csv(e.path() / "timeseries.csv");
    const int cd = column(ts[0], "trace_drift");
    for (std::size_t i = 1; i < ts.size(); ++i) health.drift = std::max(health.drift, std::stod(ts[i][cd]));
  }
  bool decreasing = a.size() == 6;
  for (std::size_t i = 1; i < a.size(); ++i) decreasing = decreasing && a[i] < a[i - 1];
  // Least-squares line and R^2.
  const double k = static_cast<double>(a.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sx += g[i];
    sy += a[i];
    sxx += g[i] * g[i];
    sxy += g[i] * a[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / k;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ss_res += std::pow(a[i] - (icpt + slope * g[i]), 2);
    ss_tot += std::pow(a[i] - sy / k, 2);
  }
  const double r2 = 1.0 - ss_res / ss_tot;
  return {decreasing && r2 >= 0.98,
          "|alpha|=" + fmt(a.front()) + ".." + fmt(a.back()) + " slope=" + fmt(slope) + " R2=" + fmt(r2)};
}

Outcome criterion6() {
  const auto ax = linspace(-4, 4, 41);
  const auto num = wigner(DensityMatrix::pure(cat_state(2.0, CatParity::Even, 40)), ax, ax);
  const auto ref = wigner_cat_analytic(2.0, CatParity::Even, ax, ax);
  const double err = (num.values - ref.values).cwiseAbs().maxCoeff();
  return {err < 1e-8, "max|dW|=" + fmt(err)};
}

Outcome criterion7() {
  const int n = 40;
  const auto steady = relax_checked(build_one_mode(cat_mode(0.3), n), fock_dm(0, n), 1e-6).state;
  const std::vector<std::pair<std::string, DensityMatrix>> states{
      {"vacuum", fock_dm(0, n)},
      {"coherent2", DensityMatrix::pure(coherent_state(2.0, n))},
      {"even_cat2", DensityMatrix::pure(cat_state(2.0, CatParity::Even, n))},
      {"odd_cat2", DensityMatrix::pure(cat_state(2.0, CatParity::Odd, n))},
      {"steady_g0.3", steady}};
  const auto ax = linspace(-8, 8, 321);
  const double cell = std::pow(ax[1] - ax[0], 2);
  bool pass = true;
  std::string detail;
  for (const auto& [name, rho] : states) {
    const auto w = wigner(rho, ax, ax);
    const double integral = w.values.sum() * cell;
    const double peak = w.values.cwiseAbs().maxCoeff();
    pass = pass && std::abs(integral - 1.0) <= 1e-3 && peak <= 2.0 / pi + 1e-6;
    detail += name + ":" + fmt(integral) + "/" + fmt(peak) + " ";
  }
  return {pass, detail + "(integral/max|W|)"};
}

double trapezoid(const std::vector<double>& y, double dx) {
  double s = 0.0;
  for (std::size_t i = 1; i < y.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * dx;
  return s;
}

double asymmetry(const QuadratureDistribution& q, double dx) {
  std::vector<double> d(q.density.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(q.density[i] - q.density[d.size() - 1 - i]);
  return trapezoid(d, dx);
}

Outcome criterion8() {
  const int n = 40;
  const ModeParams p = cat_mode(0.0);
  const auto m = build_one_mode(p, n);
  const Matrix num = ladder_operators(FockSpace(n)).number;
  Vector sup = Vector::Zero(n);
  sup(0) = sup(1) = 1.0 / std::sqrt(2.0);
  const auto from_vac = relax_checked(m, fock_dm(0, n), 1e-8).state;
  const auto from_sup = relax_checked(m, DensityMatrix::pure(StateVector(sup)), 1e-8).state;
  const auto odd = DensityMatrix::pure(cat_state(2.0, CatParity::Odd, n));

  double worst_norm = 0.0;
  for (const auto* rho : {&from_vac, &from_sup, &odd}) {
    const double span = std::sqrt(2.0 * expectation(num, *rho).real()) + 5.0;
    const auto xs = linspace(-span, span, 2001);
    const auto q = quadrature_distribution(*rho, 0.0, xs);
    worst_norm = std::max(worst_norm, std::abs(trapezoid(q.density, xs[1] - xs[0]) - 1.0));
  }
  const std::vector<double> zero{0.0};
  const double node = quadrature_distribution(odd, 0.0, zero).density[0];
  const auto xs = linspace(-10, 10, 2001);
  const double asym_sup = asymmetry(quadrature_distribution(from_sup, 0.0, xs), xs[1] - xs[0]);
  const double asym_vac = asymmetry(quadrature_distribution(from_vac, 0.0, xs), xs[1] - xs[0]);
  const bool pass = worst_norm <= 1e-4 && node < 1e-10 && asym_sup > 0.01 && asym_vac < 1e-6;
  return {pass, "max|norm-1|=" + fmt(worst_norm) + " P_odd(0)=" + fmt(node) + " asym(sup)=" + fmt(asym_sup) +
                    " asym(vac)=" + fmt(asym_vac)};
}

Outcome criterion9() {
  const BipartiteDims d2{2, 2};
  Vector b = Vector::Zero(4);
  b(0) = b(3) = 1.0 / std::sqrt(2.0);
  const auto bell = DensityMatrix::pure(StateVector(b), d2);
  const double neg = negativity(bell, d2), mi = mutual_information(bell, d2);
  bool pass = std::abs(neg - 0.5) <= 1e-10 && std::abs(mi - 2.0 * std::numbers::ln2) <= 1e-10;
  std::mt19937 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int na = 2 + trial % 4, nb = 2 + (trial / 4) % 3;
    const BipartiteDims dims{na, nb};
    const auto rho =
        DensityMatrix::from_matrix(tensor_product(test::random_density(na, rng), test::random_density(nb, rng)), dims);
    worst = std::max({worst, std::abs(negativity(rho, dims)), std::abs(mutual_information(rho, dims))});
  }
  pass = pass && worst <= 1e-10;
  return {pass, "N(Bell)=" + fmt(neg) + " I(Bell)=" + fmt(mi) + " max product=" + fmt(worst)};
}

Outcome criterion10() {
  std::mt19937 rng(10);
  const std::vector<double> times{0.1, 1.0, 5.0};
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 5;
    SystemModel m;
    m.dim = d;
    m.hamiltonian = test::random_hermitian(d, rng);
    for (int k = 0; k < 2; ++k) m.jumps.push_back(test::random_matrix(d, rng, 0.5));
    const Matrix rho0 = test::random_density(d, rng);
    const Matrix sup = test::reference_liouvillian(m.hamiltonian, m.jumps);
    IntegratorOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-12;
    const auto traj = evolve(m, DensityMatrix::from_matrix(rho0), times, opt);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const Matrix ref = test::unvec(test::expm_apply(sup, times[i], test::vec(rho0)), d);
      worst = std::max(worst, test::max_diff(traj.states[i].matrix(), ref));
      health.state(traj.states[i].matrix(), traj.diagnostics[i].trace_drift);
    }
  }
  const bool pass = worst < 1e-8 && health.drift < 1e-8 && health.min_eig >= -1e-6;
  return {pass, "max|evolve-expm|=" + fmt(worst) + " max drift (all runs)=" + fmt(health.drift) +
                    " min eig (all runs)=" + fmt(health.min_eig)};
}

SystemModel linear_model(double gamma_b, double gamma_a, double g, int n) {
  ModeParams pa = cat_mode(gamma_a), pb = cat_mode(gamma_b);
  pb.drive = std::polar(10.0, 3 * pi / 4);
  return build_two_mode(pa, pb, {CouplingKind::Linear, g}, n, n);
}

DensityMatrix vacuum2(int na, int nb) {
  Vector v = Vector::Zero(na * nb);
  v(0) = 1.0;
  return DensityMatrix::pure(StateVector(v), BipartiteDims{na, nb});
}

double peak_negativity(const SystemModel& m, int n, double t_max) {
  const BipartiteDims dims{n, n};
  std::vector<double> times;
  for (int i = 1; i <= static_cast<int>(std::lround(t_max / 0.05)); ++i) times.push_back(0.05 * i);
  const LindbladGenerator gen(m);
  double peak = 0.0;
  integrate(gen, vacuum2(n, n).matrix(), 0.0, times, {}, [&](double t, const Matrix& r, const SampleDiagnostics& d) {
    health.state(r, d.trace_drift, std::fmod(t + 1e-9, 0.5) < 1e-6);
    peak = std::max(peak, negativity(DensityMatrix::assume_valid(r, dims), dims));
  });
  return peak;
}

Outcome criterion11() {
  const int n = 14;
  const auto t0 = std::chrono::steady_clock::now();
  const double without = peak_negativity(linear_model(0.0, 0.5, 0.5, n), n, 2.0);
  const double with = peak_negativity(linear_model(0.5, 0.5, 0.5, n), n, 2.0);
  const double secs = seconds_since(t0);
  const bool pass = without > 1e-3 && with < without && secs <= 600;
  return {pass, "peak N(gamma_b=0)=" + fmt(without) + " peak N(gamma_b=0.5)=" + fmt(with) + " time=" + fmt(secs) + "s"};
}

Outcome criterion12() {
  const int na = 24, nb = 14;
  const BipartiteDims dims{na, nb};
  ModeParams pa = cat_mode(0.5), pb = cat_mode(0.0);
  pb.drive = 0.0;
  const auto m = build_two_mode(pa, pb, {CouplingKind::Nonlinear, 1.0}, na, nb);
  std::vector<double> times;
  for (int i = 1; i <= 30; ++i) times.push_back(0.1 * i);
  const auto traj = evolve(m, vacuum2(na, nb), times);
  for (std::size_t i = 0; i < times.size(); ++i)
    health.state(traj.states[i].matrix(), traj.diagnostics[i].trace_drift, i % 10 == 9);
  const auto& at2 = traj.states[19];
  const auto& at3 = traj.states[29];
  const auto ax = linspace(-4, 4, 81);
  const double wmin = wigner(partial_trace(at2, dims, Subsystem::B), ax, ax).values.minCoeff();
  auto top2 = [&](Subsystem s) {
    const auto c = dominant_eigencomponents(partial_trace(at3, dims, s), 2);
    return c[0].weight + c[1].weight;
  };
  const double sa = top2(Subsystem::A), sb = top2(Subsystem::B);
  const bool pass = wmin < -0.01 && sa > 0.99 && sb > 0.99;
  return {pass, "truncation (24,14): min W_b(t=2)=" + fmt(wmin) + " top-2 weight a=" + fmt(sa) + " b=" + fmt(sb)};
}

Outcome criterion13() {
  const int n = 18;
  const auto rep = relax_checked(linear_model(0.1, 0.1, 1.0, n), vacuum2(n, n), 1e-5);
  const double pur = purity(rep.state);
  return {std::abs(pur - 0.25) <= 0.05,
          "N=18: purity=" + fmt(pur) + " t=" + fmt(rep.time) + " residual=" + fmt(rep.residual)};
}

Outcome criterion14() {
  if (!n40) n40 = cat_fidelities(40);
  const auto n80 = cat_fidelities(80);
  const double de = std::abs(n80.even - n40->even), dodd = std::abs(n80.odd - n40->odd);
  return {de < 1e-4 && dodd < 1e-4, "N=80 vs N=40: dF_even=" + fmt(de) + " dF_odd=" + fmt(dodd)};
}

}  // namespace

int main(int argc, char** argv) {
  set_warnings_enabled(false);
  const std::map<int, std::function<Outcome()>> criteria{
      {1, criterion1},   {2, criterion2},   {3, criterion3},   {4, criterion4},  {5, criterion5},
      {6, criterion6},   {7, criterion7},   {8, criterion8},   {9, criterion9},  {11, criterion11},
      {12, criterion12}, {13, criterion13}, {14, criterion14}, {10, criterion10}};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  // Criterion 10 also audits every other run, so it goes last.
  std::vector<int> order{1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 10};
  std::map<int, Outcome> results;
  for (int id : order) {
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria.at(id)();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::fprintf(stderr, "criterion %d finished in %.1fs\n", id, seconds_since(t0));
    results[id] = o;
  }
  int failed = 0;
  for (const auto& [id, o] : results) {
    std::printf("%s criterion %2d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
