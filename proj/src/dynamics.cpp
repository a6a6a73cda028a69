#include "catsim/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "catsim/fock.hpp"

namespace catsim {

namespace {

void check_model_dims(const SystemModel& model, Eigen::Index rho_dim) {
  if (model.hamiltonian.rows() != model.dim || model.hamiltonian.cols() != model.dim) {
    throw ValidationError("model Hamiltonian does not match model dimension");
  }
  if (rho_dim != model.dim) {
    throw ValidationError("density matrix dimension " + std::to_string(rho_dim) + " does not match model dimension " +
                          std::to_string(model.dim));
  }
  for (const auto& l : model.jumps) {
    if (l.rows() != model.dim || l.cols() != model.dim) throw ValidationError("jump operator has wrong shape");
  }
}

}  // namespace

Operator lindblad_rhs(const SystemModel& model, const Operator& rho) {
  if (rho.rows() != rho.cols()) throw ValidationError("density matrix must be square");
  check_model_dims(model, rho.rows());
  const Operator& h = model.hamiltonian;
  Operator out = -kI * (h * rho - rho * h);
  for (const auto& l : model.jumps) {
    const Operator ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

LindbladGenerator::LindbladGenerator(const SystemModel& model) : dim_(model.dim) {
  check_model_dims(model, model.dim);
  Operator heff = model.hamiltonian;
  for (const auto& l : model.jumps) heff -= (0.5 * kI) * (l.adjoint() * l);
  heff_ = heff.sparseView();
  heff_.makeCompressed();
  const auto row_sum = [](const Operator& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); };
  norm_bound_ = 2.0 * row_sum(heff);
  for (const auto& l : model.jumps) norm_bound_ += row_sum(l) * row_sum(l.adjoint());
  jumps_.reserve(model.jumps.size());
  for (const auto& l : model.jumps) {
    Sparse s = l.sparseView();
    s.makeCompressed();
    jumps_.push_back(std::move(s));
  }
}

void LindbladGenerator::apply(const Matrix& rho, Matrix& out) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw ValidationError("density matrix has wrong dimension");
  // -i (Heff rho - rho Heff^dag), with rho Heff^dag = (Heff rho^dag)^dag.
  const Matrix rho_adj = rho.adjoint();
  const Matrix left = heff_ * rho;
  const Matrix right = heff_ * rho_adj;
  out.noalias() = -kI * left;
  out.noalias() += kI * right.adjoint();
  // L rho L^dag = L (L rho^dag)^dag
  for (const auto& l : jumps_) {
    const Matrix lr = l * rho_adj;
    out.noalias() += l * lr.adjoint();
  }
}

Matrix liouvillian_matrix(const SystemModel& model) {
  check_model_dims(model, model.dim);
  const int d = model.dim;
  if (static_cast<long>(d) * d > kMaxLiouvillianDim) {
    throw ValidationError("Liouvillian dimension " + std::to_string(static_cast<long>(d) * d) +
                          " exceeds the dense guard of " + std::to_string(kMaxLiouvillianDim));
  }
  const Matrix id = Matrix::Identity(d, d);
  Operator heff = model.hamiltonian;
  for (const auto& l : model.jumps) heff -= (0.5 * kI) * (l.adjoint() * l);
  Matrix sup = -kI * tensor_product(id, heff) + kI * tensor_product(heff.conjugate(), id);
  for (const auto& l : model.jumps) sup += tensor_product(l.conjugate(), l);
  return sup;
}

namespace {

// Dormand-Prince 5(4) tableau with Hairer's continuous extension.
namespace dp {
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp

double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1, double rtol, double atol) {
  double acc = 0.0;
  const Eigen::Index n = err.size();
  const cplx* e = err.data();
  const cplx* a = y0.data();
  const cplx* b = y1.data();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
    const double r = std::abs(e[i]) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace

IntegrationResult integrate(const LindbladGenerator& f, const Matrix& rho0, double t0, std::span<const double> times,
                            const IntegratorOptions& opt, const SampleObserver& observer) {
  if (rho0.rows() != f.dim() || rho0.cols() != f.dim()) throw ValidationError("initial state has wrong dimension");
  if (!rho0.allFinite()) throw ValidationError("initial state has non-finite entries");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < t0 || (i > 0 && times[i] <= times[i - 1])) {
      throw ValidationError("sample times must be finite, strictly increasing and not before the start time");
    }
  }
  if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0) || !(opt.max_step > 0.0) || !(opt.initial_step > 0.0)) {
    throw ValidationError("integrator tolerances and step sizes must be positive");
  }

  IntegrationResult res;
  double t = t0;
  Matrix y = rho0;
  // The exact flow preserves Hermiticity but near the stability limit the
  // anti-Hermitian roundoff grows to the tolerance level. Project it out.
  const bool hermitian = hermiticity_defect(rho0) <= 1e-12 * std::max(1.0, max_abs(rho0));
  const auto project = [hermitian](Matrix& m) {
    if (hermitian) m = (0.5 * (m + m.adjoint())).eval();
  };
  std::size_t next = 0;

  auto emit = [&](double ts, const Matrix& state) {
    if (observer) {
      SampleDiagnostics diag{std::abs(state.trace() - cplx{1.0}), res.accepted_steps, res.rejected_steps};
      observer(ts, state, diag);
    }
  };
  while (next < times.size() && times[next] == t) {
    emit(t, y);
    ++next;
  }
  if (next == times.size()) {
    res.final_state = y;
    res.final_time = t;
    res.last_step = opt.initial_step;
    return res;
  }

  const double t_end = times.back();
  double h = std::min(opt.initial_step, opt.max_step);
  Matrix k1 = f(y), k2, k3, k4, k5, k6, k7, ytmp, ynew;
  const Eigen::Index d = y.rows();
  ytmp.resize(d, d);

  while (next < times.size()) {
    if (res.accepted_steps + res.rejected_steps >= opt.max_steps) {
      throw StepUnderflow("integrator exceeded the maximum number of steps", t);
    }
    bool last = false;
    const double h_proposed = h;
    if (t + h >= t_end) {
      h = t_end - t;
      last = true;
    }
    ytmp = y + h * (dp::a21 * k1);
    f.apply(ytmp, k2);
    ytmp = y + h * (dp::a31 * k1 + dp::a32 * k2);
    f.apply(ytmp, k3);
    ytmp = y + h * (dp::a41 * k1 + dp::a42 * k2 + dp::a43 * k3);
    f.apply(ytmp, k4);
    ytmp = y + h * (dp::a51 * k1 + dp::a52 * k2 + dp::a53 * k3 + dp::a54 * k4);
    f.apply(ytmp, k5);
    ytmp = y + h * (dp::a61 * k1 + dp::a62 * k2 + dp::a63 * k3 + dp::a64 * k4 + dp::a65 * k5);
    f.apply(ytmp, k6);
    ynew = y + h * (dp::a71 * k1 + dp::a73 * k3 + dp::a74 * k4 + dp::a75 * k5 + dp::a76 * k6);
    project(ynew);
    f.apply(ynew, k7);
    ytmp = h * (dp::e1 * k1 + dp::e3 * k3 + dp::e4 * k4 + dp::e5 * k5 + dp::e6 * k6 + dp::e7 * k7);
    const double err = error_norm(ytmp, y, ynew, opt.rel_tol, opt.abs_tol);

    if (!std::isfinite(err)) {
      ++res.rejected_steps;
      h *= 0.1;
      if (h < opt.min_step) throw StepUnderflow("non-finite state during integration", t);
      continue;
    }

    if (err <= 1.0) {
      ++res.accepted_steps;
      const double t_new = last ? t_end : t + h;
      // Dense output for the samples inside (t, t_new].
      bool have_cont = false;
      Matrix r3, r4, r5;
      while (next < times.size() && times[next] <= t_new) {
        const double ts = times[next];
        if (ts == t_new) {
          emit(ts, ynew);
        } else {
          if (!have_cont) {
            const Matrix ydiff = ynew - y;
            r3 = h * k1 - ydiff;
            r4 = ydiff - h * k7 - r3;
            r5 = h * (dp::d1 * k1 + dp::d3 * k3 + dp::d4 * k4 + dp::d5 * k5 + dp::d6 * k6 + dp::d7 * k7);
            have_cont = true;
          }
          const double th = (ts - t) / h;
          const double th1 = 1.0 - th;
          Matrix ys = y + th * ((ynew - y) + th1 * (r3 + th * (r4 + th1 * r5)));
          project(ys);
          emit(ts, ys);
        }
        ++next;
      }
      t = t_new;
      y.swap(ynew);
      k1.swap(k7);
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(std::max(h * fac, last ? h_proposed : 0.0), opt.max_step);
      res.last_step = h;
    } else {
      ++res.rejected_steps;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (h < opt.min_step) {
        std::ostringstream os;
        os << "step size underflow at t = " << t;
        throw StepUnderflow(os.str(), t);
      }
    }
  }
  res.final_state = std::move(y);
  res.final_time = t;
  return res;
}

Trajectory evolve(const SystemModel& model, const DensityMatrix& rho0, std::span<const double> times,
                  const IntegratorOptions& options) {
  check_model_dims(model, rho0.dim());
  const LindbladGenerator gen(model);
  Trajectory traj;
  traj.times.reserve(times.size());
  traj.states.reserve(times.size());
  traj.diagnostics.reserve(times.size());
  const auto dims = rho0.bipartite() ? rho0.bipartite() : model.bipartite;
  integrate(gen, rho0.matrix(), 0.0, times, options, [&](double t, const Matrix& rho, const SampleDiagnostics& diag) {
    traj.times.push_back(t);
    traj.states.push_back(DensityMatrix::assume_valid(rho, dims));
    traj.diagnostics.push_back(diag);
  });
  return traj;
}

SteadyStateReport propagate_to_steady_state(const SystemModel& model, const DensityMatrix& rho0,
                                            const SteadyStateOptions& options, const SampleObserver& observer) {
  check_model_dims(model, rho0.dim());
  if (!(options.tol > 0.0) || !(options.check_interval > 0.0) || !(options.t_max > 0.0)) {
    throw ValidationError("steady-state tolerance, check interval and t_max must be positive");
  }
  const LindbladGenerator gen(model);
  const auto dims = rho0.bipartite() ? rho0.bipartite() : model.bipartite;

  Matrix rho = rho0.matrix();
  double t = 0.0;
  long steps = 0;
  long rejected = 0;
  IntegratorOptions iopt = options.integrator;
  const double noise_floor = options.tol / (10.0 * std::max(1.0, gen.norm_bound()));
  iopt.abs_tol = std::min(iopt.abs_tol, noise_floor);
  iopt.rel_tol = std::min(iopt.rel_tol, std::max(100.0 * iopt.abs_tol, 1e-13));
  if (observer) observer(0.0, rho, SampleDiagnostics{std::abs(rho.trace() - cplx{1.0}), 0, 0});
  double residual = max_abs(gen(rho));
  while (residual >= options.tol) {
    if (t >= options.t_max) {
      std::ostringstream os;
      os << "steady state not reached by t = " << t << " (residual " << residual << ", tol " << options.tol << ")";
      throw NonConvergence(os.str(), t);
    }
    const double target[] = {t + options.check_interval};
    auto r = integrate(gen, rho, t, target, iopt);
    rho = std::move(r.final_state);
    t = target[0];
    steps += r.accepted_steps;
    rejected += r.rejected_steps;
    if (r.last_step > 0.0) iopt.initial_step = r.last_step;
    residual = max_abs(gen(rho));
    if (observer) observer(t, rho, SampleDiagnostics{std::abs(rho.trace() - cplx{1.0}), steps, rejected});
  }
  return SteadyStateReport{DensityMatrix::assume_valid(std::move(rho), dims), t, residual, steps};
}

SteadyStateReport kernel_steady_state(const SystemModel& model, const SteadyStateOptions& options) {
  const Matrix sup = liouvillian_matrix(model);
  Eigen::ComplexEigenSolver<Matrix> es(sup, true);
  if (es.info() != Eigen::Success) throw NumericalError("Liouvillian eigensolver failed to converge");
  const auto& vals = es.eigenvalues();
  const Eigen::Index n = vals.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return std::abs(vals(x)) < std::abs(vals(y)); });
  const double radius = std::abs(vals(order.back()));
  if (n > 1 && std::abs(vals(order[1])) < options.degeneracy * radius) {
    std::ostringstream os;
    os << "Liouvillian kernel is degenerate (second smallest |eigenvalue| " << std::abs(vals(order[1]))
       << "); the stationary state depends on the initial condition, use propagation";
    throw DegenerateKernel(os.str());
  }
  const int d = model.dim;
  const Vector v = es.eigenvectors().col(order[0]);
  Matrix rho = Eigen::Map<const Matrix>(v.data(), d, d);
  const cplx tr = rho.trace();
  if (std::abs(tr) == 0.0) throw NumericalError("Liouvillian null vector is traceless");
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  const double residual = max_abs(lindblad_rhs(model, rho));
  return SteadyStateReport{DensityMatrix::assume_valid(std::move(rho), model.bipartite), 0.0, residual, 0};
}

DensityMatrix steady_state(const SystemModel& model, SteadyStateMethod method,
                           const std::optional<DensityMatrix>& rho0, double tol) {
  SteadyStateOptions opt;
  if (method == SteadyStateMethod::Kernel) {
    opt.degeneracy = tol;
    return kernel_steady_state(model, opt).state;
  }
  if (!rho0) throw ValidationError("propagation to the steady state requires an initial state");
  opt.tol = tol;
  return propagate_to_steady_state(model, *rho0, opt).state;
}

}  // namespace catsim
