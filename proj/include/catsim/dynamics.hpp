#pragma once

#include <Eigen/SparseCore>

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "catsim/models.hpp"
#include "catsim/types.hpp"

namespace catsim {

/// -i[H, rho] + sum_k (L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho}), evaluated with
/// dense d x d products straight from the model.
Operator lindblad_rhs(const SystemModel& model, const Operator& rho);

/// Production form of the same right-hand side. Caches the effective
/// non-Hermitian Hamiltonian H - (i/2) sum L^dag L and the jumps in sparse
/// form so that each evaluation costs O(nnz * d) instead of O(d^3).
class LindbladGenerator {
 public:
  explicit LindbladGenerator(const SystemModel& model);

  void apply(const Matrix& rho, Matrix& out) const;
  Matrix operator()(const Matrix& rho) const {
    Matrix out;
    apply(rho, out);
    return out;
  }
  int dim() const noexcept { return dim_; }

  /// Upper bound on the induced max-row-sum norm of the superoperator.
  double norm_bound() const noexcept { return norm_bound_; }

 private:
  using Sparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
  int dim_;
  double norm_bound_ = 0.0;
  Sparse heff_;
  std::vector<Sparse> jumps_;
};

/// Largest superoperator dimension d^2 accepted by `liouvillian_matrix`.
inline constexpr int kMaxLiouvillianDim = 4096;

/// Superoperator acting on the column-stacked density matrix:
/// vec(A rho B) = (B^T x A) vec(rho).
Matrix liouvillian_matrix(const SystemModel& model);

struct IntegratorOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double initial_step = 1e-3;
  double max_step = 0.05;
  double min_step = 1e-12;
  long max_steps = 100'000'000;
};

struct SampleDiagnostics {
  double trace_drift = 0.0;  // |Tr rho(t) - 1|
  long accepted_steps = 0;   // cumulative
  long rejected_steps = 0;   // cumulative
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<SampleDiagnostics> diagnostics;
};

using SampleObserver = std::function<void(double t, const Matrix& rho, const SampleDiagnostics&)>;

struct IntegrationResult {
  Matrix final_state;  // state at the last requested time
  double final_time = 0.0;
  double last_step = 0.0;  // suggested next step
  long accepted_steps = 0;
  long rejected_steps = 0;
};

/// Adaptive Dormand-Prince 5(4) from (t0, rho0), reporting the dense-output
/// state at each requested time (ascending, >= t0). No renormalization is
/// applied; trace drift is reported per sample. Throws StepUnderflow.
IntegrationResult integrate(const LindbladGenerator& generator, const Matrix& rho0, double t0,
                            std::span<const double> times, const IntegratorOptions& options,
                            const SampleObserver& observer = {});

/// Evolution from t = 0, storing every requested sample.
Trajectory evolve(const SystemModel& model, const DensityMatrix& rho0, std::span<const double> times,
                  const IntegratorOptions& options = {});

enum class SteadyStateMethod { Kernel, Propagate };

/// Propagation tightens the integrator tolerances so that integration noise,
/// amplified by the generator norm, stays below the residual target.
struct SteadyStateOptions {
  double tol = 1e-8;             // Propagate: stop when max|rhs| < tol
  double check_interval = 0.1;   // Propagate: residual is checked this often
  double t_max = 1e4;            // Propagate: give up after this time
  double degeneracy = 1e-8;      // Kernel: relative gap threshold
  IntegratorOptions integrator{};
};

struct SteadyStateReport {
  DensityMatrix state;
  double time = 0.0;      // integration time used (0 for Kernel)
  double residual = 0.0;  // max|rhs(state)|
  long steps = 0;
};

/// Propagates until the residual drops below `options.tol`. The observer sees
/// the state at every check point.
SteadyStateReport propagate_to_steady_state(const SystemModel& model, const DensityMatrix& rho0,
                                            const SteadyStateOptions& options = {},
                                            const SampleObserver& observer = {});

/// Null vector of the explicit Liouvillian. Throws DegenerateKernel when the
/// stationary manifold is more than one-dimensional.
SteadyStateReport kernel_steady_state(const SystemModel& model, const SteadyStateOptions& options = {});

DensityMatrix steady_state(const SystemModel& model, SteadyStateMethod method,
                           const std::optional<DensityMatrix>& rho0, double tol);

}  // namespace catsim
