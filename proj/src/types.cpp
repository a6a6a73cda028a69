#include "catsim/types.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <sstream>

#include "catsim/diagnostics.hpp"

namespace catsim {

namespace {

std::atomic<bool> g_warnings{true};

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace

void warn(std::string_view message) {
  if (g_warnings.load(std::memory_order_relaxed)) {
    std::clog << "catsim warning: " << message << '\n';
  }
}

void set_warnings_enabled(bool enabled) { g_warnings.store(enabled, std::memory_order_relaxed); }
bool warnings_enabled() { return g_warnings.load(std::memory_order_relaxed); }

FockSpace::FockSpace(int truncation) : n_(truncation) {
  if (truncation < 2) {
    throw ValidationError("Fock truncation must be at least 2, got " + std::to_string(truncation));
  }
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

StateVector::StateVector(Vector amplitudes, double tol) : v_(std::move(amplitudes)) {
  if (!v_.allFinite()) throw ValidationError("state vector has non-finite amplitudes");
  const double norm = v_.norm();
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream os;
    os << "state vector is not normalized (|psi| = " << norm << ")";
    throw ValidationError(os.str());
  }
}

StateVector StateVector::normalized(Vector amplitudes) {
  if (!amplitudes.allFinite()) throw ValidationError("state vector has non-finite amplitudes");
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw ValidationError("cannot normalize a null state vector");
  amplitudes /= norm;
  return StateVector(std::move(amplitudes), Unchecked{});
}

DensityMatrix DensityMatrix::assume_valid(Matrix m, std::optional<BipartiteDims> dims) {
  if (m.rows() != m.cols()) throw ValidationError("density matrix must be square");
  if (dims && dims->dim() != m.rows()) {
    throw ValidationError("bipartite dims " + std::to_string(dims->na) + "x" + std::to_string(dims->nb) +
                          " do not match matrix dimension " + std::to_string(m.rows()));
  }
  if (!all_finite(m)) throw ValidationError("density matrix has non-finite entries");
  return DensityMatrix(std::move(m), dims);
}

DensityMatrix DensityMatrix::from_matrix(Matrix m, std::optional<BipartiteDims> dims, const Tolerances& tol) {
  DensityMatrix rho = assume_valid(std::move(m), dims);
  const Matrix& r = rho.matrix();
  if (const double d = hermiticity_defect(r); d > tol.hermitian) {
    throw ValidationError("density matrix is not Hermitian (defect " + std::to_string(d) + ")");
  }
  if (const double tr = r.trace().real(); std::abs(tr - 1.0) > tol.trace) {
    throw ValidationError("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  const Matrix herm = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  if (const double lo = es.eigenvalues().minCoeff(); lo < tol.min_eigenvalue) {
    throw ValidationError("density matrix is not positive semidefinite (min eigenvalue " +
                          std::to_string(lo) + ")");
  }
  return rho;
}

DensityMatrix DensityMatrix::pure(const StateVector& psi, std::optional<BipartiteDims> dims) {
  const Vector& v = psi.vector();
  return assume_valid(v * v.adjoint(), dims);
}

}  // namespace catsim
