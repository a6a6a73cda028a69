#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace catsim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense operator over a truncated Fock space (or a tensor product of two).
using Operator = Matrix;

inline constexpr cplx kI{0.0, 1.0};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: shape mismatches, invalid parameters, malformed configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, double time_reached = 0.0)
      : Error(what), time_reached_(time_reached) {}
  double time_reached() const noexcept { return time_reached_; }

 private:
  double time_reached_;
};

class StepUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The Liouvillian has more than one (near-)zero eigenvalue; use propagation.
class DegenerateKernel : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Validation thresholds. Defaults follow the documented state invariants.
struct Tolerances {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-8;
  double norm = 1e-12;
};

/// Truncated single-mode Fock space with basis |0>, ..., |N-1>.
class FockSpace {
 public:
  explicit FockSpace(int truncation);
  int dim() const noexcept { return n_; }

 private:
  int n_;
};

/// Factor dimensions of a two-mode space. Basis index is i_a * nb + i_b
/// (mode a major).
struct BipartiteDims {
  int na = 0;
  int nb = 0;

  int dim() const noexcept { return na * nb; }
  int index(int ia, int ib) const noexcept { return ia * nb + ib; }
  bool operator==(const BipartiteDims&) const = default;
};

enum class Subsystem { A, B };

/// Unit-norm ket.
class StateVector {
 public:
  /// Normalizes `amplitudes`; rejects a zero or non-finite vector.
  static StateVector normalized(Vector amplitudes);
  /// Checks the unit-norm invariant without rescaling.
  explicit StateVector(Vector amplitudes, double tol = Tolerances{}.norm);

  const Vector& vector() const noexcept { return v_; }
  int dim() const noexcept { return static_cast<int>(v_.size()); }
  cplx operator[](int i) const { return v_(i); }

 private:
  struct Unchecked {};
  StateVector(Vector amplitudes, Unchecked) : v_(std::move(amplitudes)) {}
  Vector v_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  /// Full validation, including the eigenvalue floor.
  static DensityMatrix from_matrix(Matrix m, std::optional<BipartiteDims> dims = std::nullopt,
                                   const Tolerances& tol = {});
  /// Wraps the output of a trusted pipeline (integrator, partial trace)
  /// without the eigenvalue check. Shape and finiteness are still enforced.
  static DensityMatrix assume_valid(Matrix m, std::optional<BipartiteDims> dims = std::nullopt);
  static DensityMatrix pure(const StateVector& psi, std::optional<BipartiteDims> dims = std::nullopt);

  const Matrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const std::optional<BipartiteDims>& bipartite() const noexcept { return dims_; }

 private:
  DensityMatrix(Matrix m, std::optional<BipartiteDims> dims) : m_(std::move(m)), dims_(dims) {}
  Matrix m_;
  std::optional<BipartiteDims> dims_;
};

/// Max-abs entry of M - M^dagger.
double hermiticity_defect(const Matrix& m);
double max_abs(const Matrix& m);

}  // namespace catsim
