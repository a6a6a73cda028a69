#include "catsim/observables.hpp"

#include <algorithm>
#include <cmath>

#include "catsim/fock.hpp"

namespace catsim {

namespace {

constexpr double kEigenvalueFloor = 1e-14;
constexpr double kMutualInformationClamp = 1e-8;

double entropy_of(const Eigen::VectorXd& values) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double p = values(i);
    if (p > kEigenvalueFloor) s -= p * std::log(p);
  }
  return s;
}

}  // namespace

cplx expectation(const Operator& op, const DensityMatrix& rho) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
    throw ValidationError("operator dimension does not match the density matrix");
  }
  // Tr[op rho] = sum_ij op_ij rho_ji
  return (op.transpose().cwiseProduct(rho.matrix())).sum();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of(hermitian_eigensystem(rho.matrix()).values);
}

double purity(const DensityMatrix& rho) {
  // Tr[rho^2] = sum_ij |rho_ij|^2 for Hermitian rho
  return rho.matrix().squaredNorm();
}

double fidelity_pure(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) throw ValidationError("state vector dimension does not match the density matrix");
  const Vector& v = psi.vector();
  return std::real(v.dot(rho.matrix() * v));
}

double negativity(const DensityMatrix& rho, BipartiteDims dims) {
  const Operator pt = partial_transpose(rho, dims, Subsystem::B);
  const auto es = hermitian_eigensystem(pt);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) < 0.0) neg -= es.values(i);
  }
  return neg;
}

double mutual_information(const DensityMatrix& rho, BipartiteDims dims) {
  const double sa = von_neumann_entropy(partial_trace(rho, dims, Subsystem::A));
  const double sb = von_neumann_entropy(partial_trace(rho, dims, Subsystem::B));
  const double sab = von_neumann_entropy(rho);
  const double info = sa + sb - sab;
  if (info < 0.0 && info > -kMutualInformationClamp) return 0.0;
  return info;
}

std::vector<EigenComponent> dominant_eigencomponents(const DensityMatrix& rho, int k) {
  if (k < 1) throw ValidationError("number of eigencomponents must be at least 1");
  const auto es = hermitian_eigensystem(rho.matrix());
  const int n = rho.dim();
  const int count = std::min(k, n);
  std::vector<EigenComponent> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const Eigen::Index col = n - 1 - i;
    const double w = std::clamp(es.values(col), 0.0, 1.0);
    out.push_back({w, StateVector::normalized(es.vectors.col(col))});
  }
  return out;
}

}  // namespace catsim
