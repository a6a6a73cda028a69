#pragma once

// Shared helpers and independent reference computations for the test suites.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "catsim/types.hpp"

namespace catsim::test {

inline double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline Matrix random_matrix(int n, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline Matrix random_hermitian(int n, std::mt19937& rng, double scale = 1.0) {
  Matrix m = random_matrix(n, rng, scale);
  return 0.5 * (m + m.adjoint());
}

inline Vector random_ket(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

// Full-rank random density matrix (Ginibre ensemble).
inline Matrix random_density(int n, std::mt19937& rng) {
  Matrix g = random_matrix(n, rng);
  Matrix r = g * g.adjoint();
  return r / r.trace().real();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Column-stacking superoperator built term by term, vec(A X B) = (B^T kron A) vec(X).
inline Matrix reference_liouvillian(const Matrix& h, const std::vector<Matrix>& jumps) {
  const auto d = h.rows();
  const Matrix id = Matrix::Identity(d, d);
  Matrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& c : jumps) {
    const Matrix cdc = c.adjoint() * c;
    l += kron(c.conjugate(), c) - 0.5 * kron(id, cdc) - 0.5 * kron(cdc.transpose(), id);
  }
  return l;
}

// exp(t M) v by eigendecomposition; fine for the small, generic matrices used here.
inline Vector expm_apply(const Matrix& m, double t, const Vector& v) {
  Eigen::ComplexEigenSolver<Matrix> es(m);
  const Matrix& V = es.eigenvectors();
  Vector c = V.partialPivLu().solve(v);
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::exp(t * es.eigenvalues()(i));
  return V * c;
}

// Scaled 30-term Taylor series, squared back up.
inline Matrix expm_taylor(const Matrix& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.05) ++s;
  const Matrix a = m / std::ldexp(1.0, s);
  Matrix term = Matrix::Identity(m.rows(), m.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = (sum * sum).eval();
  return sum;
}

inline Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }
inline Matrix unvec(const Vector& v, Eigen::Index d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

// <n|alpha> for the untruncated coherent state.
inline cplx coherent_amplitude(cplx alpha, int n) {
  if (alpha == cplx{}) return n == 0 ? 1.0 : 0.0;
  const double mag = std::exp(-0.5 * std::norm(alpha) + n * std::log(std::abs(alpha)) - 0.5 * log_factorial(n));
  return std::polar(mag, n * std::arg(alpha));
}

}  // namespace catsim::test
