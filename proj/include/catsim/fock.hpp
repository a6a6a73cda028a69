#pragma once

#include "catsim/types.hpp"

namespace catsim {

struct LadderOperators {
  Operator annihilation;
  Operator creation;
  Operator number;
  Operator parity;  // diag((-1)^n)
};

LadderOperators ladder_operators(const FockSpace& space);

/// Single matrix element <m|D(beta)|n> of the untruncated displacement
/// operator, evaluated through the normalized associated-Laguerre recurrence.
cplx displacement_element(cplx beta, int m, int n);

/// D(alpha) = exp(alpha a^dag - alpha^* a) restricted to the truncated basis.
/// Entries are the exact infinite-space matrix elements, so the truncated
/// matrix is unitary only on the low-photon block. Warns when |alpha|^2 > N/4.
Operator displacement(cplx alpha, const FockSpace& space);

/// Kronecker product in mode-a-major ordering: (A x B)(x x y) = (Ax) x (By).
Operator tensor_product(const Operator& a, const Operator& b);

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix. Exactly decoupled diagonal blocks
/// (e.g. fixed photon-number parity sectors) are diagonalized separately, so
/// eigenvectors inside a degenerate cluster never mix independent blocks.
Eigensystem hermitian_eigensystem(const Operator& m, double hermitian_tol = Tolerances{}.hermitian);

/// Scaling-and-squaring Pade exponential.
Operator matrix_exponential(const Operator& m);

DensityMatrix partial_trace(const DensityMatrix& rho, BipartiteDims dims, Subsystem keep);

/// Transpose on the `moved` factor. Involutive.
Operator partial_transpose(const Operator& rho, BipartiteDims dims, Subsystem moved);
Operator partial_transpose(const DensityMatrix& rho, BipartiteDims dims, Subsystem moved);

/// Identity-embedded single-mode operators for a two-mode space.
Operator embed_a(const Operator& op_a, int nb);
Operator embed_b(int na, const Operator& op_b);

}  // namespace catsim
