#pragma once

#include <vector>

#include "catsim/types.hpp"

namespace catsim {

/// Tr[op rho].
cplx expectation(const Operator& op, const DensityMatrix& rho);

/// -Tr[rho ln rho] in nats. Eigenvalues below 1e-14 are treated as zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// Tr[rho^2].
double purity(const DensityMatrix& rho);

/// <psi|rho|psi>.
double fidelity_pure(const StateVector& psi, const DensityMatrix& rho);

/// Sum of |negative eigenvalues| of the partial transpose (taken on mode b).
double negativity(const DensityMatrix& rho, BipartiteDims dims);

/// S_A + S_B - S_AB, clamped at zero when the deficit is within roundoff.
double mutual_information(const DensityMatrix& rho, BipartiteDims dims);

struct EigenComponent {
  double weight;
  StateVector state;
};

/// Top-k eigenpairs of rho, heaviest first.
std::vector<EigenComponent> dominant_eigencomponents(const DensityMatrix& rho, int k);

}  // namespace catsim
