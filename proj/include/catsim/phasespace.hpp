#pragma once

#include <span>
#include <vector>

#include "catsim/models.hpp"
#include "catsim/types.hpp"

namespace catsim {

/// Wigner values on a rectangular grid of alpha = re + i im.
/// values(i, j) belongs to (re_axis[j], im_axis[i]).
struct PhaseSpaceGrid {
  std::vector<double> re_axis;
  std::vector<double> im_axis;
  Eigen::MatrixXd values;
};

struct QuadratureDistribution {
  double phi = 0.0;
  std::vector<double> xs;
  std::vector<double> density;
};

std::vector<double> linspace(double lo, double hi, int count);

/// W(alpha) = (2/pi) Tr[rho D(alpha) P D^dag(alpha)], normalized so that
/// the integral over d^2 alpha = d(re) d(im) is one and |W| <= 2/pi.
/// Uses D P D^dag = D(2 alpha) P and the closed-form Laguerre elements, so
/// each grid point costs O(N^2).
PhaseSpaceGrid wigner(const DensityMatrix& rho, std::span<const double> re_axis, std::span<const double> im_axis);

/// Closed-form Wigner function of the cat (|xi> +- |-xi>), normalized to one.
PhaseSpaceGrid wigner_cat_analytic(cplx xi, CatParity parity, std::span<const double> re_axis,
                                   std::span<const double> im_axis);

/// Normalized Hermite functions psi_0..psi_{n-1} at x.
void hermite_functions(double x, std::span<double> out);

/// P(X) = <X, phi|rho|X, phi> with <X, phi|n> = psi_n(X) e^{-i n phi}, i.e.
/// sum_mn rho_mn psi_m psi_n e^{i (n - m) phi}. That overlap belongs to the
/// quadrature (a^dag e^{i phi} + a e^{-i phi}) / sqrt(2), so |alpha> peaks at
/// sqrt(2) Re(alpha e^{-i phi}). A coherent state |xi> with real xi peaks at
/// X = sqrt(2) xi for phi = 0.
QuadratureDistribution quadrature_distribution(const DensityMatrix& rho, double phi, std::span<const double> xs);

/// <X_a, X_b|rho|X_a, X_b> at phi = 0. Result(i, j) belongs to (xa[i], xb[j]).
Eigen::MatrixXd joint_quadrature_distribution(const DensityMatrix& rho, BipartiteDims dims,
                                              std::span<const double> xa, std::span<const double> xb);

}  // namespace catsim
