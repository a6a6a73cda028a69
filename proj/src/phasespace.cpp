#include "catsim/phasespace.hpp"

#include <cmath>
#include <numbers>

#include "laguerre.hpp"

namespace catsim {

namespace {

void require_single_mode(const DensityMatrix& rho, const char* what) {
  if (rho.bipartite()) {
    throw ValidationError(std::string(what) + " expects a single-mode state; take a partial trace first");
  }
}

void require_finite(std::span<const double> axis, const char* name) {
  for (double v : axis) {
    if (!std::isfinite(v)) throw ValidationError(std::string(name) + " contains non-finite values");
  }
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw ValidationError("linspace needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

PhaseSpaceGrid wigner(const DensityMatrix& rho, std::span<const double> re_axis, std::span<const double> im_axis) {
  require_single_mode(rho, "wigner");
  require_finite(re_axis, "re axis");
  require_finite(im_axis, "im axis");
  const Matrix& r = rho.matrix();
  const int n = rho.dim();

  // Parity-signed diagonals of rho: upper[k][j] = (-1)^j rho(j, j+k),
  // lower[k][j] = (-1)^j rho(j+k, j).
  std::vector<std::vector<cplx>> upper(static_cast<std::size_t>(n));
  std::vector<std::vector<cplx>> lower(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    auto& u = upper[static_cast<std::size_t>(k)];
    auto& l = lower[static_cast<std::size_t>(k)];
    u.resize(static_cast<std::size_t>(n - k));
    l.resize(static_cast<std::size_t>(n - k));
    for (int j = 0; j + k < n; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      u[static_cast<std::size_t>(j)] = sign * r(j, j + k);
      l[static_cast<std::size_t>(j)] = sign * r(j + k, j);
    }
  }

  PhaseSpaceGrid grid;
  grid.re_axis.assign(re_axis.begin(), re_axis.end());
  grid.im_axis.assign(im_axis.begin(), im_axis.end());
  grid.values.resize(static_cast<Eigen::Index>(im_axis.size()), static_cast<Eigen::Index>(re_axis.size()));

  std::vector<double> f(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < im_axis.size(); ++i) {
    for (std::size_t j = 0; j < re_axis.size(); ++j) {
      const cplx beta = 2.0 * cplx{re_axis[j], im_axis[i]};
      const double x = std::norm(beta);
      const double theta = std::arg(beta);
      cplx acc{};
      for (int k = 0; k < n; ++k) {
        const std::span<double> fk(f.data(), static_cast<std::size_t>(n - k));
        detail::laguerre_functions(x, k, fk);
        const auto& u = upper[static_cast<std::size_t>(k)];
        const auto& l = lower[static_cast<std::size_t>(k)];
        cplx su{};
        cplx sl{};
        for (int m = 0; m + k < n; ++m) {
          su += fk[static_cast<std::size_t>(m)] * u[static_cast<std::size_t>(m)];
          sl += fk[static_cast<std::size_t>(m)] * l[static_cast<std::size_t>(m)];
        }
        const cplx phase = std::polar(1.0, k * theta);
        acc += su * phase;
        if (k > 0) acc += sl * std::conj(phase);
      }
      grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 2.0 / std::numbers::pi * acc.real();
    }
  }
  return grid;
}

PhaseSpaceGrid wigner_cat_analytic(cplx xi, CatParity parity, std::span<const double> re_axis,
                                   std::span<const double> im_axis) {
  require_finite(re_axis, "re axis");
  require_finite(im_axis, "im axis");
  if (parity == CatParity::Odd && xi == cplx{}) throw ValidationError("odd cat state with xi = 0 is a null vector");
  const double sign = parity == CatParity::Even ? 1.0 : -1.0;
  const double norm = 2.0 * (1.0 + sign * std::exp(-2.0 * std::norm(xi)));

  PhaseSpaceGrid grid;
  grid.re_axis.assign(re_axis.begin(), re_axis.end());
  grid.im_axis.assign(im_axis.begin(), im_axis.end());
  grid.values.resize(static_cast<Eigen::Index>(im_axis.size()), static_cast<Eigen::Index>(re_axis.size()));
  for (std::size_t i = 0; i < im_axis.size(); ++i) {
    for (std::size_t j = 0; j < re_axis.size(); ++j) {
      const cplx a{re_axis[j], im_axis[i]};
      const double fringe = 2.0 * std::exp(-2.0 * std::norm(a)) * std::cos(4.0 * std::imag(std::conj(a) * xi));
      const double w = std::exp(-2.0 * std::norm(a - xi)) + std::exp(-2.0 * std::norm(a + xi)) + sign * fringe;
      grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 2.0 / (std::numbers::pi * norm) * w;
    }
  }
  return grid;
}

void hermite_functions(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (out.size() == 1) return;
  out[1] = std::sqrt(2.0) * x * out[0];
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    const double nd = static_cast<double>(n);
    out[n + 1] = x * std::sqrt(2.0 / (nd + 1.0)) * out[n] - std::sqrt(nd / (nd + 1.0)) * out[n - 1];
  }
}

QuadratureDistribution quadrature_distribution(const DensityMatrix& rho, double phi, std::span<const double> xs) {
  require_single_mode(rho, "quadrature_distribution");
  require_finite(xs, "quadrature axis");
  if (!std::isfinite(phi)) throw ValidationError("quadrature phase must be finite");
  const int n = rho.dim();
  const Matrix& r = rho.matrix();
  QuadratureDistribution out;
  out.phi = phi;
  out.xs.assign(xs.begin(), xs.end());
  out.density.resize(xs.size());
  std::vector<double> psi(static_cast<std::size_t>(n));
  Vector w(n);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    hermite_functions(xs[i], psi);
    for (int m = 0; m < n; ++m) w(m) = psi[static_cast<std::size_t>(m)] * std::polar(1.0, -m * phi);
    // sum_mn w_m rho_mn conj(w_n)
    out.density[i] = std::real(w.conjugate().dot(r * w.conjugate()));
  }
  return out;
}

Eigen::MatrixXd joint_quadrature_distribution(const DensityMatrix& rho, BipartiteDims dims, std::span<const double> xa,
                                              std::span<const double> xb) {
  if (dims.na < 1 || dims.nb < 1 || dims.dim() != rho.dim()) {
    throw ValidationError("bipartite dims do not match the density matrix");
  }
  if (rho.bipartite() && *rho.bipartite() != dims) throw ValidationError("bipartite dims disagree with the state tag");
  require_finite(xa, "x_a axis");
  require_finite(xb, "x_b axis");
  const int na = dims.na;
  const int nb = dims.nb;
  const Matrix& r = rho.matrix();

  Eigen::MatrixXd psib(nb, static_cast<Eigen::Index>(xb.size()));
  std::vector<double> buf(static_cast<std::size_t>(std::max(na, nb)));
  for (std::size_t j = 0; j < xb.size(); ++j) {
    hermite_functions(xb[j], std::span<double>(buf.data(), static_cast<std::size_t>(nb)));
    for (int k = 0; k < nb; ++k) psib(k, static_cast<Eigen::Index>(j)) = buf[static_cast<std::size_t>(k)];
  }

  Eigen::MatrixXd out(static_cast<Eigen::Index>(xa.size()), static_cast<Eigen::Index>(xb.size()));
  Eigen::VectorXd psia(na);
  for (std::size_t i = 0; i < xa.size(); ++i) {
    hermite_functions(xa[i], std::span<double>(buf.data(), static_cast<std::size_t>(na)));
    for (int k = 0; k < na; ++k) psia(k) = buf[static_cast<std::size_t>(k)];
    // Contract mode a: m(ib, jb) = sum_{ia, ja} psi_ia psi_ja rho((ia, ib), (ja, jb))
    Matrix m = Matrix::Zero(nb, nb);
    for (int ia = 0; ia < na; ++ia) {
      for (int ja = 0; ja < na; ++ja) {
        const double c = psia(ia) * psia(ja);
        if (c != 0.0) m += c * r.block(ia * nb, ja * nb, nb, nb);
      }
    }
    const Eigen::MatrixXd mr = m.real();
    // psib^T m psib, column by column
    const Eigen::MatrixXd t = mr * psib;
    out.row(static_cast<Eigen::Index>(i)) = (psib.cwiseProduct(t)).colwise().sum();
  }
  return out;
}

}  // namespace catsim
