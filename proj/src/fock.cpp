#include "catsim/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "catsim/diagnostics.hpp"
#include "laguerre.hpp"

namespace catsim {

LadderOperators ladder_operators(const FockSpace& space) {
  const int n = space.dim();
  LadderOperators ops;
  ops.annihilation = Operator::Zero(n, n);
  for (int k = 1; k < n; ++k) ops.annihilation(k - 1, k) = std::sqrt(static_cast<double>(k));
  ops.creation = ops.annihilation.adjoint();
  ops.number = ops.creation * ops.annihilation;
  ops.parity = Operator::Zero(n, n);
  for (int k = 0; k < n; ++k) ops.parity(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return ops;
}

cplx displacement_element(cplx beta, int m, int n) {
  if (m < 0 || n < 0) throw ValidationError("Fock indices must be non-negative");
  const double x = std::norm(beta);
  const double theta = std::arg(beta);
  const int k = std::abs(m - n);
  const int low = std::min(m, n);
  std::vector<double> f(static_cast<std::size_t>(low) + 1);
  detail::laguerre_functions(x, k, f);
  const double mag = f[static_cast<std::size_t>(low)];
  if (m >= n) return std::polar(mag, k * theta);
  // <m|D(b)|n> = conj(<n|D(-b)|m>)
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * std::polar(mag, -k * theta);
}

Operator displacement(cplx alpha, const FockSpace& space) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw ValidationError("displacement amplitude must be finite");
  }
  const int n = space.dim();
  if (std::norm(alpha) > n / 4.0) {
    std::ostringstream os;
    os << "|alpha|^2 = " << std::norm(alpha) << " exceeds N/4 for truncation N = " << n
       << "; displacement matrix is truncation limited";
    warn(os.str());
  }
  const double x = std::norm(alpha);
  const double theta = std::arg(alpha);
  Operator d = Operator::Zero(n, n);
  std::vector<double> f;
  for (int k = 0; k < n; ++k) {
    f.resize(static_cast<std::size_t>(n - k));
    detail::laguerre_functions(x, k, f);
    const cplx upper = std::polar(1.0, k * theta);
    const cplx lower = ((k % 2 == 0) ? 1.0 : -1.0) * std::polar(1.0, -k * theta);
    for (int j = 0; j + k < n; ++j) {
      d(j + k, j) = upper * f[static_cast<std::size_t>(j)];
      if (k > 0) d(j, j + k) = lower * f[static_cast<std::size_t>(j)];
    }
  }
  return d;
}

Operator tensor_product(const Operator& a, const Operator& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw ValidationError("tensor_product expects square operators");
  }
  const Eigen::Index na = a.rows();
  const Eigen::Index nb = b.rows();
  Operator out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
    }
  }
  return out;
}

Operator embed_a(const Operator& op_a, int nb) { return tensor_product(op_a, Operator::Identity(nb, nb)); }
Operator embed_b(int na, const Operator& op_b) { return tensor_product(Operator::Identity(na, na), op_b); }

namespace {

// Connected components of the nonzero pattern of a Hermitian matrix.
std::vector<std::vector<Eigen::Index>> decoupled_blocks(const Matrix& m) {
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      if (m(i, j) != cplx{} || m(j, i) != cplx{}) {
        const auto ri = find(i);
        const auto rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

}  // namespace

Eigensystem hermitian_eigensystem(const Operator& m, double hermitian_tol) {
  if (m.rows() != m.cols()) throw ValidationError("eigensystem requires a square matrix");
  const double scale = std::max(1.0, max_abs(m));
  if (const double d = hermiticity_defect(m); d > hermitian_tol * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian (defect " << d << ")";
    throw ValidationError(os.str());
  }
  const Matrix herm = 0.5 * (m + m.adjoint());
  const Eigen::Index n = m.rows();

  struct Pair {
    double value;
    Eigen::Index block;
    Eigen::Index col;
  };
  const auto blocks = decoupled_blocks(herm);
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  std::vector<Matrix> block_vectors;
  block_vectors.reserve(blocks.size());

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& idx = blocks[b];
    const auto bn = static_cast<Eigen::Index>(idx.size());
    Matrix sub(bn, bn);
    for (Eigen::Index i = 0; i < bn; ++i)
      for (Eigen::Index j = 0; j < bn; ++j) sub(i, j) = herm(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sub);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed to converge");
    for (Eigen::Index c = 0; c < bn; ++c) pairs.push_back({es.eigenvalues()(c), static_cast<Eigen::Index>(b), c});
    block_vectors.push_back(es.eigenvectors());
  }

  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.value < y.value; });

  Eigensystem out;
  out.values.resize(n);
  out.vectors = Matrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const Pair& p = pairs[static_cast<std::size_t>(c)];
    out.values(c) = p.value;
    const auto& idx = blocks[static_cast<std::size_t>(p.block)];
    const Matrix& vecs = block_vectors[static_cast<std::size_t>(p.block)];
    for (std::size_t i = 0; i < idx.size(); ++i) out.vectors(idx[i], c) = vecs(static_cast<Eigen::Index>(i), p.col);
  }
  return out;
}

Operator matrix_exponential(const Operator& m) {
  if (m.rows() != m.cols()) throw ValidationError("matrix_exponential requires a square matrix");
  if (!m.allFinite()) throw ValidationError("matrix_exponential requires finite entries");
  return m.exp();
}

namespace {

void check_bipartite(Eigen::Index dim, BipartiteDims dims) {
  if (dims.na < 1 || dims.nb < 1 || dims.dim() != dim) {
    throw ValidationError("bipartite dims " + std::to_string(dims.na) + "x" + std::to_string(dims.nb) +
                          " do not match dimension " + std::to_string(dim));
  }
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, BipartiteDims dims, Subsystem keep) {
  const Matrix& r = rho.matrix();
  check_bipartite(r.rows(), dims);
  if (rho.bipartite() && *rho.bipartite() != dims) throw ValidationError("bipartite dims disagree with the state tag");
  const int na = dims.na;
  const int nb = dims.nb;
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(na, na);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) out(i, j) = r.block(i * nb, j * nb, nb, nb).trace();
    return DensityMatrix::assume_valid(std::move(out));
  }
  Matrix out = Matrix::Zero(nb, nb);
  for (int i = 0; i < na; ++i) out += r.block(i * nb, i * nb, nb, nb);
  return DensityMatrix::assume_valid(std::move(out));
}

Operator partial_transpose(const Operator& rho, BipartiteDims dims, Subsystem moved) {
  if (rho.rows() != rho.cols()) throw ValidationError("partial_transpose requires a square matrix");
  check_bipartite(rho.rows(), dims);
  const int na = dims.na;
  const int nb = dims.nb;
  Operator out(rho.rows(), rho.cols());
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      if (moved == Subsystem::B) {
        out.block(i * nb, j * nb, nb, nb) = rho.block(i * nb, j * nb, nb, nb).transpose();
      } else {
        out.block(i * nb, j * nb, nb, nb) = rho.block(j * nb, i * nb, nb, nb);
      }
    }
  }
  return out;
}

Operator partial_transpose(const DensityMatrix& rho, BipartiteDims dims, Subsystem moved) {
  return partial_transpose(rho.matrix(), dims, moved);
}

}  // namespace catsim
