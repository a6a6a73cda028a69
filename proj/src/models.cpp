#include "catsim/models.hpp"

#include <cmath>
#include <string>

#include "catsim/diagnostics.hpp"
#include "catsim/fock.hpp"

namespace catsim {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Operator mode_hamiltonian(const ModeParams& p, const LadderOperators& ops) {
  const Operator a2 = ops.annihilation * ops.annihilation;
  const Operator ad2 = ops.creation * ops.creation;
  Operator h = -p.detuning * ops.number + (0.5 * p.self_interaction) * (ad2 * a2) + (0.5 * p.drive) * a2 +
               (0.5 * std::conj(p.drive)) * ad2;
  return h;
}

void append_mode_jumps(const ModeParams& p, const LadderOperators& ops, std::vector<Operator>& jumps) {
  if (p.single_photon_decay > 0.0) jumps.push_back(std::sqrt(p.single_photon_decay) * ops.annihilation);
  if (p.two_photon_decay > 0.0) {
    jumps.push_back(std::sqrt(p.two_photon_decay) * (ops.annihilation * ops.annihilation));
  }
}

}  // namespace

void ModeParams::validate() const {
  if (!std::isfinite(detuning) || !std::isfinite(self_interaction) || !finite(drive) ||
      !std::isfinite(single_photon_decay) || !std::isfinite(two_photon_decay)) {
    throw ValidationError("mode parameters must be finite");
  }
  if (single_photon_decay < 0.0) throw ValidationError("single-photon decay rate must be non-negative");
  if (two_photon_decay < 0.0) throw ValidationError("two-photon decay rate must be non-negative");
}

CouplingKind parse_coupling_kind(std::string_view name) {
  if (name == "none") return CouplingKind::None;
  if (name == "linear") return CouplingKind::Linear;
  if (name == "nonlinear") return CouplingKind::Nonlinear;
  throw ValidationError("unknown coupling kind '" + std::string(name) + "'");
}

std::string_view to_string(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::None: return "none";
    case CouplingKind::Linear: return "linear";
    case CouplingKind::Nonlinear: return "nonlinear";
  }
  return "unknown";
}

SystemModel build_one_mode(const ModeParams& p, int truncation) {
  p.validate();
  if (truncation < 4) throw ValidationError("one-mode truncation must be at least 4");
  const auto ops = ladder_operators(FockSpace(truncation));
  SystemModel model;
  model.dim = truncation;
  model.hamiltonian = mode_hamiltonian(p, ops);
  append_mode_jumps(p, ops, model.jumps);
  return model;
}

SystemModel build_two_mode(const ModeParams& pa, const ModeParams& pb, const CouplingSpec& coupling, int na,
                           int nb) {
  pa.validate();
  pb.validate();
  if (na < 4 || nb < 4) throw ValidationError("two-mode truncations must be at least 4");
  if (!std::isfinite(coupling.strength) || coupling.strength < 0.0) {
    throw ValidationError("coupling strength must be finite and non-negative");
  }
  switch (coupling.kind) {
    case CouplingKind::None:
      if (coupling.strength != 0.0) throw ValidationError("coupling kind 'none' requires zero strength");
      break;
    case CouplingKind::Linear: break;
    case CouplingKind::Nonlinear:
      if (pb.drive != cplx{}) {
        throw ValidationError("nonlinear coupling: mode b is driven through the coupling and must have G = 0");
      }
      break;
    default: throw ValidationError("unknown coupling kind");
  }

  const auto a = ladder_operators(FockSpace(na));
  const auto b = ladder_operators(FockSpace(nb));

  SystemModel model;
  model.dim = na * nb;
  model.bipartite = BipartiteDims{na, nb};
  model.hamiltonian = embed_a(mode_hamiltonian(pa, a), nb) + embed_b(na, mode_hamiltonian(pb, b));

  const double g = coupling.strength;
  if (coupling.kind == CouplingKind::Linear && g != 0.0) {
    model.hamiltonian +=
        g * (tensor_product(a.annihilation, b.creation) + tensor_product(a.creation, b.annihilation));
  } else if (coupling.kind == CouplingKind::Nonlinear && g != 0.0) {
    const Operator b2 = b.annihilation * b.annihilation;
    const Operator bd2 = b.creation * b.creation;
    model.hamiltonian += g * (tensor_product(a.annihilation, bd2) + tensor_product(a.creation, b2));
  }

  std::vector<Operator> ja;
  std::vector<Operator> jb;
  append_mode_jumps(pa, a, ja);
  append_mode_jumps(pb, b, jb);
  for (const auto& j : ja) model.jumps.push_back(embed_a(j, nb));
  for (const auto& j : jb) model.jumps.push_back(embed_b(na, j));
  return model;
}

StateVector coherent_state(cplx alpha, int truncation) {
  if (!finite(alpha)) throw ValidationError("coherent amplitude must be finite");
  FockSpace space(truncation);
  if (std::norm(alpha) > truncation / 4.0) {
    warn("coherent state |alpha|^2 = " + std::to_string(std::norm(alpha)) + " is large for truncation " +
         std::to_string(truncation));
  }
  Vector v(space.dim());
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < space.dim(); ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return StateVector::normalized(std::move(v));
}

StateVector cat_state(cplx xi, CatParity parity, int truncation) {
  if (!finite(xi)) throw ValidationError("cat amplitude must be finite");
  if (parity == CatParity::Odd && xi == cplx{}) throw ValidationError("odd cat state with xi = 0 is a null vector");
  FockSpace space(truncation);
  if (std::norm(xi) > truncation / 4.0) {
    warn("cat state |xi|^2 = " + std::to_string(std::norm(xi)) + " is large for truncation " +
         std::to_string(truncation));
  }
  // Coherent amplitudes on the kept parity sector only; the factor
  // (1 +- (-1)^n) and the overall normalization are absorbed by normalizing.
  Vector v = Vector::Zero(space.dim());
  cplx c = std::exp(-0.5 * std::norm(xi));
  const int keep = parity == CatParity::Even ? 0 : 1;
  for (int n = 0; n < space.dim(); ++n) {
    if (n > 0) c *= xi / std::sqrt(static_cast<double>(n));
    if (n % 2 == keep) v(n) = c;
  }
  if (!(v.norm() > 0.0)) throw ValidationError("cat state underflows in the truncated basis");
  return StateVector::normalized(std::move(v));
}

StateVector fock_state(int n, int truncation) {
  FockSpace space(truncation);
  if (n < 0 || n >= space.dim()) {
    throw ValidationError("Fock index " + std::to_string(n) + " outside truncation " + std::to_string(truncation));
  }
  Vector v = Vector::Zero(space.dim());
  v(n) = 1.0;
  return StateVector(std::move(v));
}

cplx steady_alpha(const ModeParams& p) {
  p.validate();
  const cplx denom{-p.self_interaction, p.two_photon_decay};
  if (denom == cplx{}) throw ValidationError("steady_alpha requires eta != 0 or U != 0");
  return std::sqrt(std::conj(p.drive) / denom);
}

}  // namespace catsim
