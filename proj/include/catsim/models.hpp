#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "catsim/types.hpp"

namespace catsim {

/// Parameters of one driven-dissipative mode, in units of the chosen energy
/// scale (normally the two-photon decay rate of mode a).
struct ModeParams {
  double detuning = 0.0;          // Delta
  double self_interaction = 0.0;  // U (Kerr)
  cplx drive{};                   // G, two-photon drive
  double single_photon_decay = 0.0;  // gamma
  double two_photon_decay = 0.0;     // eta

  void validate() const;
};

enum class CouplingKind { None, Linear, Nonlinear };

CouplingKind parse_coupling_kind(std::string_view name);
std::string_view to_string(CouplingKind kind);

struct CouplingSpec {
  CouplingKind kind = CouplingKind::None;
  double strength = 0.0;
};

/// Generator data for the master equation. Jump operators already carry the
/// square root of their rate, so the dissipator is sum_k D[L_k].
struct SystemModel {
  Operator hamiltonian;
  std::vector<Operator> jumps;
  int dim = 0;
  std::optional<BipartiteDims> bipartite;
};

/// H = -Delta n + (U/2) a^dag^2 a^2 + (G/2) a^2 + (G^*/2) a^dag^2,
/// jumps sqrt(gamma) a (if gamma > 0) and sqrt(eta) a^2 (if eta > 0).
SystemModel build_one_mode(const ModeParams& p, int truncation);

/// Two coupled modes. Linear: g (a b^dag + a^dag b). Nonlinear (cascaded
/// down-conversion): g (a b^dag^2 + a^dag b^2), and mode b carries no
/// two-photon drive.
SystemModel build_two_mode(const ModeParams& pa, const ModeParams& pb, const CouplingSpec& coupling, int na,
                           int nb);

enum class CatParity { Even, Odd };

/// Coherent state |alpha>, renormalized over the truncated basis.
StateVector coherent_state(cplx alpha, int truncation);

/// (|xi> +- |-xi>) normalized over the truncated basis.
StateVector cat_state(cplx xi, CatParity parity, int truncation);

StateVector fock_state(int n, int truncation);

/// Principal root of alpha^2 = G^* / (i eta - U); -alpha is the partner
/// coherent component of the steady cat.
cplx steady_alpha(const ModeParams& p);

}  // namespace catsim
