#pragma once

// Physical configuration of a spin-1/2 particle hopping on a two- or
// three-site lattice while locally coupled to two static spins, and the
// exact and strong-hopping effective Hamiltonians on the composite space.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "hopspin/linalg.hpp"

namespace hopspin {

enum class CouplingPreset { xy, heisenberg, custom };

/// Lattice, hopping and spin-spin couplings. Energies are in units of J.
struct ModelSpec {
  int n_sites = 2;
  double eta = 0.0;
  double j_xy = 0.0;
  double j_z = 0.0;
  CouplingPreset preset = CouplingPreset::custom;
  /// Site label (1, 2, or 0 for the three-site middle) each static spin sits
  /// next to; index 0 is spin 1, index 1 is spin 2.
  std::array<int, 2> attachments{1, 2};

  /// XY-isotropic: j_xy = J, j_z = 0.
  static ModelSpec xy(int n_sites, double eta, double j = 1.0);
  /// Heisenberg: j_z = J = 2 j_xy.
  static ModelSpec heisenberg(int n_sites, double eta, double j = 1.0);

  /// The energy unit J used for ratios and analytic solutions.
  double energy_unit() const;
  double eta_over_j() const { return eta / energy_unit(); }

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

enum class Spin { up = 0, down = 1 };

/// Canonical ordering site (x) mobile spin (x) static spin 1 (x) static spin 2,
/// composite index = site*8 + sigma_e*4 + s1*2 + s2 with up=0, down=1.
/// Site labels map left to right onto layout positions: two sites 1->0, 2->1;
/// three sites 1->0, 0->1, 2->2.
class BasisLayout {
 public:
  explicit BasisLayout(int n_sites);

  int n_sites() const noexcept { return n_sites_; }
  std::size_t dim() const noexcept { return 8 * static_cast<std::size_t>(n_sites_); }

  /// Layout position of a physical site label; throws for unknown labels.
  std::size_t position(int site_label) const;
  int label(std::size_t position) const;
  /// Site labels in layout order.
  std::vector<int> labels() const;

  struct Components {
    std::size_t position;
    Spin mobile;
    Spin spin1;
    Spin spin2;
    friend bool operator==(const Components&, const Components&) = default;
  };

  std::size_t encode(const Components& c) const;
  Components decode(std::size_t index) const;

  /// Subsystem dimensions in tensor order: {n_sites, 2, 2, 2}.
  std::array<std::size_t, 4> subsystem_dims() const;

 private:
  int n_sites_;
};

/// Spin operators embedded in the full space (spin-1/2 normalization:
/// z components have eigenvalues +-1/2, raising operators unit elements).
struct SpinOperatorSet {
  ComplexMatrix sigma_plus, sigma_minus, sigma_z;
  std::array<ComplexMatrix, 2> s_plus, s_minus, s_z;

  explicit SpinOperatorSet(const BasisLayout& layout);

  /// sigma_z + S1z + S2z
  ComplexMatrix total_sz() const;
  /// (S1 + S2)^2, eigenvalues 2 (triplet) and 0 (singlet).
  ComplexMatrix static_total_spin_squared() const;
};

/// Single-particle (2x2) spin operators in the up=0, down=1 encoding.
namespace spin_half {
ComplexMatrix raising();
ComplexMatrix lowering();
ComplexMatrix sz();
ComplexMatrix identity();
}  // namespace spin_half

/// n x n hopping matrix in layout order (motional space only).
ComplexMatrix motional_hopping(int n_sites, double eta);

/// eta times nearest-neighbour hopping, identity on all spin factors.
ComplexMatrix build_hopping(const ModelSpec& spec);
/// Local couplings J_xy (sigma+ S- + h.c.) + J_z sigma_z S_z at each attached site.
ComplexMatrix build_interaction(const ModelSpec& spec);
ComplexMatrix build_hamiltonian(const ModelSpec& spec);

enum class EffectiveVariant { two_site, three_site_projector, three_site_middle_start };

/// Three-spin chain operator J_xy (sigma+ S12- + h.c.) + J_z sigma_z S12z,
/// on the 8-dimensional spin space.
ComplexMatrix chain_coupling(double j_xy, double j_z);

/// Secular (rotating-wave) part of a site projector |x><x| with respect to
/// the hopping Hamiltonian: sum_k |<phi_k|x>|^2 |phi_k><phi_k| over the
/// kinetic eigenmodes (degenerate modes grouped).
ComplexMatrix secular_site_projector(int n_sites, double eta, int site_label);

/// Strong-hopping effective Hamiltonian.
///  - two_site: H_hop + (J_xy/2, J_z/2) chain coupling, spin-only.
///  - three_site_projector: H_hop3 + P_eff (x) (J_xy, J_z) chain coupling with
///    P_eff the secular part of the attached-site projector.
///  - three_site_middle_start: H_hop3 + spin-only chain with each coupling
///    weighted by the attached site's weight on the outer kinetic modes
///    (1/4 for the end sites).
/// Throws std::invalid_argument on variant/n_sites mismatch.
ComplexMatrix build_effective_hamiltonian(const ModelSpec& spec, EffectiveVariant variant);

enum class StaticPreset { up_up, up_down, down_up, down_down, psi_plus, psi_minus };

/// Two-qubit state of the static spins (4 amplitudes, spin 1 major).
StateVector static_spin_state(StaticPreset preset);

/// |site> |e_spin> |static preset> in layout order.
StateVector encode_state(const BasisLayout& layout, int site_label, Spin e_spin,
                         StaticPreset statics);

Spin parse_spin(std::string_view text);
StaticPreset parse_static_preset(std::string_view text);
EffectiveVariant parse_effective_variant(std::string_view text);
CouplingPreset parse_coupling_preset(std::string_view text);
std::string_view to_string(EffectiveVariant variant);
std::string_view to_string(CouplingPreset preset);

}  // namespace hopspin
