#include "hopspin/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hopspin {

// ---------------------------------------------------------------- ModelSpec

ModelSpec ModelSpec::xy(int n_sites, double eta, double j) {
  ModelSpec spec;
  spec.n_sites = n_sites;
  spec.eta = eta;
  spec.j_xy = j;
  spec.j_z = 0.0;
  spec.preset = CouplingPreset::xy;
  return spec;
}

ModelSpec ModelSpec::heisenberg(int n_sites, double eta, double j) {
  ModelSpec spec;
  spec.n_sites = n_sites;
  spec.eta = eta;
  spec.j_xy = 0.5 * j;
  spec.j_z = j;
  spec.preset = CouplingPreset::heisenberg;
  return spec;
}

double ModelSpec::energy_unit() const {
  double unit = 0.0;
  switch (preset) {
    case CouplingPreset::xy: unit = std::abs(j_xy); break;
    case CouplingPreset::heisenberg: unit = std::abs(j_z); break;
    case CouplingPreset::custom: unit = std::max(std::abs(j_xy), std::abs(j_z)); break;
  }
  return unit > 0.0 ? unit : 1.0;
}

void ModelSpec::validate() const {
  if (n_sites != 2 && n_sites != 3) {
    throw std::invalid_argument("n_sites must be 2 or 3 (got " + std::to_string(n_sites) + ")");
  }
  if (!std::isfinite(eta) || eta < 0.0) {
    throw std::invalid_argument("eta must be finite and non-negative");
  }
  if (!std::isfinite(j_xy) || !std::isfinite(j_z)) {
    throw std::invalid_argument("couplings j_xy and j_z must be finite");
  }
  const BasisLayout layout(n_sites);
  for (int label : attachments) {
    try {
      (void)layout.position(label);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("attachments: site " + std::to_string(label) +
                                  " does not exist on a " + std::to_string(n_sites) +
                                  "-site lattice");
    }
  }
  if (attachments[0] == attachments[1]) {
    throw std::invalid_argument("attachments: static spins must sit at distinct sites");
  }
  const double tol = 1e-12 * std::max({1.0, std::abs(j_xy), std::abs(j_z)});
  if (preset == CouplingPreset::xy && std::abs(j_z) > tol) {
    throw std::invalid_argument("preset xy requires j_z = 0");
  }
  if (preset == CouplingPreset::heisenberg && std::abs(j_z - 2.0 * j_xy) > tol) {
    throw std::invalid_argument("preset heisenberg requires j_z = 2 * j_xy");
  }
}

// -------------------------------------------------------------- BasisLayout

BasisLayout::BasisLayout(int n_sites) : n_sites_(n_sites) {
  if (n_sites != 2 && n_sites != 3) {
    throw std::invalid_argument("BasisLayout: n_sites must be 2 or 3");
  }
}

std::size_t BasisLayout::position(int site_label) const {
  if (n_sites_ == 2) {
    if (site_label == 1) return 0;
    if (site_label == 2) return 1;
  } else {
    if (site_label == 1) return 0;
    if (site_label == 0) return 1;
    if (site_label == 2) return 2;
  }
  throw std::invalid_argument("unknown site label " + std::to_string(site_label) + " for " +
                              std::to_string(n_sites_) + "-site lattice");
}

int BasisLayout::label(std::size_t position) const {
  if (position >= static_cast<std::size_t>(n_sites_)) {
    throw std::out_of_range("BasisLayout::label: position out of range");
  }
  if (n_sites_ == 2) return position == 0 ? 1 : 2;
  constexpr int kThreeSite[] = {1, 0, 2};
  return kThreeSite[position];
}

std::vector<int> BasisLayout::labels() const {
  std::vector<int> out;
  for (std::size_t p = 0; p < static_cast<std::size_t>(n_sites_); ++p) out.push_back(label(p));
  return out;
}

std::size_t BasisLayout::encode(const Components& c) const {
  if (c.position >= static_cast<std::size_t>(n_sites_)) {
    throw std::out_of_range("BasisLayout::encode: site position out of range");
  }
  return c.position * 8 + static_cast<std::size_t>(c.mobile) * 4 +
         static_cast<std::size_t>(c.spin1) * 2 + static_cast<std::size_t>(c.spin2);
}

BasisLayout::Components BasisLayout::decode(std::size_t index) const {
  if (index >= dim()) throw std::out_of_range("BasisLayout::decode: index out of range");
  return {index / 8, static_cast<Spin>((index / 4) % 2), static_cast<Spin>((index / 2) % 2),
          static_cast<Spin>(index % 2)};
}

std::array<std::size_t, 4> BasisLayout::subsystem_dims() const {
  return {static_cast<std::size_t>(n_sites_), 2, 2, 2};
}

// ------------------------------------------------------------ spin algebra

namespace spin_half {
ComplexMatrix raising() { return ComplexMatrix(2, 2, {0.0, 1.0, 0.0, 0.0}); }
ComplexMatrix lowering() { return ComplexMatrix(2, 2, {0.0, 0.0, 1.0, 0.0}); }
ComplexMatrix sz() { return ComplexMatrix(2, 2, {0.5, 0.0, 0.0, -0.5}); }
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
}  // namespace spin_half

namespace {

using namespace spin_half;

// Local e-spin / static-spin coupling on the 8-dim spin space (e, s1, s2).
ComplexMatrix local_coupling(int spin_index, double j_xy, double j_z) {
  const ComplexMatrix id = identity();
  const auto on_static = [&](const ComplexMatrix& op) {
    return spin_index == 0 ? kron(op, id) : kron(id, op);
  };
  ComplexMatrix out = kron(raising(), on_static(lowering())) + kron(lowering(), on_static(raising()));
  out *= j_xy;
  out += Complex(j_z) * kron(sz(), on_static(sz()));
  return out;
}

ComplexMatrix site_projector(std::size_t n, std::size_t position) {
  ComplexMatrix p(n, n);
  p(position, position) = 1.0;
  return p;
}

void require_valid(const ModelSpec& spec) { spec.validate(); }

}  // namespace

SpinOperatorSet::SpinOperatorSet(const BasisLayout& layout) {
  const auto motion = ComplexMatrix::identity(static_cast<std::size_t>(layout.n_sites()));
  const auto id = identity();
  sigma_plus = kron({motion, raising(), id, id});
  sigma_minus = kron({motion, lowering(), id, id});
  sigma_z = kron({motion, sz(), id, id});
  s_plus[0] = kron({motion, id, raising(), id});
  s_minus[0] = kron({motion, id, lowering(), id});
  s_z[0] = kron({motion, id, sz(), id});
  s_plus[1] = kron({motion, id, id, raising()});
  s_minus[1] = kron({motion, id, id, lowering()});
  s_z[1] = kron({motion, id, id, sz()});
}

ComplexMatrix SpinOperatorSet::total_sz() const { return sigma_z + s_z[0] + s_z[1]; }

ComplexMatrix SpinOperatorSet::static_total_spin_squared() const {
  // (S1+S2)^2 = Sz^2 + (S+S- + S-S+)/2 with S = S1 + S2.
  const ComplexMatrix plus = s_plus[0] + s_plus[1];
  const ComplexMatrix minus = s_minus[0] + s_minus[1];
  const ComplexMatrix z = s_z[0] + s_z[1];
  return z * z + 0.5 * (plus * minus + minus * plus);
}

// ---------------------------------------------------------------- builders

ComplexMatrix motional_hopping(int n_sites, double eta) {
  const BasisLayout layout(n_sites);
  const auto n = static_cast<std::size_t>(n_sites);
  ComplexMatrix hop(n, n);
  // Neighbouring layout positions are neighbouring sites (1-2, or 1-0-2).
  for (std::size_t p = 0; p + 1 < n; ++p) {
    hop(p, p + 1) = eta;
    hop(p + 1, p) = eta;
  }
  return hop;
}

ComplexMatrix build_hopping(const ModelSpec& spec) {
  require_valid(spec);
  return kron(motional_hopping(spec.n_sites, spec.eta), ComplexMatrix::identity(8));
}

ComplexMatrix build_interaction(const ModelSpec& spec) {
  require_valid(spec);
  const BasisLayout layout(spec.n_sites);
  const auto n = static_cast<std::size_t>(spec.n_sites);
  ComplexMatrix v = ComplexMatrix::zeros(layout.dim());
  for (int s = 0; s < 2; ++s) {
    const auto pos = layout.position(spec.attachments[static_cast<std::size_t>(s)]);
    v += kron(site_projector(n, pos), local_coupling(s, spec.j_xy, spec.j_z));
  }
  return v;
}

ComplexMatrix build_hamiltonian(const ModelSpec& spec) {
  return build_hopping(spec) + build_interaction(spec);
}

ComplexMatrix chain_coupling(double j_xy, double j_z) {
  return local_coupling(0, j_xy, j_z) + local_coupling(1, j_xy, j_z);
}

ComplexMatrix secular_site_projector(int n_sites, double eta, int site_label) {
  const BasisLayout layout(n_sites);
  const auto n = static_cast<std::size_t>(n_sites);
  const ComplexMatrix projector = site_projector(n, layout.position(site_label));
  const auto eig = hermitian_eigensystem(motional_hopping(n_sites, eta));
  const double tol = 1e-9 * std::max(1.0, std::abs(eta));

  ComplexMatrix out(n, n);
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && eig.values[end] - eig.values[begin] <= tol) ++end;
    ComplexMatrix group(n, n);
    for (std::size_t k = begin; k < end; ++k) group += outer(eig.vector(k));
    out += group * projector * group;
    begin = end;
  }
  return out;
}

ComplexMatrix build_effective_hamiltonian(const ModelSpec& spec, EffectiveVariant variant) {
  require_valid(spec);
  const bool two_site_variant = variant == EffectiveVariant::two_site;
  if (two_site_variant != (spec.n_sites == 2)) {
    throw std::invalid_argument("effective variant " + std::string(to_string(variant)) +
                                " does not apply to a " + std::to_string(spec.n_sites) +
                                "-site lattice");
  }
  const auto n = static_cast<std::size_t>(spec.n_sites);
  const ComplexMatrix hop = build_hopping(spec);

  switch (variant) {
    case EffectiveVariant::two_site:
      return hop + kron(ComplexMatrix::identity(n), chain_coupling(0.5 * spec.j_xy, 0.5 * spec.j_z));

    case EffectiveVariant::three_site_projector: {
      ComplexMatrix v = ComplexMatrix::zeros(8 * n);
      for (int s = 0; s < 2; ++s) {
        const auto p_eff =
            secular_site_projector(spec.n_sites, spec.eta, spec.attachments[static_cast<std::size_t>(s)]);
        v += kron(p_eff, local_coupling(s, spec.j_xy, spec.j_z));
      }
      return hop + v;
    }

    case EffectiveVariant::three_site_middle_start: {
      // Starting from the middle site the dynamics stays on the two outer
      // kinetic modes, where every site projector is a multiple of identity.
      const BasisLayout layout(spec.n_sites);
      const auto eig = hermitian_eigensystem(motional_hopping(spec.n_sites, 1.0));
      const StateVector top_mode = eig.vector(n - 1);
      ComplexMatrix spin_part = ComplexMatrix::zeros(8);
      for (int s = 0; s < 2; ++s) {
        const auto pos = layout.position(spec.attachments[static_cast<std::size_t>(s)]);
        const double weight = std::norm(top_mode[pos]);
        spin_part += Complex(weight) * local_coupling(s, spec.j_xy, spec.j_z);
      }
      return hop + kron(ComplexMatrix::identity(n), spin_part);
    }
  }
  throw std::logic_error("unhandled effective variant");
}

// ------------------------------------------------------------------ states

StateVector static_spin_state(StaticPreset preset) {
  const double r = 1.0 / std::sqrt(2.0);
  // Index = s1*2 + s2 with up=0.
  switch (preset) {
    case StaticPreset::up_up: return StateVector::basis(4, 0);
    case StaticPreset::up_down: return StateVector::basis(4, 1);
    case StaticPreset::down_up: return StateVector::basis(4, 2);
    case StaticPreset::down_down: return StateVector::basis(4, 3);
    case StaticPreset::psi_plus: return StateVector(std::vector<Complex>{0.0, r, r, 0.0});
    case StaticPreset::psi_minus: return StateVector(std::vector<Complex>{0.0, r, -r, 0.0});
  }
  throw std::invalid_argument("unknown static spin preset");
}

StateVector encode_state(const BasisLayout& layout, int site_label, Spin e_spin,
                         StaticPreset statics) {
  const auto n = static_cast<std::size_t>(layout.n_sites());
  const StateVector site = StateVector::basis(n, layout.position(site_label));
  const StateVector mobile = StateVector::basis(2, static_cast<std::size_t>(e_spin));
  return kron(kron(site, mobile), static_spin_state(statics));
}

// ------------------------------------------------------------------ labels

Spin parse_spin(std::string_view text) {
  if (text == "up") return Spin::up;
  if (text == "down") return Spin::down;
  throw std::invalid_argument("unknown spin label '" + std::string(text) + "' (expected up|down)");
}

StaticPreset parse_static_preset(std::string_view text) {
  if (text == "up-up") return StaticPreset::up_up;
  if (text == "up-down") return StaticPreset::up_down;
  if (text == "down-up") return StaticPreset::down_up;
  if (text == "down-down") return StaticPreset::down_down;
  if (text == "psi-plus") return StaticPreset::psi_plus;
  if (text == "psi-minus") return StaticPreset::psi_minus;
  throw std::invalid_argument("unknown static spin preset '" + std::string(text) +
                              "' (expected up-up|up-down|down-up|down-down|psi-plus|psi-minus)");
}

EffectiveVariant parse_effective_variant(std::string_view text) {
  if (text == "two_site") return EffectiveVariant::two_site;
  if (text == "three_site_projector") return EffectiveVariant::three_site_projector;
  if (text == "three_site_middle_start") return EffectiveVariant::three_site_middle_start;
  throw std::invalid_argument("unknown effective variant '" + std::string(text) + "'");
}

CouplingPreset parse_coupling_preset(std::string_view text) {
  if (text == "xy") return CouplingPreset::xy;
  if (text == "heisenberg") return CouplingPreset::heisenberg;
  if (text == "custom") return CouplingPreset::custom;
  throw std::invalid_argument("unknown coupling preset '" + std::string(text) +
                              "' (expected xy|heisenberg|custom)");
}

std::string_view to_string(EffectiveVariant variant) {
  switch (variant) {
    case EffectiveVariant::two_site: return "two_site";
    case EffectiveVariant::three_site_projector: return "three_site_projector";
    case EffectiveVariant::three_site_middle_start: return "three_site_middle_start";
  }
  return "?";
}

std::string_view to_string(CouplingPreset preset) {
  switch (preset) {
    case CouplingPreset::xy: return "xy";
    case CouplingPreset::heisenberg: return "heisenberg";
    case CouplingPreset::custom: return "custom";
  }
  return "?";
}

}  // namespace hopspin
