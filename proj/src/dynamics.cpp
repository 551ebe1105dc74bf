#include "hopspin/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hopspin/analysis.hpp"
#include "hopspin/kernels.hpp"

namespace hopspin {

// ------------------------------------------------------------------ grids

void TimeGrid::validate() const {
  if (n_points < 2) throw std::invalid_argument("time grid needs at least 2 points");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("time grid t_max must be positive and finite");
  }
}

std::vector<double> TimeGrid::times() const {
  validate();
  std::vector<double> out(n_points);
  const double last = static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) out[i] = t_max * (static_cast<double>(i) / last);
  return out;
}

// ------------------------------------------------------- hamiltonian kinds

HamiltonianKind effective_kind(EffectiveVariant variant) {
  switch (variant) {
    case EffectiveVariant::two_site: return HamiltonianKind::effective_two_site;
    case EffectiveVariant::three_site_projector: return HamiltonianKind::effective_three_site_projector;
    case EffectiveVariant::three_site_middle_start:
      return HamiltonianKind::effective_three_site_middle_start;
  }
  throw std::logic_error("unhandled effective variant");
}

HamiltonianKind parse_hamiltonian_kind(std::string_view text) {
  if (text == "exact") return HamiltonianKind::exact;
  try {
    return effective_kind(parse_effective_variant(text));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(
        "unknown hamiltonian '" + std::string(text) +
        "' (expected exact|two_site|three_site_projector|three_site_middle_start)");
  }
}

std::string_view to_string(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::exact: return "exact";
    case HamiltonianKind::effective_two_site: return "two_site";
    case HamiltonianKind::effective_three_site_projector: return "three_site_projector";
    case HamiltonianKind::effective_three_site_middle_start: return "three_site_middle_start";
  }
  return "?";
}

ComplexMatrix build_hamiltonian(const ModelSpec& spec, HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::exact: return build_hamiltonian(spec);
    case HamiltonianKind::effective_two_site:
      return build_effective_hamiltonian(spec, EffectiveVariant::two_site);
    case HamiltonianKind::effective_three_site_projector:
      return build_effective_hamiltonian(spec, EffectiveVariant::three_site_projector);
    case HamiltonianKind::effective_three_site_middle_start:
      return build_effective_hamiltonian(spec, EffectiveVariant::three_site_middle_start);
  }
  throw std::logic_error("unhandled hamiltonian kind");
}

// ----------------------------------------------------------- observables

namespace {

void require_layout_dim(const StateVector& state, const BasisLayout& layout) {
  if (state.dim() != layout.dim()) {
    throw std::invalid_argument("state dimension " + std::to_string(state.dim()) +
                                " does not match the " + std::to_string(layout.n_sites()) +
                                "-site layout (" + std::to_string(layout.dim()) + ")");
  }
}

// Contracts the amplitudes over the leading `outer` block index; the
// remaining `inner` indices form the reduced density matrix.
ComplexMatrix trailing_density(const StateVector& state, std::size_t inner) {
  const std::size_t outer = state.dim() / inner;
  ComplexMatrix rho(inner, inner);
  for (std::size_t m = 0; m < outer; ++m) {
    for (std::size_t a = 0; a < inner; ++a) {
      const Complex psi_a = state[m * inner + a];
      if (psi_a == Complex{}) continue;
      for (std::size_t b = 0; b < inner; ++b) {
        rho(a, b) += psi_a * std::conj(state[m * inner + b]);
      }
    }
  }
  return rho;
}

}  // namespace

ComplexMatrix static_spin_density(const StateVector& state, const BasisLayout& layout) {
  require_layout_dim(state, layout);
  return trailing_density(state, 4);
}

ComplexMatrix spin_density(const StateVector& state, const BasisLayout& layout) {
  require_layout_dim(state, layout);
  return trailing_density(state, 8);
}

ObservableEvaluator::ObservableEvaluator(const BasisLayout& layout,
                                         std::optional<ComplexMatrix> hamiltonian)
    : layout_(layout), hamiltonian_(std::move(hamiltonian)) {
  const SpinOperatorSet ops(layout);
  sz_total_ = ops.total_sz();
  s12_squared_ = ops.static_total_spin_squared();
  if (hamiltonian_ && (hamiltonian_->rows() != layout.dim() || !hamiltonian_->square())) {
    throw std::invalid_argument("ObservableEvaluator: Hamiltonian does not match layout");
  }
}

ObservableRecord ObservableEvaluator::operator()(const StateVector& state, double t) const {
  require_layout_dim(state, layout_);
  ObservableRecord rec;
  rec.t = t;
  rec.norm = state.norm();

  const auto n = static_cast<std::size_t>(layout_.n_sites());
  rec.site_probabilities.assign(n, 0.0);
  for (std::size_t idx = 0; idx < state.dim(); ++idx) {
    const double p = std::norm(state[idx]);
    const auto c = layout_.decode(idx);
    rec.site_probabilities[c.position] += p;
    if (c.mobile == Spin::up) rec.p_up += p;
  }

  const ComplexMatrix rho12 = trailing_density(state, 4);
  // |Psi+-> = (|up,down> +- |down,up>)/sqrt2 -> indices 1 and 2.
  rec.f_plus = 0.5 * (rho12(1, 1) + rho12(2, 2) + rho12(1, 2) + rho12(2, 1)).real();
  rec.f_minus = 0.5 * (rho12(1, 1) + rho12(2, 2) - rho12(1, 2) - rho12(2, 1)).real();
  rec.f2 = rho12(2, 2).real();
  rec.log_negativity = log_negativity(rho12);

  rec.sz_total = expectation(sz_total_, state).real();
  rec.s12_squared = expectation(s12_squared_, state).real();
  if (hamiltonian_) rec.energy = expectation(*hamiltonian_, state).real();
  return rec;
}

ObservableRecord observables(const StateVector& state, const BasisLayout& layout, double t) {
  return ObservableEvaluator(layout)(state, t);
}

// ------------------------------------------------------------- evolution

SpectralPropagator::SpectralPropagator(Eigensystem eig, const StateVector& initial)
    : eig_(std::move(eig)) {
  if (initial.dim() != eig_.dim()) {
    throw std::invalid_argument("SpectralPropagator: dimension mismatch");
  }
  const std::size_t n = eig_.dim();
  coefficients_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    for (std::size_t r = 0; r < n; ++r) acc += std::conj(eig_.vectors(r, k)) * initial[r];
    coefficients_[k] = acc;
  }
}

StateVector SpectralPropagator::state_at(double t) const {
  const std::size_t n = eig_.dim();
  std::vector<Complex> phased(n);
  for (std::size_t k = 0; k < n; ++k) {
    phased[k] = coefficients_[k] * std::exp(-kI * (eig_.values[k] * t));
  }
  StateVector out(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) acc += eig_.vectors(r, k) * phased[k];
    out[r] = acc;
  }
  return out;
}

std::vector<ObservableRecord> run_trajectory(const ModelSpec& spec, HamiltonianKind kind,
                                             const StateVector& initial, const TimeGrid& grid) {
  const BasisLayout layout(spec.n_sites);
  require_layout_dim(initial, layout);
  const auto times = grid.times();
  ComplexMatrix h = build_hamiltonian(spec, kind);
  const SpectralPropagator propagator(hermitian_eigensystem(h), initial);
  const ObservableEvaluator evaluator(layout, std::move(h));
  return kernels::observe_grid(propagator, evaluator, times);
}

std::vector<StateVector> evolve_states(const ModelSpec& spec, HamiltonianKind kind,
                                       const StateVector& initial, const TimeGrid& grid) {
  const BasisLayout layout(spec.n_sites);
  require_layout_dim(initial, layout);
  const auto times = grid.times();
  const SpectralPropagator propagator(hermitian_eigensystem(build_hamiltonian(spec, kind)), initial);
  return kernels::evolve_grid(propagator, times);
}

StateVector qst_initial_state(const BasisLayout& layout) {
  return encode_state(layout, 1, Spin::down, StaticPreset::up_down);
}

std::vector<ObservableRecord> qst_trajectory(const ModelSpec& spec, HamiltonianKind kind,
                                             const TimeGrid& grid) {
  return run_trajectory(spec, kind, qst_initial_state(BasisLayout(spec.n_sites)), grid);
}

double doublet_leakage(const StateVector& state, const BasisLayout& layout) {
  require_layout_dim(state, layout);
  const double r = 1.0 / std::sqrt(2.0);
  double kept = 0.0;
  for (std::size_t p = 0; p < static_cast<std::size_t>(layout.n_sites()); ++p) {
    const Complex a = state[layout.encode({p, Spin::up, Spin::down, Spin::down})];
    const Complex b = r * (state[layout.encode({p, Spin::down, Spin::up, Spin::down})] +
                           state[layout.encode({p, Spin::down, Spin::down, Spin::up})]);
    kept += std::norm(a) + std::norm(b);
  }
  return std::max(0.0, 1.0 - kept);
}

std::vector<double> kinetic_mode_populations(const StateVector& state, const BasisLayout& layout) {
  require_layout_dim(state, layout);
  const auto n = static_cast<std::size_t>(layout.n_sites());
  const auto eig = hermitian_eigensystem(motional_hopping(layout.n_sites(), 1.0));
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = 0; s < 8; ++s) {
      Complex amp{};
      for (std::size_t p = 0; p < n; ++p) amp += std::conj(eig.vectors(p, k)) * state[p * 8 + s];
      out[k] += std::norm(amp);
    }
  }
  return out;
}

// ------------------------------------------------------------- analytic

AnalyticSample analytic_sample(ModelKind kind, Lattice lattice, double t, double j) {
  // The middle-start chain has half the two-site couplings.
  const double jj = lattice == Lattice::two_site ? j : 0.5 * j;
  AnalyticSample s;
  s.t = t;
  if (kind == ModelKind::xy) {
    const double w = jj * t / std::numbers::sqrt2;
    s.alpha_up = std::cos(w);
    s.alpha_down = -kI * std::sin(w);
  } else {
    const double w = 3.0 * jj * t / 8.0;
    const Complex global = std::exp(kI * (jj * t / 8.0));
    s.alpha_up = global * (std::cos(w) + kI * (std::sin(w) / 3.0));
    s.alpha_down = global * (-kI * (2.0 * std::numbers::sqrt2 / 3.0) * std::sin(w));
  }
  return s;
}

double analytic_period(ModelKind kind, Lattice lattice, double j) {
  const double scale = lattice == Lattice::two_site ? 1.0 : 2.0;
  if (kind == ModelKind::xy) return scale * 2.0 * std::numbers::sqrt2 * std::numbers::pi / j;
  return scale * 16.0 * std::numbers::pi / (3.0 * j);
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "xy") return ModelKind::xy;
  if (text == "heisenberg") return ModelKind::heisenberg;
  throw std::invalid_argument("analytic solutions exist only for the xy and heisenberg presets");
}

}  // namespace hopspin
