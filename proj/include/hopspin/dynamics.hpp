#pragma once

// Time evolution of initial states, per-time-point observables, and the
// closed-form strong-hopping solutions.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hopspin/linalg.hpp"
#include "hopspin/model.hpp"

namespace hopspin {

/// Uniform sampling of [0, t_max] (time in units of 1/J).
struct TimeGrid {
  double t_max = 30.0;
  std::size_t n_points = 2001;

  void validate() const;
  std::vector<double> times() const;
  double spacing() const { return t_max / static_cast<double>(n_points - 1); }
};

enum class HamiltonianKind {
  exact,
  effective_two_site,
  effective_three_site_projector,
  effective_three_site_middle_start,
};

HamiltonianKind effective_kind(EffectiveVariant variant);
/// "exact" or an effective variant name.
HamiltonianKind parse_hamiltonian_kind(std::string_view text);
std::string_view to_string(HamiltonianKind kind);

ComplexMatrix build_hamiltonian(const ModelSpec& spec, HamiltonianKind kind);

struct ObservableRecord {
  double t = 0.0;
  /// Probability of finding the mobile particle at each site, layout order.
  std::vector<double> site_probabilities;
  double p_up = 0.0;
  double f_plus = 0.0;
  double f_minus = 0.0;
  double log_negativity = 0.0;
  double f2 = 0.0;
  double sz_total = 0.0;
  double s12_squared = 0.0;
  double norm = 0.0;
  /// <H> for the Hamiltonian that generated the trajectory (0 if none given).
  double energy = 0.0;

  double site_probability(const BasisLayout& layout, int site_label) const {
    return site_probabilities.at(layout.position(site_label));
  }
};

/// Reduced state of the two static spins (4x4, spin 1 major), tracing out
/// the site and the mobile spin.
ComplexMatrix static_spin_density(const StateVector& state, const BasisLayout& layout);

/// Reduced state of the three spins (8x8), tracing out the site.
ComplexMatrix spin_density(const StateVector& state, const BasisLayout& layout);

/// Precomputes the operators needed for ObservableRecord. Immutable after
/// construction; safe to share across threads.
class ObservableEvaluator {
 public:
  explicit ObservableEvaluator(const BasisLayout& layout,
                               std::optional<ComplexMatrix> hamiltonian = std::nullopt);

  ObservableRecord operator()(const StateVector& state, double t = 0.0) const;
  const BasisLayout& layout() const noexcept { return layout_; }

 private:
  BasisLayout layout_;
  ComplexMatrix sz_total_;
  ComplexMatrix s12_squared_;
  std::optional<ComplexMatrix> hamiltonian_;
};

/// Observables of a single state (energy left at 0).
ObservableRecord observables(const StateVector& state, const BasisLayout& layout, double t = 0.0);

/// Propagator exp(-iHt) applied to one fixed initial state, with the
/// eigenbasis coefficients cached.
class SpectralPropagator {
 public:
  SpectralPropagator(Eigensystem eig, const StateVector& initial);
  StateVector state_at(double t) const;
  const Eigensystem& eigensystem() const noexcept { return eig_; }

 private:
  Eigensystem eig_;
  std::vector<Complex> coefficients_;
};

/// Observables along the grid, evolving `initial` under the chosen
/// Hamiltonian. Time points are evaluated in parallel.
std::vector<ObservableRecord> run_trajectory(const ModelSpec& spec, HamiltonianKind kind,
                                             const StateVector& initial, const TimeGrid& grid);

/// Evolved states along the grid (parallel over time points).
std::vector<StateVector> evolve_states(const ModelSpec& spec, HamiltonianKind kind,
                                       const StateVector& initial, const TimeGrid& grid);

/// |x=1>|down>_e|up,down>_12: the excitation starts on static spin 1.
StateVector qst_initial_state(const BasisLayout& layout);
std::vector<ObservableRecord> qst_trajectory(const ModelSpec& spec, HamiltonianKind kind,
                                             const TimeGrid& grid);

/// 1 - population of span{|up,down,down>, |down,Psi+>} on every site.
double doublet_leakage(const StateVector& state, const BasisLayout& layout);

/// Population of each hopping eigenmode, ascending kinetic energy. For three
/// sites, index 1 is the zero-energy mode (|1> - |2>)/sqrt(2).
std::vector<double> kinetic_mode_populations(const StateVector& state, const BasisLayout& layout);

// ----------------------------------------------------- analytic solutions

enum class ModelKind { xy, heisenberg };
enum class Lattice { two_site, three_site_middle_start };

/// Spin state alpha_up |up,down,down> + alpha_down |down,Psi+> of the
/// effective chain started from |up,down,down>.
struct AnalyticSample {
  double t = 0.0;
  Complex alpha_up;
  Complex alpha_down;
  double up_probability() const { return std::norm(alpha_up); }
  double down_probability() const { return std::norm(alpha_down); }
};

AnalyticSample analytic_sample(ModelKind kind, Lattice lattice, double t, double j = 1.0);
inline AnalyticSample analytic_two_site(ModelKind kind, double t, double j = 1.0) {
  return analytic_sample(kind, Lattice::two_site, t, j);
}
/// Period of the oscillation amplitudes: 2 sqrt(2) pi / J (XY) and
/// 16 pi / (3J) (Heisenberg) on two sites, doubled for the middle start.
double analytic_period(ModelKind kind, Lattice lattice, double j = 1.0);

ModelKind parse_model_kind(std::string_view text);

}  // namespace hopspin
