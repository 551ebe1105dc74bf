#pragma once

// Entanglement, conserved-quantity drift, exact-versus-effective deviation
// and period estimation.

#include <span>
#include <vector>

#include "hopspin/dynamics.hpp"
#include "hopspin/linalg.hpp"
#include "hopspin/model.hpp"

namespace hopspin {

/// log2 || rho^{T_A} ||_1 for a two-qubit density matrix, clamped at 0.
/// Throws std::invalid_argument unless rho is 4x4, Hermitian, unit trace and
/// positive semidefinite (all within 1e-9).
double log_negativity(const ComplexMatrix& rho12);

struct ConservationReport {
  double norm_drift = 0.0;
  double energy_drift = 0.0;
  double sz_drift = 0.0;
  double s12_squared_drift = 0.0;
};

/// Largest |q(t) - q(0)| per monitored quantity. Throws on an empty input.
ConservationReport conservation_monitor(std::span<const ObservableRecord> records);

struct ObservableGaps {
  double p1 = 0.0;
  double p_up = 0.0;
  double f_plus = 0.0;
  double f_minus = 0.0;
  double log_negativity = 0.0;
  double f2 = 0.0;
};

struct DeviationReport {
  double eta_over_j = 0.0;
  EffectiveVariant variant = EffectiveVariant::two_site;
  TimeGrid grid;
  /// max_t (1 - F) with F the Uhlmann fidelity of the three-spin reduced
  /// states (the motional factor is traced out).
  double max_state_infidelity = 0.0;
  /// max_t (1 - |<psi_exact|psi_eff>|^2) on the full composite space.
  double max_full_state_infidelity = 0.0;
  ObservableGaps max_gaps;
};

/// Evolves `initial` under the exact and the effective Hamiltonian on the
/// same grid and reports the largest discrepancies.
DeviationReport compare_exact_effective(const ModelSpec& spec, EffectiveVariant variant,
                                        const StateVector& initial, const TimeGrid& grid);

/// compare_exact_effective for each eta/J in `ratios` (eta rescaled, couplings
/// kept). Ratios run concurrently; output order follows `ratios`.
std::vector<DeviationReport> compare_ratios(const ModelSpec& base, EffectiveVariant variant,
                                            const StateVector& initial, const TimeGrid& grid,
                                            std::span<const double> ratios);

/// Times of the dominant maxima of a sampled oscillation, refined by a
/// parabola through the three samples around each peak. An excursion opens
/// above 60% of the series range and closes below 40%, so fast low-amplitude
/// ripples neither register as peaks nor split one. Excursions cut off by the
/// ends of the series are ignored.
std::vector<double> locate_maxima(std::span<const double> t, std::span<const double> values);

/// Mean spacing of successive dominant maxima. Throws std::runtime_error if
/// fewer than two maxima are found or the series is flat.
double estimate_maxima_spacing(std::span<const double> t, std::span<const double> values);

/// Oscillation period of the amplitude underlying a population series
/// p(t) = |a(t)|^2: twice the spacing of the population maxima. For
/// cos^2(Jt/sqrt 2) this returns 2 sqrt(2) pi / J.
double estimate_period(std::span<const double> t, std::span<const double> values);

}  // namespace hopspin
