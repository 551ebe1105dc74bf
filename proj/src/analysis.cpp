#include "hopspin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "hopspin/kernels.hpp"

namespace hopspin {

double log_negativity(const ComplexMatrix& rho12) {
  if (rho12.rows() != 4 || rho12.cols() != 4) {
    throw std::invalid_argument("log_negativity: expected a 4x4 two-qubit density matrix");
  }
  constexpr double kTol = 1e-9;
  if (hermitian_asymmetry(rho12) > kTol) {
    throw std::invalid_argument("log_negativity: density matrix is not Hermitian");
  }
  if (std::abs(trace(rho12) - 1.0) > kTol) {
    throw std::invalid_argument("log_negativity: density matrix does not have unit trace");
  }
  const ComplexMatrix symmetric = 0.5 * (rho12 + rho12.adjoint());
  if (hermitian_eigensystem(symmetric).values.front() < -kTol) {
    throw std::invalid_argument("log_negativity: density matrix is not positive semidefinite");
  }
  const ComplexMatrix pt = partial_transpose(symmetric, 2, 2, Subsystem::A);
  return std::max(0.0, std::log2(trace_norm_hermitian(pt)));
}

ConservationReport conservation_monitor(std::span<const ObservableRecord> records) {
  if (records.empty()) throw std::invalid_argument("conservation_monitor: empty trajectory");
  const ObservableRecord& first = records.front();
  ConservationReport report;
  for (const auto& r : records) {
    report.norm_drift = std::max(report.norm_drift, std::abs(r.norm - first.norm));
    report.energy_drift = std::max(report.energy_drift, std::abs(r.energy - first.energy));
    report.sz_drift = std::max(report.sz_drift, std::abs(r.sz_total - first.sz_total));
    report.s12_squared_drift =
        std::max(report.s12_squared_drift, std::abs(r.s12_squared - first.s12_squared));
  }
  return report;
}

DeviationReport compare_exact_effective(const ModelSpec& spec, EffectiveVariant variant,
                                        const StateVector& initial, const TimeGrid& grid) {
  const BasisLayout layout(spec.n_sites);
  const auto times = grid.times();

  const ComplexMatrix h_exact = build_hamiltonian(spec, HamiltonianKind::exact);
  const ComplexMatrix h_eff = build_hamiltonian(spec, effective_kind(variant));
  const SpectralPropagator exact(hermitian_eigensystem(h_exact), initial);
  const SpectralPropagator effective(hermitian_eigensystem(h_eff), initial);
  const auto exact_states = kernels::evolve_grid(exact, times);
  const auto eff_states = kernels::evolve_grid(effective, times);
  const ObservableEvaluator evaluator(layout);

  DeviationReport report;
  report.eta_over_j = spec.eta_over_j();
  report.variant = variant;
  report.grid = grid;
  auto& gaps = report.max_gaps;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& a = exact_states[i];
    const auto& b = eff_states[i];
    const double spin_fidelity = uhlmann_fidelity(spin_density(a, layout), spin_density(b, layout));
    report.max_state_infidelity =
        std::max(report.max_state_infidelity, std::clamp(1.0 - spin_fidelity, 0.0, 1.0));
    report.max_full_state_infidelity = std::max(
        report.max_full_state_infidelity, std::clamp(1.0 - std::norm(inner(a, b)), 0.0, 1.0));

    const auto ra = evaluator(a, times[i]);
    const auto rb = evaluator(b, times[i]);
    const auto gap = [](double& slot, double x, double y) { slot = std::max(slot, std::abs(x - y)); };
    gap(gaps.p1, ra.site_probability(layout, 1), rb.site_probability(layout, 1));
    gap(gaps.p_up, ra.p_up, rb.p_up);
    gap(gaps.f_plus, ra.f_plus, rb.f_plus);
    gap(gaps.f_minus, ra.f_minus, rb.f_minus);
    gap(gaps.log_negativity, ra.log_negativity, rb.log_negativity);
    gap(gaps.f2, ra.f2, rb.f2);
  }
  return report;
}

std::vector<DeviationReport> compare_ratios(const ModelSpec& base, EffectiveVariant variant,
                                            const StateVector& initial, const TimeGrid& grid,
                                            std::span<const double> ratios) {
  base.validate();
  grid.validate();
  std::vector<DeviationReport> out(ratios.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(ratios.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      ModelSpec spec = base;
      spec.eta = ratios[static_cast<std::size_t>(i)] * base.energy_unit();
      out[static_cast<std::size_t>(i)] = compare_exact_effective(spec, variant, initial, grid);
    } catch (...) {
#pragma omp critical(hopspin_compare_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> locate_maxima(std::span<const double> t, std::span<const double> values) {
  if (t.size() != values.size()) {
    throw std::invalid_argument("locate_maxima: time and value series differ in length");
  }
  if (values.size() < 3) return {};
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double floor = *lo;
  const double span = *hi - *lo;
  if (!(span > 1e-12)) return {};
  // Schmitt trigger: an excursion starts above 60% of the range and ends
  // below 40%, so ripples riding on a crossing do not split it.
  const double enter = floor + 0.6 * span;
  const double leave = floor + 0.4 * span;

  std::vector<double> peaks;
  const std::size_t n = values.size();
  bool seen_low = false;
  std::size_t i = 0;
  while (i < n) {
    if (values[i] <= enter) {
      if (values[i] < leave) seen_low = true;
      ++i;
      continue;
    }
    std::size_t best = i;
    std::size_t j = i;
    while (j < n && values[j] >= leave) {
      if (values[j] > values[best]) best = j;
      ++j;
    }
    // Excursions cut off by either end of the series have no reliable peak.
    const bool complete = seen_low && j < n;
    if (complete && best > 0 && best + 1 < n) {
      const double y0 = values[best - 1], y1 = values[best], y2 = values[best + 1];
      const double h = t[best + 1] - t[best];
      const double denom = y0 - 2.0 * y1 + y2;
      const double shift = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
      peaks.push_back(t[best] + std::clamp(shift, -1.0, 1.0) * h);
    }
    seen_low = true;
    i = j;
  }
  return peaks;
}

double estimate_maxima_spacing(std::span<const double> t, std::span<const double> values) {
  const auto peaks = locate_maxima(t, values);
  if (peaks.size() < 2) {
    throw std::runtime_error("estimate_period: fewer than two oscillation maxima detected");
  }
  return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

double estimate_period(std::span<const double> t, std::span<const double> values) {
  return 2.0 * estimate_maxima_spacing(t, values);
}

}  // namespace hopspin
