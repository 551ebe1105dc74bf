#pragma once

// Grid kernels: every time point is propagated independently from t = 0, so
// the loops are data parallel. `kernels` runs them under OpenMP; `reference`
// keeps the plain serial loops for testing and benchmarking. Both call the
// same per-point code, so results agree bit for bit.

#include <span>
#include <vector>

#include "hopspin/dynamics.hpp"

namespace hopspin {

namespace kernels {

std::vector<StateVector> evolve_grid(const SpectralPropagator& propagator,
                                     std::span<const double> times);

std::vector<ObservableRecord> observe_grid(const SpectralPropagator& propagator,
                                           const ObservableEvaluator& evaluator,
                                           std::span<const double> times);

/// Threads OpenMP would use for a parallel region (1 without OpenMP).
int max_threads();

}  // namespace kernels

namespace reference {

std::vector<StateVector> evolve_grid(const SpectralPropagator& propagator,
                                     std::span<const double> times);

std::vector<ObservableRecord> observe_grid(const SpectralPropagator& propagator,
                                           const ObservableEvaluator& evaluator,
                                           std::span<const double> times);

}  // namespace reference

}  // namespace hopspin
