#include "hopspin/kernels.hpp"

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hopspin {

namespace {

// Runs body(i) for every i in [0, n) across OpenMP threads; the first
// exception thrown by any iteration is rethrown after the loop.
template <class Body>
void parallel_for(std::ptrdiff_t n, Body&& body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(hopspin_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

namespace kernels {

std::vector<StateVector> evolve_grid(const SpectralPropagator& propagator,
                                     std::span<const double> times) {
  std::vector<StateVector> states(times.size());
  parallel_for(static_cast<std::ptrdiff_t>(times.size()),
               [&](std::size_t i) { states[i] = propagator.state_at(times[i]); });
  return states;
}

std::vector<ObservableRecord> observe_grid(const SpectralPropagator& propagator,
                                           const ObservableEvaluator& evaluator,
                                           std::span<const double> times) {
  std::vector<ObservableRecord> records(times.size());
  parallel_for(static_cast<std::ptrdiff_t>(times.size()), [&](std::size_t i) {
    records[i] = evaluator(propagator.state_at(times[i]), times[i]);
  });
  return records;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kernels

namespace reference {

std::vector<StateVector> evolve_grid(const SpectralPropagator& propagator,
                                     std::span<const double> times) {
  std::vector<StateVector> states;
  states.reserve(times.size());
  for (double t : times) states.push_back(propagator.state_at(t));
  return states;
}

std::vector<ObservableRecord> observe_grid(const SpectralPropagator& propagator,
                                           const ObservableEvaluator& evaluator,
                                           std::span<const double> times) {
  std::vector<ObservableRecord> records;
  records.reserve(times.size());
  for (double t : times) records.push_back(evaluator(propagator.state_at(t), t));
  return records;
}

}  // namespace reference

}  // namespace hopspin
