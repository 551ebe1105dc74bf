#pragma once

// Scenario files and the simulate / compare / analytic commands behind the
// command-line tool. Commands return their CSV text so they can be tested
// without touching the filesystem.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hopspin/analysis.hpp"
#include "hopspin/dynamics.hpp"
#include "hopspin/model.hpp"

namespace hopspin {

/// Malformed or inconsistent scenario (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical invariant failed beyond tolerance (exit code 3).
class NumericalInvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Column { t, P1, P2, P0, P_up, F_plus, F_minus, logneg, F2, Sz, S12sq, norm };

std::string_view column_name(Column c);
/// Every column valid for the lattice, in CSV order.
std::vector<Column> all_columns(int n_sites);

struct InitialBlock {
  int site = 1;
  Spin e_spin = Spin::up;
  StaticPreset statics = StaticPreset::down_down;
};

struct RunBlock {
  HamiltonianKind hamiltonian = HamiltonianKind::exact;
  TimeGrid grid;
  /// Effective variant compared against by `compare` (defaults by lattice).
  EffectiveVariant effective = EffectiveVariant::two_site;
  std::vector<double> ratios{1.0, 2.0, 10.0, 100.0};
};

struct OutputBlock {
  std::optional<std::string> path;
  /// CSV columns in canonical order; `t` always first.
  std::vector<Column> columns;
};

struct ScenarioConfig {
  ModelSpec model;
  InitialBlock initial;
  RunBlock run;
  OutputBlock output;

  StateVector initial_state() const;
};

/// Parses and validates a scenario (JSON object with blocks model, initial,
/// run, output). Throws ConfigError with a line number for syntax errors and
/// the offending field for semantic ones; unknown keys are rejected.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Shortest round-trip-safe rendering with 17 significant digits.
std::string format_number(double value);

struct ColumnSummary {
  Column column;
  double min = 0.0;
  double max = 0.0;
};

struct SimulateResult {
  std::string csv;
  std::vector<ColumnSummary> summary;
  std::vector<ObservableRecord> records;

  /// One line: "summary rows=<n> P1[min=..,max=..] ..." using CSV formatting.
  std::string summary_line() const;
};

/// Runs the scenario trajectory. Probabilities outside [-1e-9, 1+1e-9] or a
/// norm drift above 1e-9 raise NumericalInvariantError; otherwise values are
/// clamped to [0, 1] and written.
SimulateResult run_simulate(const ScenarioConfig& config);

/// One row per eta/J ratio: exact versus the configured effective variant.
std::string run_compare(const ScenarioConfig& config, const std::vector<double>& ratios);

/// Closed-form |alpha_up|^2 and |alpha_down|^2 for the configured preset;
/// two sites use the two-site chain, three sites the middle-start chain.
std::string run_analytic(const ScenarioConfig& config);

void write_text_file(const std::string& path, std::string_view text);

}  // namespace hopspin
