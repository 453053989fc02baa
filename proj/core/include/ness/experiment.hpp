#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ness/config.hpp"
#include "ness/oracle.hpp"
#include "ness/optimize.hpp"

namespace ness {

/// Raised when a computation is well-posed but numerically unusable,
/// e.g. a degenerate steady-state kernel. The CLI maps this to exit 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepRow {
  double value = 0.0;  // swept parameter value (or NaN for a single run)
  std::string observable;
  double estimate = 0.0;
  double stderr_est = 0.0;
  int shots = 0;
  bool mitigated = false;
  bool has_oracle = false;
  double oracle_value = 0.0;
  double infidelity = 0.0;
  double cost = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string csv;
  std::string metadata_json;
};

/// For each sweep value: optimize, measure the listed observables, and
/// query the dense oracle when N <= 6. One CSV row per (value, observable).
SweepResult run_sweep(const ExperimentConfig& cfg, std::uint64_t seed);

struct LandscapeRow {
  double angle = 0.0;
  std::vector<double> sampled;  // one entry per amplification factor
  std::vector<double> errors;
  double mitigated = 0.0;
  double mitigated_err = 0.0;
  double exact = 0.0;
};

struct LandscapeResult {
  int parameter = 0;
  std::vector<double> factors;
  std::vector<LandscapeRow> rows;
  std::string csv;
};

/// Dense one-parameter scan of the cost: per-angle sampled estimates at
/// each amplification factor, the zero-noise extrapolation, and the exact
/// value. Grid endpoints respect the parameter's search interval.
LandscapeResult run_landscape(const ExperimentConfig& cfg, std::uint64_t seed);

struct ScatterSummary {
  int n = 0;
  double spearman = 0.0;
  double median_abs_log10_ratio = 0.0;
};

struct ScatterResult {
  std::vector<ScatterRow> rows;
  std::vector<ScatterSummary> summaries;
  std::string csv;
  std::string summary_text;
};

ScatterResult run_scatter(const ExperimentConfig& cfg, std::uint64_t seed);

struct OracleExport {
  NessResult ness;
  std::string pauli_text;  // textual Pauli decomposition of rho
  std::string csv;         // dense entries (row, col, re, im)
};

/// Exact steady state of the configured model. A degenerate kernel raises
/// NumericalError.
OracleExport run_oracle_ness(const ExperimentConfig& cfg);

/// Write a text file, creating parent directories as needed.
void write_file(const std::string& path, const std::string& content);

/// Shortest decimal that round-trips a double (CSV cell format).
std::string format_double(double v);

}  // namespace ness
