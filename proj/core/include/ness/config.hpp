#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ness/ansatz.hpp"
#include "ness/lindblad.hpp"
#include "ness/mitigate.hpp"
#include "ness/optimize.hpp"

namespace ness {

/// Configuration problem, carrying the offending line for CLI reporting.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) +
                                          ")"
                                    : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

enum class ModelKind { Tfim, Cqed, Custom };
enum class MitigationMode { Rates, Folding };

struct ModelSection {
  ModelKind kind = ModelKind::Tfim;
  int n = 1;
  double g = 0.5;
  double gamma1 = 1.0;
  double gamma2 = 0.5;
  double mu = 1.0;
  double theta = 0.0;
  double gamma3 = 1.0;
  std::optional<Boundary> boundary;  // defaults depend on the model kind

  // custom model
  std::string hamiltonian_text;
  struct CustomJump {
    double rate;
    std::string tag;
    std::string op_text;
  };
  std::vector<CustomJump> custom_jumps;
};

struct SweepSection {
  std::string parameter;
  std::vector<double> values;
};

struct LandscapeSection {
  int parameter = 0;
  int points = 24;
  std::vector<double> theta;  // base point; zeros when empty
};

struct ScatterSection {
  std::vector<int> sizes{4, 8, 12};
  int samples = 1000;
  double width_min = 1e-4;
  double width_max = 1e-1;
};

struct ExperimentConfig {
  ModelSection model;
  AnsatzConfig ansatz;
  OptimizerConfig optimizer;
  MitigationMode mitigation_mode = MitigationMode::Rates;
  std::vector<std::string> observables;
  SweepSection sweep;
  LandscapeSection landscape;
  ScatterSection scatter;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  int threads = 0;

  std::string raw_text;
  std::string config_hash;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// FNV-1a 64-bit hash as hex, embedded in every output file.
std::string config_hash(const std::string& text);

/// Instantiate the model, optionally overriding one named parameter
/// (the sweep mechanism).
LindbladModel build_model(const ExperimentConfig& cfg);
void set_model_parameter(ExperimentConfig& cfg, const std::string& parameter,
                         double value);
LindbladModel build_model_with(const ExperimentConfig& cfg,
                               const std::string& parameter, double value);

std::vector<Observable> build_observables(const ExperimentConfig& cfg);

}  // namespace ness
