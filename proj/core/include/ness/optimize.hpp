#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ness/ansatz.hpp"
#include "ness/lindblad.hpp"
#include "ness/mitigate.hpp"
#include "ness/sim.hpp"

namespace ness {

struct OptimizerConfig {
  int points_single = 5;    // landscape points for {1, cos, sin}
  int points_multi = 9;     // landscape points for 5-mode classes
  int sweeps_max = 40;
  double tolerance = 1e-4;  // relative cost change per sweep (exact mode)
  int shots_per_term = 400;
  bool exact = true;
  NoiseConfig noise{};
  bool mitigate = false;
  MitigationSchedule mitigation{};
  // Sampled-mode acceptance guard: spend one extra estimate on each fitted
  // argmin and keep the previous angle unless the candidate measures at
  // least as low. Stops noise-driven hops between comparable wells, at the
  // price of rejecting some genuine improvements near convergence.
  bool guard = true;
  int restarts = 0;              // random re-initializations to try
  double cost_target = -1.0;     // stop restarting once cost <= target
  // Local refinement after the full-period sweeps: per parameter, a
  // quadratic fit over a small window around the current value. Shallow
  // landscape directions cannot hop between distant wells this way, which
  // matters once sampling noise rivals the per-parameter amplitude.
  int refine_sweeps = 0;
  double refine_window = 0.15;   // half-width as a fraction of the interval
};

/// Fitted periodic landscape c0 + sum_k (a_k cos w_k t + b_k sin w_k t).
struct LandscapeFit {
  std::vector<double> coeffs;
  PeriodClass period;
  double argmin = 0.0;
  double min_value = 0.0;

  double eval(double angle) const;
};

/// Least-squares fit over the mode basis of the period class; the argmin
/// is located by a dense grid scan over [lo, hi] with local refinement.
/// Ties break toward the smallest angle.
LandscapeFit fit_landscape(const std::vector<std::pair<double, double>>& points,
                           PeriodClass period, double lo, double hi);

struct UpdateRecord {
  int sweep = 0;
  int param = 0;
  std::vector<std::pair<double, double>> samples;
  std::vector<double> fit_coeffs;
  double chosen_angle = 0.0;
  double cost = 0.0;
};

struct OptimizationTrace {
  std::vector<UpdateRecord> updates;
  ParamVector theta;
  double final_cost = 0.0;
  int sweeps = 0;
  int restarts_used = 0;
  bool converged = false;
};

/// Shared evaluation of the cost <L^dag L> for a parameter vector.
/// The cost operator is built once; exact mode uses the statevector
/// expectation, sampled mode the term-wise estimator with optional
/// depolarizing noise and zero-noise extrapolation.
class CostEvaluator {
 public:
  CostEvaluator(const LindbladModel& model, const AnsatzConfig& cfg);

  double exact(const ParamVector& theta) const;
  std::pair<double, double> sampled(const ParamVector& theta, int shots,
                                    const NoiseConfig* noise,
                                    const MitigationSchedule* mitigation,
                                    Rng& rng) const;
  std::pair<double, double> evaluate(const ParamVector& theta,
                                     const OptimizerConfig& opt,
                                     Rng& rng) const;

  const PauliSum& cost_op() const { return cost_op_; }
  const AnsatzConfig& ansatz() const { return cfg_; }
  const AnsatzLayout& layout() const { return layout_; }

 private:
  AnsatzConfig cfg_;
  AnsatzLayout layout_;
  PauliSum cost_op_;
};

/// Sequential minimal optimization: cycle parameters, sample the
/// one-dimensional landscape, fit, and jump to the fitted minimum.
OptimizationTrace smo_optimize(const LindbladModel& model,
                               const AnsatzConfig& ansatz_cfg,
                               const OptimizerConfig& opt_cfg,
                               const ParamVector& theta0, std::uint64_t seed);

}  // namespace ness
