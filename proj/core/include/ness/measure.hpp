#pragma once

#include <vector>

#include "ness/ansatz.hpp"
#include "ness/lindblad.hpp"
#include "ness/mitigate.hpp"
#include "ness/sim.hpp"

namespace ness {

/// Eigenvalue distribution lambda_q of the ansatz density matrix, indexed
/// by the N-bit string q.
struct EigenDistribution {
  std::vector<double> lambda;
  bool trace_normalized = false;

  double sum() const;
};

enum class DistributionMethod { Analytic, Sampled };

/// lambda_q from the eigenvalue-distribution circuit. Analytic mode is
/// available for the decoupled ansatz only and multiplies per-qubit
/// cos/sin half-angle factors; sampled mode estimates amplitudes as
/// square roots of empirical basis frequencies (recommended shots floor
/// 1e4; zero-count entries become exactly 0). Both are trace-normalized.
EigenDistribution eigen_distribution(const AnsatzConfig& cfg,
                                     std::span<const double> theta_d,
                                     DistributionMethod method, int shots,
                                     Rng& rng);

/// Exact amplitudes of D~|0>, trace-normalized (library-side route used
/// by the exact measurement path; works for both ansatz types).
EigenDistribution eigen_distribution_exact(const AnsatzConfig& cfg,
                                           std::span<const double> theta_d);

/// Angle substitution that turns the decoupled D~ into a circuit whose
/// dephased output probabilities equal the trace-normalized lambda_q:
/// per gate angle t, t' = 2 arccos(sqrt(1 / (1 + tan(t/2)))). Valid for
/// t in [0, pi]; t = pi maps to the delta distribution on the sin branch.
std::vector<double> dephasing_angle_transform(
    const std::vector<double>& theta_d);

/// Exact weighted sum  sum_q lambda_q <q| V^dag O V |q>  with the
/// trace-normalized distribution; uses N qubits per inner term.
double expectation_exact_sum(const AnsatzConfig& cfg, const ParamVector& theta,
                             const Observable& obs);

/// Sampled measurement: draw q with probability lambda_q, prepare V|q>
/// (noisy if configured), measure O term-wise; optional zero-noise
/// extrapolation. Returns (estimate, stderr).
std::pair<double, double> expectation_sampled_mixed(
    const AnsatzConfig& cfg, const ParamVector& theta, const Observable& obs,
    int shots_per_term, const NoiseConfig* noise,
    const MitigationSchedule* mitigation, Rng& rng);

}  // namespace ness
