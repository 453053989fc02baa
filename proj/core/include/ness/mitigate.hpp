#pragma once

#include <vector>

#include "ness/sim.hpp"

namespace ness {

/// Noise-amplification factors for zero-noise extrapolation.
/// Rate scaling uses {1, 2, 3} by default; gate folding needs odd factors.
struct MitigationSchedule {
  std::vector<double> factors{1.0, 2.0, 3.0};

  void validate() const;
};

/// Scale depolarizing rates by the amplification factor, clamped to [0, 1].
NoiseConfig amplify_noise(const NoiseConfig& noise, double factor);

/// Replace each gate G by G (G^dag G)^{(E-1)/2}, which leaves the
/// noiseless unitary exactly unchanged while tripling (etc.) the gate
/// count. E must be odd.
Circuit fold_circuit(const Circuit& c, int factor);

/// Alternative folding recipe sometimes quoted: CZ -> CZ^E and
/// RX(+-pi/2) -> RZ(pi) RX(+-pi/2)^E RZ(pi), other gates untouched. This
/// does NOT preserve the unitary for every odd E under the half-angle
/// rotation convention; kept for comparison only.
Circuit fold_circuit_literal(const Circuit& c, int factor);

/// Least-squares line through (factor, value) points evaluated at zero.
double extrapolate_zero_noise(
    const std::vector<std::pair<double, double>>& points);

/// Extrapolated value and propagated standard error from per-point errors.
std::pair<double, double> extrapolate_zero_noise_with_error(
    const std::vector<std::pair<double, double>>& points,
    const std::vector<double>& stderrs);

}  // namespace ness
