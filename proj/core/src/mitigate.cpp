#include "ness/mitigate.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace ness {

void MitigationSchedule::validate() const {
  if (factors.size() < 2)
    throw std::invalid_argument("mitigation needs >= 2 amplification factors");
  std::set<double> uniq(factors.begin(), factors.end());
  if (uniq.size() != factors.size())
    throw std::invalid_argument("amplification factors must be distinct");
  for (double f : factors)
    if (f < 1.0)
      throw std::invalid_argument("amplification factors must be >= 1");
}

NoiseConfig amplify_noise(const NoiseConfig& noise, double factor) {
  if (factor < 1.0)
    throw std::invalid_argument("amplification factor must be >= 1");
  NoiseConfig out = noise;
  out.p1 = std::min(1.0, noise.p1 * factor);
  out.p2 = std::min(1.0, noise.p2 * factor);
  return out;
}

namespace {

// Inverse of a gate as a short gate sequence.
std::vector<Gate> inverse_gates(const Gate& g) {
  switch (g.kind) {
    case GateKind::RX:
      return {Gate::rx(g.target, -g.angles[0])};
    case GateKind::RY:
      return {Gate::ry(g.target, -g.angles[0])};
    case GateKind::RZ:
      return {Gate::rz(g.target, -g.angles[0])};
    case GateKind::CRY:
      return {Gate::cry(g.control, g.target, -g.angles[0])};
    case GateKind::CNOT:
      return {Gate::cnot(g.control, g.target)};
    case GateKind::CZ:
      return {Gate::cz(g.control, g.target)};
    case GateKind::SQG:
      // (RZ(phi) RY(psi))^dag = RY(-psi) RZ(-phi): undo RZ first.
      return {Gate::rz(g.target, -g.angles[1]),
              Gate::ry(g.target, -g.angles[0])};
  }
  return {};
}

}  // namespace

Circuit fold_circuit(const Circuit& c, int factor) {
  if (factor < 1 || factor % 2 == 0)
    throw std::invalid_argument("folding factor must be odd and >= 1");
  Circuit out;
  out.n = c.n;
  const int pairs = (factor - 1) / 2;
  for (const Gate& g : c.gates) {
    out.append(g);
    for (int p = 0; p < pairs; ++p) {
      for (const Gate& inv : inverse_gates(g)) out.append(inv);
      out.append(g);
    }
  }
  return out;
}

Circuit fold_circuit_literal(const Circuit& c, int factor) {
  if (factor < 1 || factor % 2 == 0)
    throw std::invalid_argument("folding factor must be odd and >= 1");
  constexpr double kPi = std::numbers::pi;
  Circuit out;
  out.n = c.n;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::CZ) {
      for (int r = 0; r < factor; ++r) out.append(g);
    } else if (g.kind == GateKind::RX &&
               std::abs(std::abs(g.angles[0]) - kPi / 2) < 1e-12) {
      out.append(Gate::rz(g.target, kPi));
      for (int r = 0; r < factor; ++r) out.append(g);
      out.append(Gate::rz(g.target, kPi));
    } else {
      out.append(g);
    }
  }
  return out;
}

double extrapolate_zero_noise(
    const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("extrapolation needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(points.size());
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-12 * m * sxx)
    throw std::invalid_argument("degenerate amplification factors in fit");
  // Intercept of the least-squares line.
  return (sy * sxx - sx * sxy) / det;
}

std::pair<double, double> extrapolate_zero_noise_with_error(
    const std::vector<std::pair<double, double>>& points,
    const std::vector<double>& stderrs) {
  const double value = extrapolate_zero_noise(points);
  if (stderrs.size() != points.size())
    throw std::invalid_argument("stderr count mismatch");
  double sx = 0, sxx = 0;
  const double m = static_cast<double>(points.size());
  for (const auto& [x, y] : points) {
    sx += x;
    sxx += x * x;
  }
  const double det = m * sxx - sx * sx;
  // Intercept = sum_i w_i y_i with w_i = (sxx - sx x_i) / det.
  double var = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double w = (sxx - sx * points[i].first) / det;
    var += w * w * stderrs[i] * stderrs[i];
  }
  return {value, std::sqrt(var)};
}

}  // namespace ness
