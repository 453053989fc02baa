#include "ness/measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ness {

namespace {

constexpr double kPi = std::numbers::pi;

std::span<const double> theta_d_view(const AnsatzLayout& layout,
                                     const ParamVector& theta) {
  return std::span<const double>(theta.values).subspan(0, layout.r_d);
}

std::span<const double> theta_v_view(const AnsatzLayout& layout,
                                     const ParamVector& theta) {
  return std::span<const double>(theta.values)
      .subspan(layout.r_d, layout.r_v);
}

}  // namespace

double EigenDistribution::sum() const {
  double s = 0.0;
  for (double v : lambda) s += v;
  return s;
}

EigenDistribution eigen_distribution_exact(const AnsatzConfig& cfg,
                                           std::span<const double> theta_d) {
  const Circuit c = build_eigen_circuit(cfg, theta_d);
  const StateVector state = run_circuit(c);
  EigenDistribution dist;
  dist.lambda.resize(state.dim());
  for (std::int64_t q = 0; q < state.dim(); ++q) {
    const cplx a = state.amplitudes()[q];
    if (std::abs(a.imag()) > 1e-10)
      throw std::runtime_error("eigenvalue amplitudes must be real");
    dist.lambda[q] = a.real();
  }
  const double total = dist.sum();
  if (std::abs(total) < 1e-12)
    throw std::runtime_error("zero-trace eigenvalue distribution");
  for (double& v : dist.lambda) v /= total;
  dist.trace_normalized = true;
  return dist;
}

EigenDistribution eigen_distribution(const AnsatzConfig& cfg,
                                     std::span<const double> theta_d,
                                     DistributionMethod method, int shots,
                                     Rng& rng) {
  if (method == DistributionMethod::Analytic) {
    if (cfg.eig_type != EigType::Decoupled)
      throw std::invalid_argument(
          "analytic eigenvalue distribution requires the decoupled ansatz");
    if (theta_d.size() != static_cast<std::size_t>(cfg.n_sites))
      throw std::invalid_argument("theta_d length mismatch");
    const std::int64_t dim = std::int64_t(1) << cfg.n_sites;
    EigenDistribution dist;
    dist.lambda.resize(dim);
    for (std::int64_t q = 0; q < dim; ++q) {
      double v = 1.0;
      for (int i = 0; i < cfg.n_sites; ++i) {
        const int bit = (q >> (cfg.n_sites - 1 - i)) & 1;
        const double h = theta_d[i] / 2.0;
        v *= bit ? std::sin(h) : std::cos(h);
      }
      dist.lambda[q] = v;
    }
    const double total = dist.sum();
    if (std::abs(total) < 1e-12)
      throw std::runtime_error("zero-trace eigenvalue distribution");
    for (double& v : dist.lambda) v /= total;
    dist.trace_normalized = true;
    return dist;
  }

  const Circuit c = build_eigen_circuit(cfg, theta_d);
  const std::vector<std::int64_t> counts =
      sample_bitstrings(c, shots, nullptr, rng);
  EigenDistribution dist;
  dist.lambda.resize(counts.size());
  for (std::size_t q = 0; q < counts.size(); ++q)
    dist.lambda[q] = std::sqrt(double(counts[q]) / shots);
  const double total = dist.sum();
  if (total < 1e-12)
    throw std::runtime_error("empty eigenvalue distribution sample");
  for (double& v : dist.lambda) v /= total;
  dist.trace_normalized = true;
  return dist;
}

std::vector<double> dephasing_angle_transform(
    const std::vector<double>& theta_d) {
  std::vector<double> out;
  out.reserve(theta_d.size());
  for (double t : theta_d) {
    if (t < -1e-12 || t > kPi + 1e-12)
      throw std::invalid_argument(
          "dephasing transform requires angles in [0, pi]");
    if (t >= kPi - 1e-12) {
      out.push_back(kPi);  // delta distribution on the sin branch
      continue;
    }
    const double half = std::clamp(t, 0.0, kPi) / 2.0;
    const double arg = 1.0 / (1.0 + std::tan(half));
    out.push_back(2.0 * std::acos(std::sqrt(arg)));
  }
  return out;
}

double expectation_exact_sum(const AnsatzConfig& cfg, const ParamVector& theta,
                             const Observable& obs) {
  const AnsatzLayout layout = resolve_layout(cfg);
  theta.validate(layout);
  if (obs.op.n() != cfg.n_sites)
    throw std::invalid_argument("observable size mismatch");
  const EigenDistribution dist =
      eigen_distribution_exact(cfg, theta_d_view(layout, theta));
  const Circuit v = build_basis_circuit(cfg, theta_v_view(layout, theta));
  double acc = 0.0;
  for (std::size_t q = 0; q < dist.lambda.size(); ++q) {
    if (std::abs(dist.lambda[q]) < 1e-14) continue;
    StateVector state(cfg.n_sites);
    state.reset_basis(static_cast<std::int64_t>(q));
    Rng dummy(0);
    apply_circuit(state, v, nullptr, dummy);
    acc += dist.lambda[q] * expectation_exact(state, obs.op);
  }
  return acc;
}

namespace {

std::pair<double, double> sampled_mixed_once(
    const Circuit& v, const std::vector<double>& probs, const PauliSum& o,
    int shots_per_term, const NoiseConfig* noise, Rng& rng) {
  std::discrete_distribution<std::int64_t> draw(probs.begin(), probs.end());
  double estimate = 0.0, var = 0.0;
  for (const auto& [coeff, str] : o.terms()) {
    const double w = coeff.real();
    if (str.is_identity()) {
      estimate += w;
      continue;
    }
    double sum = 0.0;
    std::vector<double> vals;
    vals.reserve(shots_per_term);
    for (int shot = 0; shot < shots_per_term; ++shot) {
      StateVector state(v.n);
      state.reset_basis(draw(rng));
      apply_circuit(state, v, noise, rng);
      // Eigenbasis rotation, then one projective sample.
      std::int64_t mask = 0;
      for (int q = 0; q < v.n; ++q) {
        switch (str.labels[q]) {
          case PauliOp::X:
            state.apply_h(q);
            mask |= std::int64_t(1) << (v.n - 1 - q);
            break;
          case PauliOp::Y:
            state.apply_sdg(q);
            state.apply_h(q);
            mask |= std::int64_t(1) << (v.n - 1 - q);
            break;
          case PauliOp::Z:
            mask |= std::int64_t(1) << (v.n - 1 - q);
            break;
          case PauliOp::I:
            break;
        }
      }
      const std::int64_t idx = sample_index(state, rng);
      const double parity =
          (__builtin_popcountll(static_cast<unsigned long long>(idx & mask)) &
           1)
              ? -1.0
              : 1.0;
      sum += parity;
      vals.push_back(parity);
    }
    const double mean = sum / shots_per_term;
    estimate += w * mean;
    if (shots_per_term > 1) {
      double sv = 0.0;
      for (double x : vals) sv += (x - mean) * (x - mean);
      sv /= (shots_per_term - 1);
      var += w * w * sv / shots_per_term;
    }
  }
  return {estimate, std::sqrt(var)};
}

}  // namespace

std::pair<double, double> expectation_sampled_mixed(
    const AnsatzConfig& cfg, const ParamVector& theta, const Observable& obs,
    int shots_per_term, const NoiseConfig* noise,
    const MitigationSchedule* mitigation, Rng& rng) {
  const AnsatzLayout layout = resolve_layout(cfg);
  theta.validate(layout);
  if (!obs.op.is_hermitian())
    throw std::invalid_argument("observable must be Hermitian");
  const EigenDistribution dist =
      eigen_distribution_exact(cfg, theta_d_view(layout, theta));
  std::vector<double> probs(dist.lambda.size());
  for (std::size_t q = 0; q < probs.size(); ++q)
    probs[q] = std::max(dist.lambda[q], 0.0);
  const Circuit v = build_basis_circuit(cfg, theta_v_view(layout, theta));

  if (mitigation == nullptr || noise == nullptr || !noise->enabled)
    return sampled_mixed_once(v, probs, obs.op, shots_per_term, noise, rng);

  mitigation->validate();
  std::vector<std::pair<double, double>> points;
  std::vector<double> errs;
  for (double factor : mitigation->factors) {
    const NoiseConfig amplified = amplify_noise(*noise, factor);
    auto [value, err] =
        sampled_mixed_once(v, probs, obs.op, shots_per_term, &amplified, rng);
    points.emplace_back(factor, value);
    errs.push_back(err);
  }
  return extrapolate_zero_noise_with_error(points, errs);
}

}  // namespace ness
