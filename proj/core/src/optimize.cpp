#include "ness/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace ness {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> basis_row(PeriodClass period, double t) {
  switch (period) {
    case PeriodClass::Single:
      return {1.0, std::cos(t), std::sin(t)};
    case PeriodClass::Controlled:
      return {1.0, std::cos(t), std::sin(t), std::cos(t / 2),
              std::sin(t / 2)};
    case PeriodClass::Paired:
      return {1.0, std::cos(t), std::sin(t), std::cos(2 * t),
              std::sin(2 * t)};
  }
  return {};
}

double eval_basis(PeriodClass period, const std::vector<double>& coeffs,
                  double t) {
  const std::vector<double> row = basis_row(period, t);
  double v = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) v += coeffs[i] * row[i];
  return v;
}

}  // namespace

double LandscapeFit::eval(double angle) const {
  return eval_basis(period, coeffs, angle);
}

LandscapeFit fit_landscape(const std::vector<std::pair<double, double>>& points,
                           PeriodClass period, double lo, double hi) {
  const std::size_t n_coeffs = basis_row(period, 0.0).size();
  if (points.size() < n_coeffs)
    throw std::invalid_argument("not enough landscape points for the fit");
  Eigen::MatrixXd a(points.size(), n_coeffs);
  Eigen::VectorXd b(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::vector<double> row = basis_row(period, points[i].first);
    for (std::size_t j = 0; j < n_coeffs; ++j) a(i, j) = row[j];
    b(i) = points[i].second;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(n_coeffs))
    throw std::runtime_error("rank-deficient landscape design matrix");
  Eigen::VectorXd x = qr.solve(b);

  LandscapeFit fit;
  fit.period = period;
  fit.coeffs.assign(x.data(), x.data() + x.size());

  // Dense grid scan, ties toward the smallest angle, then local ternary
  // refinement between the neighbouring grid points.
  const int grid = 1024;
  double best_t = lo;
  double best_v = fit.eval(lo);
  const double step = (hi - lo) / grid;
  for (int i = 1; i <= grid; ++i) {
    const double t = lo + i * step;
    const double v = fit.eval(t);
    if (v < best_v - 1e-15) {
      best_v = v;
      best_t = t;
    }
  }
  double a_lo = std::max(lo, best_t - step);
  double a_hi = std::min(hi, best_t + step);
  for (int iter = 0; iter < 60; ++iter) {
    const double m1 = a_lo + (a_hi - a_lo) / 3;
    const double m2 = a_hi - (a_hi - a_lo) / 3;
    if (fit.eval(m1) <= fit.eval(m2))
      a_hi = m2;
    else
      a_lo = m1;
  }
  const double refined = (a_lo + a_hi) / 2;
  if (fit.eval(refined) < best_v) {
    best_t = refined;
    best_v = fit.eval(refined);
  }
  fit.argmin = best_t;
  fit.min_value = best_v;
  return fit;
}

CostEvaluator::CostEvaluator(const LindbladModel& model,
                             const AnsatzConfig& cfg)
    : cfg_(cfg), layout_(resolve_layout(cfg)), cost_op_(cost_operator(model)) {
  if (cost_op_.n() != 2 * cfg.n_sites)
    throw std::invalid_argument("model size does not match ansatz");
}

double CostEvaluator::exact(const ParamVector& theta) const {
  const Circuit c = build_full_circuit(cfg_, theta);
  const StateVector state = run_circuit(c);
  return expectation_exact(state, cost_op_);
}

std::pair<double, double> CostEvaluator::sampled(
    const ParamVector& theta, int shots, const NoiseConfig* noise,
    const MitigationSchedule* mitigation, Rng& rng) const {
  const Circuit c = build_full_circuit(cfg_, theta);
  if (mitigation == nullptr || noise == nullptr || !noise->enabled)
    return expectation_sampled(c, cost_op_, shots, noise, rng);
  mitigation->validate();
  std::vector<std::pair<double, double>> points;
  std::vector<double> errs;
  for (double factor : mitigation->factors) {
    const NoiseConfig amplified = amplify_noise(*noise, factor);
    auto [value, err] = expectation_sampled(c, cost_op_, shots, &amplified, rng);
    points.emplace_back(factor, value);
    errs.push_back(err);
  }
  return extrapolate_zero_noise_with_error(points, errs);
}

std::pair<double, double> CostEvaluator::evaluate(const ParamVector& theta,
                                                  const OptimizerConfig& opt,
                                                  Rng& rng) const {
  if (opt.exact) return {exact(theta), 0.0};
  return sampled(theta, opt.shots_per_term, &opt.noise,
                 opt.mitigate ? &opt.mitigation : nullptr, rng);
}

namespace {

OptimizationTrace smo_single_run(const CostEvaluator& eval,
                                 const OptimizerConfig& opt,
                                 const ParamVector& theta0, Rng& rng) {
  const AnsatzLayout& layout = eval.layout();
  theta0.validate(layout);
  OptimizationTrace trace;
  trace.theta = theta0;

  auto [cost, cost_err] = eval.evaluate(trace.theta, opt, rng);
  trace.final_cost = cost;

  const int n_params = layout.total();
  int quiet_sweeps = 0;
  for (int sweep = 1; sweep <= opt.sweeps_max; ++sweep) {
    if (!opt.exact && sweep > 1) {
      // Refresh the reference estimate: accepted candidates are selected
      // low, and comparing new candidates against a stale, optimistically
      // biased value would stall the acceptance guard.
      auto [refreshed, refreshed_err] = eval.evaluate(trace.theta, opt, rng);
      cost = refreshed;
      cost_err = refreshed_err;
    }
    const double cost_before = cost;
    double sweep_err = cost_err;
    for (int r = 0; r < n_params; ++r) {
      const ParamSpec& spec = layout.params[r];
      const int n_points = (spec.period == PeriodClass::Single)
                               ? opt.points_single
                               : opt.points_multi;
      const double lo = spec.lo;
      double hi = spec.hi;
      if (!spec.restricted && spec.period == PeriodClass::Controlled)
        hi = 4 * kPi;

      UpdateRecord rec;
      rec.sweep = sweep;
      rec.param = r;
      ParamVector probe = trace.theta;
      double err_acc = 0.0;
      for (int s = 0; s < n_points; ++s) {
        // Restricted intervals include both endpoints; periodic ones
        // exclude the duplicate right endpoint.
        const double t = spec.restricted
                             ? lo + s * (hi - lo) / (n_points - 1)
                             : lo + s * (hi - lo) / n_points;
        probe.values[r] = t;
        auto [value, err] = eval.evaluate(probe, opt, rng);
        rec.samples.emplace_back(t, value);
        err_acc += err;
      }
      err_acc /= n_points;
      sweep_err = std::max(sweep_err, err_acc);

      LandscapeFit fit;
      try {
        fit = fit_landscape(rec.samples, spec.period, lo, hi);
      } catch (const std::exception&) {
        continue;  // skip this update, keep the previous value
      }
      rec.fit_coeffs = fit.coeffs;

      if (opt.exact) {
        // The landscape is exactly in the fit span, but guard
        // monotonicity against conditioning noise.
        probe.values[r] = fit.argmin;
        const double candidate = eval.exact(probe);
        if (candidate <= cost + 1e-12) {
          trace.theta.values[r] = fit.argmin;
          cost = candidate;
        }
      } else if (opt.guard) {
        // Guard against noise-driven hops between wells of comparable
        // depth: spend one extra estimate on the candidate and keep the
        // previous value unless the candidate measures at least as low.
        probe.values[r] = fit.argmin;
        auto [candidate, cand_err] = eval.evaluate(probe, opt, rng);
        if (candidate <= cost) {
          trace.theta.values[r] = fit.argmin;
          cost = candidate;
        }
      } else {
        trace.theta.values[r] = fit.argmin;
        cost = fit.min_value;
      }
      rec.chosen_angle = trace.theta.values[r];
      rec.cost = cost;
      trace.updates.push_back(std::move(rec));
    }
    trace.sweeps = sweep;
    const double improvement = cost_before - cost;
    if (opt.exact) {
      if (improvement < opt.tolerance * std::max(std::abs(cost_before), 1e-15)) {
        trace.converged = true;
        break;
      }
    } else {
      // Sampled improvements are noisy; fitted sweep costs average over the
      // landscape points, so their noise floor sits well below the raw
      // per-point stderr. Demand two consecutive quiet sweeps.
      quiet_sweeps = (improvement < 0.3 * sweep_err) ? quiet_sweeps + 1 : 0;
      if (quiet_sweeps >= 2) {
        trace.converged = true;
        break;
      }
    }
  }
  for (int sweep = 0; sweep < opt.refine_sweeps; ++sweep) {
    for (int r = 0; r < n_params; ++r) {
      const ParamSpec& spec = layout.params[r];
      double hi = spec.hi;
      if (!spec.restricted && spec.period == PeriodClass::Controlled)
        hi = 4 * kPi;
      const double half = opt.refine_window * (hi - spec.lo);
      const double w_lo = std::max(spec.lo, trace.theta.values[r] - half);
      const double w_hi = std::min(hi, trace.theta.values[r] + half);
      constexpr int n_points = 5;
      ParamVector probe = trace.theta;
      Eigen::MatrixXd a(n_points, 3);
      Eigen::VectorXd b(n_points);
      double best_t = trace.theta.values[r];
      double best_v = std::numeric_limits<double>::infinity();
      for (int s = 0; s < n_points; ++s) {
        const double t = w_lo + s * (w_hi - w_lo) / (n_points - 1);
        probe.values[r] = t;
        auto [value, err] = eval.evaluate(probe, opt, rng);
        a(s, 0) = 1.0;
        a(s, 1) = t;
        a(s, 2) = t * t;
        b(s) = value;
        if (value < best_v) {
          best_v = value;
          best_t = t;
        }
      }
      const Eigen::Vector3d q = a.colPivHouseholderQr().solve(b);
      double chosen = best_t;
      if (q(2) > 1e-12) {
        const double vertex = -q(1) / (2 * q(2));
        if (vertex >= w_lo && vertex <= w_hi) chosen = vertex;
      }
      if (opt.exact) {
        probe.values[r] = chosen;
        const double candidate = eval.exact(probe);
        if (candidate <= cost + 1e-12) {
          trace.theta.values[r] = chosen;
          cost = candidate;
        }
      } else {
        trace.theta.values[r] = chosen;
      }
    }
  }
  if (!opt.exact) {
    // Re-estimate the final cost once; fitted minima are noisy.
    auto [final_cost, final_err] = eval.evaluate(trace.theta, opt, rng);
    cost = final_cost;
  }
  trace.final_cost = cost;
  return trace;
}

}  // namespace

OptimizationTrace smo_optimize(const LindbladModel& model,
                               const AnsatzConfig& ansatz_cfg,
                               const OptimizerConfig& opt_cfg,
                               const ParamVector& theta0, std::uint64_t seed) {
  const CostEvaluator eval(model, ansatz_cfg);
  OptimizationTrace best;
  bool have_best = false;
  for (int attempt = 0; attempt <= opt_cfg.restarts; ++attempt) {
    Rng rng(split_seed(seed, 0x534d4f, attempt));
    ParamVector init =
        (attempt == 0) ? theta0 : ParamVector::random(eval.layout(), rng);
    OptimizationTrace trace = smo_single_run(eval, opt_cfg, init, rng);
    trace.restarts_used = attempt;
    if (!have_best || trace.final_cost < best.final_cost) {
      best = std::move(trace);
      have_best = true;
    }
    if (opt_cfg.cost_target >= 0.0 && best.final_cost <= opt_cfg.cost_target)
      break;
  }
  return best;
}

}  // namespace ness
