#include "ness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ness/measure.hpp"
#include "ness/mitigate.hpp"

namespace ness {

std::string format_double(double v) {
  char buf[64];
  // Shortest representation that round-trips.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

double oracle_expectation(const Eigen::MatrixXcd& rho, const Observable& obs) {
  return (to_dense(obs.op) * rho).trace().real();
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg, std::uint64_t seed) {
  const bool swept = !cfg.sweep.parameter.empty();
  std::vector<double> values = cfg.sweep.values;
  if (!swept) values = {std::numeric_limits<double>::quiet_NaN()};
  if (swept && values.empty())
    throw ConfigError("sweep has a parameter but no values");

  SweepResult result;
  std::ostringstream csv;
  csv << "# config_hash=" << cfg.config_hash << "\n";
  csv << "value,observable,estimate,stderr,shots,mitigated,oracle_value,"
         "infidelity,cost\n";

  for (std::size_t i = 0; i < values.size(); ++i) {
    ExperimentConfig point = cfg;
    if (swept) set_model_parameter(point, cfg.sweep.parameter, values[i]);
    const LindbladModel model = build_model(point);
    const std::vector<Observable> observables = build_observables(point);
    const AnsatzLayout layout = resolve_layout(cfg.ansatz);

    const std::uint64_t point_seed = split_seed(seed, 0x535750, i);
    const OptimizationTrace trace =
        smo_optimize(model, cfg.ansatz, cfg.optimizer,
                     ParamVector::zeros(layout), point_seed);

    bool has_oracle = model.n_sites <= 6;
    NessResult oracle;
    double infid = 0.0;
    if (has_oracle) {
      oracle = exact_ness(model);
      if (oracle.degenerate) {
        has_oracle = false;
      } else {
        const Eigen::MatrixXcd rho_var =
            ansatz_density_matrix(cfg.ansatz, trace.theta);
        infid = 1.0 - fidelity(rho_var, oracle.rho);
      }
    }

    const bool sampled_mode = !cfg.optimizer.exact;
    const bool mitigated = sampled_mode && cfg.optimizer.mitigate &&
                           cfg.optimizer.noise.enabled;
    for (std::size_t k = 0; k < observables.size(); ++k) {
      const Observable& obs = observables[k];
      SweepRow row;
      row.value = values[i];
      row.observable = obs.name;
      row.cost = trace.final_cost;
      row.has_oracle = has_oracle;
      row.infidelity = infid;
      if (has_oracle) row.oracle_value = oracle_expectation(oracle.rho, obs);
      if (sampled_mode) {
        Rng rng(split_seed(point_seed, 0x4d4553, k));
        const NoiseConfig* noise =
            cfg.optimizer.noise.enabled ? &cfg.optimizer.noise : nullptr;
        const MitigationSchedule* schedule =
            mitigated ? &cfg.optimizer.mitigation : nullptr;
        auto [est, err] = expectation_sampled_mixed(
            cfg.ansatz, trace.theta, obs, cfg.optimizer.shots_per_term, noise,
            schedule, rng);
        row.estimate = est;
        row.stderr_est = err;
        row.shots = cfg.optimizer.shots_per_term;
        row.mitigated = mitigated;
      } else {
        row.estimate = expectation_exact_sum(cfg.ansatz, trace.theta, obs);
      }
      csv << (swept ? format_double(row.value) : std::string("-")) << ','
          << row.observable << ',' << format_double(row.estimate) << ','
          << format_double(row.stderr_est) << ',' << row.shots << ','
          << (row.mitigated ? 1 : 0) << ','
          << (row.has_oracle ? format_double(row.oracle_value)
                             : std::string("-"))
          << ','
          << (row.has_oracle ? format_double(row.infidelity)
                             : std::string("-"))
          << ',' << format_double(row.cost) << "\n";
      result.rows.push_back(std::move(row));
    }
  }

  nlohmann::json meta;
  meta["config_hash"] = cfg.config_hash;
  meta["seed"] = seed;
  meta["sweep_parameter"] = cfg.sweep.parameter;
  meta["sweep_values"] = cfg.sweep.values;
  meta["n_sites"] = cfg.model.n;
  meta["exact_mode"] = cfg.optimizer.exact;
  meta["library_version"] = "1.0.0";
  meta["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                          std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION);
  result.metadata_json = meta.dump(2) + "\n";
  result.csv = csv.str();
  return result;
}

LandscapeResult run_landscape(const ExperimentConfig& cfg,
                              std::uint64_t seed) {
  const LindbladModel model = build_model(cfg);
  const CostEvaluator evaluator(model, cfg.ansatz);
  const AnsatzLayout& layout = evaluator.layout();

  const int p = cfg.landscape.parameter;
  if (p < 0 || p >= layout.total())
    throw ConfigError("landscape parameter index out of range");
  if (cfg.landscape.points < 2)
    throw ConfigError("landscape needs at least 2 points");

  ParamVector theta = ParamVector::zeros(layout);
  if (!cfg.landscape.theta.empty()) {
    if (cfg.landscape.theta.size() != static_cast<std::size_t>(layout.total()))
      throw ConfigError("landscape base point has the wrong length");
    theta.values = cfg.landscape.theta;
    theta.validate(layout);
  }

  const ParamSpec& spec = layout.params[p];
  const int points = cfg.landscape.points;

  LandscapeResult result;
  result.parameter = p;
  result.factors = cfg.optimizer.mitigation.factors;
  const NoiseConfig& noise = cfg.optimizer.noise;

  std::ostringstream csv;
  csv << "# config_hash=" << cfg.config_hash << "\n";
  csv << "angle";
  for (double f : result.factors)
    csv << ",sampled_e" << format_double(f) << ",stderr_e" << format_double(f);
  csv << ",mitigated,mitigated_err,exact\n";

  for (int i = 0; i < points; ++i) {
    // Restricted intervals include both endpoints; periodic intervals skip
    // the duplicate upper endpoint.
    const double frac = spec.restricted ? double(i) / (points - 1)
                                        : double(i) / points;
    const double angle = spec.lo + (spec.hi - spec.lo) * frac;
    theta.values[p] = angle;

    LandscapeRow row;
    row.angle = angle;
    row.exact = evaluator.exact(theta);
    std::vector<std::pair<double, double>> pts;
    std::vector<double> errs;
    for (std::size_t k = 0; k < result.factors.size(); ++k) {
      Rng rng(split_seed(seed, 0x4c414e, std::uint64_t(i) * 64 + k));
      const NoiseConfig amplified = amplify_noise(noise, result.factors[k]);
      auto [value, err] = evaluator.sampled(
          theta, cfg.optimizer.shots_per_term,
          noise.enabled ? &amplified : nullptr, nullptr, rng);
      row.sampled.push_back(value);
      row.errors.push_back(err);
      pts.emplace_back(result.factors[k], value);
      errs.push_back(err);
    }
    if (noise.enabled && pts.size() >= 2) {
      auto [mit, mit_err] = extrapolate_zero_noise_with_error(pts, errs);
      row.mitigated = mit;
      row.mitigated_err = mit_err;
    } else {
      row.mitigated = row.sampled.front();
      row.mitigated_err = row.errors.front();
    }
    csv << format_double(row.angle);
    for (std::size_t k = 0; k < row.sampled.size(); ++k)
      csv << ',' << format_double(row.sampled[k]) << ','
          << format_double(row.errors[k]);
    csv << ',' << format_double(row.mitigated) << ','
        << format_double(row.mitigated_err) << ',' << format_double(row.exact)
        << "\n";
    result.rows.push_back(std::move(row));
  }
  result.csv = csv.str();
  return result;
}

ScatterResult run_scatter(const ExperimentConfig& cfg, std::uint64_t seed) {
  ScatterResult result;
  result.rows = distance_scatter_experiment(
      cfg.scatter.sizes, cfg.scatter.samples,
      {cfg.scatter.width_min, cfg.scatter.width_max}, seed);

  std::ostringstream csv;
  csv << "# config_hash=" << cfg.config_hash << "\n";
  csv << "n,width,d_v,d_m\n";
  for (const ScatterRow& r : result.rows)
    csv << r.n << ',' << format_double(r.width) << ',' << format_double(r.dv)
        << ',' << format_double(r.dm) << "\n";
  result.csv = csv.str();

  std::ostringstream summary;
  for (int n : cfg.scatter.sizes) {
    std::vector<double> dv, dm, ratios;
    for (const ScatterRow& r : result.rows) {
      if (r.n != n) continue;
      dv.push_back(r.dv);
      dm.push_back(r.dm);
      if (r.dv > 0.0 && r.dm > 0.0)
        ratios.push_back(std::abs(std::log10(r.dv / r.dm)));
    }
    ScatterSummary s;
    s.n = n;
    if (!ratios.empty()) {
      std::sort(ratios.begin(), ratios.end());
      s.median_abs_log10_ratio = ratios[ratios.size() / 2];
      s.spearman = spearman(dv, dm);
    }
    summary << "n=" << n << " spearman=" << format_double(s.spearman)
            << " median_abs_log10_ratio="
            << format_double(s.median_abs_log10_ratio) << "\n";
    result.summaries.push_back(s);
  }
  result.summary_text = summary.str();
  return result;
}

OracleExport run_oracle_ness(const ExperimentConfig& cfg) {
  const LindbladModel model = build_model(cfg);
  OracleExport out;
  out.ness = exact_ness(model);
  if (out.ness.degenerate)
    throw NumericalError("steady state is degenerate: the kernel of the "
                         "shifted generator is not one-dimensional");
  out.pauli_text = to_text(from_dense(out.ness.rho, model.n_sites));
  std::ostringstream csv;
  csv << "# config_hash=" << cfg.config_hash << "\n";
  csv << "row,col,re,im\n";
  for (Eigen::Index i = 0; i < out.ness.rho.rows(); ++i)
    for (Eigen::Index j = 0; j < out.ness.rho.cols(); ++j)
      csv << i << ',' << j << ',' << format_double(out.ness.rho(i, j).real())
          << ',' << format_double(out.ness.rho(i, j).imag()) << "\n";
  out.csv = csv.str();
  return out;
}

}  // namespace ness
