#include "ness/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ness/sim.hpp"

namespace ness {

void check_density_matrix(const Eigen::MatrixXcd& rho, double psd_tol) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("density matrix must be square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho.trace().imag()) > 1e-10)
    throw std::invalid_argument("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tol)
    throw std::invalid_argument("density matrix not PSD within tolerance");
}

Eigen::MatrixXcd lindblad_apply(const LindbladModel& m,
                                const Eigen::MatrixXcd& rho) {
  m.validate();
  const Eigen::MatrixXcd h = to_dense(m.hamiltonian);
  Eigen::MatrixXcd out = cplx(0.0, -1.0) * (h * rho - rho * h);
  for (const auto& jump : m.jumps) {
    if (jump.rate == 0.0) continue;
    const Eigen::MatrixXcd c = to_dense(jump.op);
    const Eigen::MatrixXcd cdc = c.adjoint() * c;
    out += (jump.rate / 2.0) *
           (c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc));
  }
  return out;
}

NessResult exact_ness(const LindbladModel& m) {
  m.validate();
  if (m.n_sites > 6)
    throw std::length_error("exact_ness: dense guard is N <= 6");
  const PauliSum liouv = liouvillian_vector(m);
  const Eigen::MatrixXcd l = to_dense(liouv);
  const Eigen::MatrixXcd gram = l.adjoint() * l;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  const Eigen::VectorXd evals = es.eigenvalues();
  const double scale = std::max(evals.cwiseAbs().maxCoeff(), 1.0);
  const double zero_tol = 1e-12 * scale;

  NessResult result;
  result.degenerate = evals.size() > 1 &&
                      evals(1) < std::max(1e-10, zero_tol);
  // Smallest nonzero eigenvalue.
  result.gap = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals(i) > zero_tol) {
      result.gap = evals(i);
      break;
    }
  }

  const Eigen::Index dim = static_cast<Eigen::Index>(
      std::int64_t(1) << m.n_sites);
  Eigen::VectorXcd kernel = es.eigenvectors().col(0);
  Eigen::MatrixXcd rho(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) rho(i, j) = kernel(i * dim + j);
  // Rotate the arbitrary eigenvector phase so the trace is real positive,
  // then Hermitize and normalize.
  const cplx tr = rho.trace();
  if (std::abs(tr) < 1e-12)
    throw std::runtime_error("exact_ness: kernel vector has zero trace");
  rho *= std::conj(tr) / std::abs(tr);
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  rho /= rho.trace().real();
  result.rho = std::move(rho);
  return result;
}

namespace {

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd evals = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * evals.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2,
                double psd_tol) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols())
    throw std::invalid_argument("fidelity: dimension mismatch");
  for (const Eigen::MatrixXcd* rho : {&rho1, &rho2}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        ((*rho + rho->adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
      throw std::invalid_argument("fidelity: input not PSD within tolerance");
  }
  const Eigen::MatrixXcd s1 = psd_sqrt((rho1 + rho1.adjoint()) / 2.0);
  const Eigen::MatrixXcd inner = s1 * ((rho2 + rho2.adjoint()) / 2.0) * s1;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      ((inner + inner.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    acc += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  return std::min(acc * acc, 1.0 + 1e-9);
}

double trace_distance(const Eigen::MatrixXcd& rho1,
                      const Eigen::MatrixXcd& rho2) {
  if (rho1.rows() != rho2.rows())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  const Eigen::MatrixXcd diff = rho1 - rho2;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
  return svd.singularValues().sum();
}

double vector_distance(const Eigen::MatrixXcd& rho1,
                       const Eigen::MatrixXcd& rho2) {
  if (rho1.rows() != rho2.rows())
    throw std::invalid_argument("vector_distance: dimension mismatch");
  const double n1 = rho1.norm();
  const double n2 = rho2.norm();
  if (n1 < 1e-300 || n2 < 1e-300)
    throw std::invalid_argument("vector_distance: zero matrix");
  return (rho1 / n1 - rho2 / n2).norm();
}

double choi_overlap(const Eigen::MatrixXcd& rho1,
                    const Eigen::MatrixXcd& rho2) {
  const double n1 = rho1.norm();
  const double n2 = rho2.norm();
  if (n1 < 1e-300 || n2 < 1e-300)
    throw std::invalid_argument("choi_overlap: zero matrix");
  return std::abs((rho1.adjoint() * rho2).trace()) / (n1 * n2);
}

std::vector<ScatterRow> distance_scatter_experiment(
    const std::vector<int>& n_list, int samples,
    std::pair<double, double> width_range, std::uint64_t seed) {
  std::vector<ScatterRow> rows;
  rows.reserve(n_list.size() * samples);
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const int n = n_list[ni];
    const std::int64_t dim = std::int64_t(1) << n;
    Rng rng(split_seed(seed, 0x5343, ni));
    std::uniform_real_distribution<double> box(0.0, 1.0);
    // A non-positive lower bound collapses the width distribution to zero.
    const bool zero_width = width_range.first <= 0.0;
    std::uniform_real_distribution<double> logw(
        std::log(zero_width ? 1.0 : width_range.first),
        std::log(zero_width ? 1.0 : width_range.second));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
      std::vector<double> diag(dim);
      double total = 0.0;
      for (auto& v : diag) {
        v = box(rng);
        total += v;
      }
      for (auto& v : diag) v /= total;
      const double width = zero_width ? 0.0 : std::exp(logw(rng));
      // The perturbed state is used as-is: no clamping, no renormalization.
      // The noise is drawn at the box scale and shares the state's
      // normalization, so its size relative to the entries is
      // dimension-independent.
      std::vector<double> noisy(dim);
      double dm = 0.0;
      for (std::int64_t i = 0; i < dim; ++i) {
        const double delta = width * gauss(rng) / total;
        noisy[i] = diag[i] + delta;
        dm += std::abs(delta);
      }
      double norm_a = 0.0, norm_b = 0.0;
      for (std::int64_t i = 0; i < dim; ++i) {
        norm_a += diag[i] * diag[i];
        norm_b += noisy[i] * noisy[i];
      }
      norm_a = std::sqrt(norm_a);
      norm_b = std::sqrt(norm_b);
      double dv2 = 0.0;
      for (std::int64_t i = 0; i < dim; ++i) {
        const double d = diag[i] / norm_a - noisy[i] / norm_b;
        dv2 += d * d;
      }
      rows.push_back({n, width, std::sqrt(dv2), dm});
    }
  }
  return rows;
}

Eigen::MatrixXcd ansatz_density_matrix(const AnsatzConfig& cfg,
                                       const ParamVector& theta) {
  if (cfg.n_sites > 6)
    throw std::length_error("ansatz_density_matrix: dense guard is N <= 6");
  const Circuit c = build_full_circuit(cfg, theta);
  const StateVector state = run_circuit(c);
  const Eigen::Index dim = static_cast<Eigen::Index>(
      std::int64_t(1) << cfg.n_sites);
  Eigen::MatrixXcd rho(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      rho(i, j) = state.amplitudes()[i * dim + j];
  const cplx tr = rho.trace();
  if (std::abs(tr) < 1e-12)
    throw std::invalid_argument("ansatz_density_matrix: zero-trace reshape");
  return rho / tr;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("spearman: need two same-length series");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = double(i);
    return r;
  };
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

}  // namespace ness
