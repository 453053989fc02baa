#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ness/ansatz.hpp"
#include "ness/lindblad.hpp"

namespace ness {

/// Exact-diagonalization ground truth for desk-scale models.
struct NessResult {
  Eigen::MatrixXcd rho;   // Hermitian, unit trace
  double gap = 0.0;       // smallest nonzero eigenvalue of L^dag L
  bool degenerate = false;
};

/// Validate density-matrix invariants (Hermitian, trace 1, PSD within
/// tolerance). Throws on violation.
void check_density_matrix(const Eigen::MatrixXcd& rho, double psd_tol = 1e-9);

/// Action of the master equation on a density matrix (matrix
/// representation, applied directly):
///   L rho = -i [H, rho] + sum_k (gamma_k/2) (c rho c^dag - 1/2 {c^dag c, rho})
Eigen::MatrixXcd lindblad_apply(const LindbladModel& m,
                                const Eigen::MatrixXcd& rho);

/// Exact NESS from the dense eigendecomposition of L^dag L (guard N <= 6).
/// The kernel vector is reshaped, Hermitized and trace-normalized. A
/// degenerate kernel is flagged, never silently resolved.
NessResult exact_ness(const LindbladModel& m);

/// Uhlmann fidelity (Tr sqrt(sqrt(r1) r2 sqrt(r1)))^2 with negative
/// eigenvalues clamped to zero. Inputs failing PSD beyond psd_tol raise.
double fidelity(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2,
                double psd_tol = 0.05);

/// Sum of singular values of the difference (no 1/2 factor).
double trace_distance(const Eigen::MatrixXcd& rho1,
                      const Eigen::MatrixXcd& rho2);

/// 2-norm distance between Frobenius-normalized vectorizations.
double vector_distance(const Eigen::MatrixXcd& rho1,
                       const Eigen::MatrixXcd& rho2);

/// Overlap |<r1|r2>| of the normalized vectorizations.
double choi_overlap(const Eigen::MatrixXcd& rho1,
                    const Eigen::MatrixXcd& rho2);

struct ScatterRow {
  int n = 0;        // qubit count of the random diagonal state
  double width = 0; // Gaussian noise width
  double dv = 0;
  double dm = 0;
};

/// Random-diagonal-state comparison of the two distance measures. Per
/// sample: diagonal rho ~ box[0,1] normalized, additive diagonal Gaussian
/// noise with width drawn log-uniformly from width_range; no clamping or
/// renormalization of the perturbed state.
std::vector<ScatterRow> distance_scatter_experiment(
    const std::vector<int>& n_list, int samples,
    std::pair<double, double> width_range, std::uint64_t seed);

/// Dense density matrix of the ansatz state: reshape U(theta)|0> into a
/// 2^N x 2^N matrix and normalize by its trace (guard N <= 6).
Eigen::MatrixXcd ansatz_density_matrix(const AnsatzConfig& cfg,
                                       const ParamVector& theta);

/// Spearman rank correlation.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ness
