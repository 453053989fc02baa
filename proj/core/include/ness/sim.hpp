#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ness/pauli.hpp"

namespace ness {

using Rng = std::mt19937_64;

/// Deterministic stream splitting: mixes a master seed with task tags so
/// results do not depend on evaluation order.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t tag_a,
                         std::uint64_t tag_b = 0);

enum class GateKind { RX, RY, RZ, CNOT, CZ, CRY, SQG };

/// Parameterized gate. Rotation convention: R_a(theta) = exp(-i sigma_a
/// theta / 2). SQG is the two-angle composite RZ(angles[1]) * RY(angles[0]).
struct Gate {
  GateKind kind;
  int target = 0;
  int control = -1;
  std::array<double, 2> angles{0.0, 0.0};

  int arity() const;
  int n_angles() const;

  static Gate rx(int q, double theta) { return {GateKind::RX, q, -1, {theta, 0.0}}; }
  static Gate ry(int q, double theta) { return {GateKind::RY, q, -1, {theta, 0.0}}; }
  static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, {theta, 0.0}}; }
  static Gate cnot(int c, int t) { return {GateKind::CNOT, t, c, {0.0, 0.0}}; }
  static Gate cz(int c, int t) { return {GateKind::CZ, t, c, {0.0, 0.0}}; }
  static Gate cry(int c, int t, double theta) { return {GateKind::CRY, t, c, {theta, 0.0}}; }
  static Gate sqg(int q, double ry_angle, double rz_angle) {
    return {GateKind::SQG, q, -1, {ry_angle, rz_angle}};
  }
};

/// Dense matrix of a gate kind (2x2 or 4x4, control as the first qubit).
Eigen::MatrixXcd gate_matrix(const Gate& g);

struct Circuit {
  int n = 0;
  std::vector<Gate> gates;

  void append(Gate g);
  void append(const Circuit& other);  // qubit counts must match
  void validate() const;
};

/// Monte-Carlo depolarizing noise: after each k-qubit gate, with
/// probability p_k one uniformly random non-identity Pauli on the gate's
/// support is inserted.
struct NoiseConfig {
  double p1 = 0.0;
  double p2 = 0.0;
  bool enabled = false;
};

class StateVector {
 public:
  explicit StateVector(int n);

  int n() const { return n_; }
  std::int64_t dim() const { return std::int64_t(1) << n_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }

  void reset_basis(std::int64_t index);
  double norm() const;

  void apply_gate(const Gate& g);
  void apply_pauli(PauliOp op, int q);
  /// Measurement-basis rotations (ideal, consume no noise).
  void apply_h(int q);
  void apply_sdg(int q);

  /// Probabilities |amplitude|^2.
  std::vector<double> probabilities() const;

 private:
  void apply_single(int q, const std::array<cplx, 4>& u);

  int n_;
  std::vector<cplx> amps_;
};

/// One trajectory: U|0...0> with optional stochastic Pauli insertions.
StateVector run_circuit(const Circuit& c, const NoiseConfig* noise, Rng& rng);
StateVector run_circuit(const Circuit& c);  // noiseless

/// Apply a circuit to an existing state (same trajectory semantics).
void apply_circuit(StateVector& state, const Circuit& c,
                   const NoiseConfig* noise, Rng& rng);

/// Exact <s|O|s> for a Hermitian PauliSum.
double expectation_exact(const StateVector& s, const PauliSum& o);

/// <psi|P|psi> for a single Pauli string (complex in general).
cplx pauli_expectation(const StateVector& s, const PauliString& p);

/// Term-wise sampled estimate: rotate each Pauli term into its eigenbasis,
/// sample parities, aggregate with coefficients. Returns (estimate, stderr).
/// Identity terms contribute exactly with zero variance.
std::pair<double, double> expectation_sampled(const Circuit& c,
                                              const PauliSum& o,
                                              int shots_per_term,
                                              const NoiseConfig* noise,
                                              Rng& rng);

/// Empirical histogram over basis states (counts indexed by basis index).
std::vector<std::int64_t> sample_bitstrings(const Circuit& c, int shots,
                                            const NoiseConfig* noise,
                                            Rng& rng);

/// Sample one basis index from a prepared state.
std::int64_t sample_index(const StateVector& s, Rng& rng);

}  // namespace ness
