#pragma once

#include <span>
#include <vector>

#include "ness/sim.hpp"

namespace ness {

enum class EigType { Decoupled, Entangled };

/// Fundamental structure of the cost landscape in one angle, which fixes
/// the curve-fitting basis and the search interval:
///  - Single:     {1, cos t, sin t}, period 2 pi (plain rotation, one use)
///  - Controlled: adds {cos t/2, sin t/2}, period 4 pi (one control qubit)
///  - Paired:     adds {cos 2t, sin 2t} (angle shared by V and V*)
enum class PeriodClass { Single, Controlled, Paired };

struct AnsatzConfig {
  int n_sites = 1;
  EigType eig_type = EigType::Decoupled;
  int d1 = 1;  // repetitions of the entangled eigenvalue block
  int d2 = 0;  // repetitions of the basis-transform block
};

/// Per-parameter metadata resolved from the layout.
struct ParamSpec {
  PeriodClass period;
  bool restricted = false;
  double lo = 0.0;  // search interval; for unrestricted parameters this is
  double hi = 0.0;  // one full period
  bool in_eigen = false;  // belongs to theta_d
};

/// Resolved parameter layout: theta_d entries first, then theta_v.
struct AnsatzLayout {
  std::vector<ParamSpec> params;
  int r_d = 0;
  int r_v = 0;
  int total() const { return r_d + r_v; }
};

AnsatzLayout resolve_layout(const AnsatzConfig& cfg);

/// The variational state theta = theta_d U theta_v, with range
/// restrictions on theta_d keeping the reshaped matrix PSD.
struct ParamVector {
  std::vector<double> values;

  static ParamVector zeros(const AnsatzLayout& layout);
  static ParamVector random(const AnsatzLayout& layout, Rng& rng);
  void validate(const AnsatzLayout& layout) const;
};

/// Eigenvalue-distribution circuit D~ on the N physical qubits.
/// Decoupled: one RY per qubit. Entangled: d1 repetitions of an RY layer
/// followed by a CRY chain (control i, target i+1).
Circuit build_eigen_circuit(const AnsatzConfig& cfg,
                            std::span<const double> theta_d);

/// CNOT with control q and target q+N for q = 0..N-1, on 2N qubits.
Circuit build_cnot_ladder(int n);

/// Basis transformation V on N qubits: an SQG (RZ*RY) layer, then d2
/// repetitions of (CZ chain + SQG layer).
Circuit build_basis_circuit(const AnsatzConfig& cfg,
                            std::span<const double> theta_v);

/// Gate-wise complex conjugate in the computational basis.
Circuit conjugate_circuit(const Circuit& c);

/// Full 2N-qubit circuit: D~ on the physical register, CNOT ladder, then
/// V on the physical register and V* on the ancillary register with the
/// same theta_v.
Circuit build_full_circuit(const AnsatzConfig& cfg, const ParamVector& theta);

/// Shift every qubit index by `offset` into a register of `n_total` qubits.
Circuit shift_circuit(const Circuit& c, int offset, int n_total);

}  // namespace ness
