#pragma once

#include <string>
#include <vector>

#include "ness/pauli.hpp"

namespace ness {

enum class Boundary { Open, Periodic };

/// One dissipation channel: jump operator, non-negative rate, label.
struct JumpChannel {
  PauliSum op;
  double rate = 0.0;
  std::string tag;
};

/// Hamiltonian plus local dissipation channels on N sites.
///
/// Sign convention used throughout: sigma^z |0> = +|0>, and
/// sigma^- = (sigma^x - i sigma^y)/2 maps |0> -> |1>. Damping therefore
/// relaxes towards |1...1>.
struct LindbladModel {
  int n_sites = 0;
  PauliSum hamiltonian;
  std::vector<JumpChannel> jumps;

  void validate() const;
};

/// Hermitian observable with a display name.
struct Observable {
  PauliSum op;
  std::string name;
};

/// Liouvillian in the vector representation on 2N qubits:
///   -i (H (x) 1 - 1 (x) H^T)
///   + sum_k (gamma_k / 2) (c (x) c* - 1/2 c^dag c (x) 1 - 1 (x) 1/2 c^T c*)
PauliSum liouvillian_vector(const LindbladModel& m);

/// Hermitian cost operator L^dag L, simplified.
PauliSum cost_operator(const LindbladModel& m);

/// Transverse-field Ising chain with damping (sigma^-) and dephasing
/// (sigma^z) on every site. H = 1/2 sum_i Z_i Z_{i+1} + g sum_i X_i.
/// For N = 1 the two-site term is dropped.
LindbladModel tfim_model(int n, double g, double gamma1, double gamma2,
                         Boundary boundary = Boundary::Open);

/// Coupled-cavity model: H = mu sum_i n_i with engineered two-site
/// dissipation c3_i = cos(theta) (s-_i + s-_{i+1}) + sin(theta) (s+_i +
/// s+_{i+1}), plus per-site damping and dephasing.
LindbladModel cqed_model(int n, double mu, double gamma1, double gamma2,
                         double theta, Boundary boundary = Boundary::Periodic,
                         double gamma3 = 1.0);

/// Circulating current between sites i and i+1:
///   I = -eta s+_i s-_{i+1} + h.c.,  eta = cos^2(theta) - sin^2(theta).
Observable current_observable(int i, double theta, int n,
                              Boundary boundary = Boundary::Periodic);

/// Mean magnetization (1/N) sum_i sigma^axis_i, axis in {'x','y','z'}.
Observable magnetization_observable(char axis, int n);

/// sigma^+/- on one site of an N-site register.
PauliSum sigma_minus(int site, int n);
PauliSum sigma_plus(int site, int n);
PauliSum sigma_single(PauliOp op, int site, int n);

}  // namespace ness
