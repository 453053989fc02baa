#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ness {

using cplx = std::complex<double>;

/// Single-qubit Pauli symbol.
enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(PauliOp op);
PauliOp pauli_from_char(char c);

/// Tensor product of single-qubit Paulis over a fixed register.
/// Qubit 0 is the most significant bit of the computational index.
struct PauliString {
  std::vector<PauliOp> labels;

  PauliString() = default;
  explicit PauliString(std::vector<PauliOp> ops) : labels(std::move(ops)) {}

  int n() const { return static_cast<int>(labels.size()); }
  bool is_identity() const;

  static PauliString identity(int n);
  /// Parse a label such as "XIZ".
  static PauliString from_label(const std::string& s);
  std::string label() const;

  bool operator==(const PauliString&) const = default;
};

/// Product of two Pauli strings. Returns (phase, string) with
/// phase * string == a * b and phase in {1, i, -1, -i}.
/// Phases are tracked as exact powers of i, never floating point.
std::pair<cplx, PauliString> multiply(const PauliString& a,
                                      const PauliString& b);

/// Complex-weighted sum of Pauli strings on a fixed number of qubits.
/// Simplification merges equal strings and drops coefficients below
/// kDropTolerance.
class PauliSum {
 public:
  static constexpr double kDropTolerance = 1e-12;

  PauliSum() = default;
  explicit PauliSum(int n) : n_(n) {}

  static PauliSum identity(int n, cplx coeff = 1.0);
  static PauliSum zero(int n) { return PauliSum(n); }
  /// Single-term sum c * P for P given by its label.
  static PauliSum term(cplx coeff, const std::string& label);

  int n() const { return n_; }
  const std::vector<std::pair<cplx, PauliString>>& terms() const {
    return terms_;
  }
  std::size_t size() const { return terms_.size(); }

  void add_term(cplx coeff, PauliString s);
  PauliSum& simplify();

  PauliSum operator+(const PauliSum& other) const;
  PauliSum operator-(const PauliSum& other) const;
  PauliSum operator*(cplx scalar) const;
  PauliSum operator*(const PauliSum& other) const;

  /// True when every coefficient is real after simplification.
  bool is_hermitian(double tol = 1e-10) const;

 private:
  int n_ = 0;
  std::vector<std::pair<cplx, PauliString>> terms_;
};

/// Adjoint: conjugate every coefficient (Pauli strings are Hermitian).
PauliSum adjoint(const PauliSum& s);

/// Operator product, simplified.
PauliSum compose(const PauliSum& a, const PauliSum& b);

/// Vectorization map for rho -> A rho B. Returns A (x) B^T on 2N qubits
/// with the physical register on qubits 0..N-1 and the ancillary register
/// on qubits N..2N-1; the transpose acts termwise (Y -> -Y).
PauliSum embed_left_right(const PauliSum& a, const PauliSum& b);

/// Dense 2^n x 2^n matrix. Guarded at n <= 14.
Eigen::MatrixXcd to_dense(const PauliSum& s);

/// Projection of a dense matrix onto the Pauli basis, Tr(P M) / 2^n.
PauliSum from_dense(const Eigen::MatrixXcd& m, int n);

/// Textual format: one term per line, "(<re>,<im>) <label>". Round-trips
/// exactly through max-precision printing.
std::string to_text(const PauliSum& s);
PauliSum from_text(const std::string& text);

}  // namespace ness
