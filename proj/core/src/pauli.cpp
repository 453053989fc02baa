#include "ness/pauli.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ness {

namespace {

// i^k for k = 0..3, exact.
cplx ipow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Single-qubit products: table[a][b] = {result, power of i}.
struct SingleProduct {
  PauliOp out;
  int phase;  // exponent of i
};

constexpr SingleProduct kProduct[4][4] = {
    // I            X            Y            Z
    {{PauliOp::I, 0}, {PauliOp::X, 0}, {PauliOp::Y, 0}, {PauliOp::Z, 0}},  // I
    {{PauliOp::X, 0}, {PauliOp::I, 0}, {PauliOp::Z, 1}, {PauliOp::Y, 3}},  // X
    {{PauliOp::Y, 0}, {PauliOp::Z, 3}, {PauliOp::I, 0}, {PauliOp::X, 1}},  // Y
    {{PauliOp::Z, 0}, {PauliOp::Y, 1}, {PauliOp::X, 3}, {PauliOp::I, 0}},  // Z
};

std::string string_key(const PauliString& s) {
  std::string key;
  key.reserve(s.labels.size());
  for (PauliOp op : s.labels) key.push_back(pauli_char(op));
  return key;
}

}  // namespace

char pauli_char(PauliOp op) {
  switch (op) {
    case PauliOp::I: return 'I';
    case PauliOp::X: return 'X';
    case PauliOp::Y: return 'Y';
    case PauliOp::Z: return 'Z';
  }
  return '?';
}

PauliOp pauli_from_char(char c) {
  switch (c) {
    case 'I': return PauliOp::I;
    case 'X': return PauliOp::X;
    case 'Y': return PauliOp::Y;
    case 'Z': return PauliOp::Z;
  }
  throw std::invalid_argument(std::string("invalid Pauli label character: ") +
                              c);
}

bool PauliString::is_identity() const {
  for (PauliOp op : labels)
    if (op != PauliOp::I) return false;
  return true;
}

PauliString PauliString::identity(int n) {
  return PauliString(std::vector<PauliOp>(n, PauliOp::I));
}

PauliString PauliString::from_label(const std::string& s) {
  std::vector<PauliOp> ops;
  ops.reserve(s.size());
  for (char c : s) ops.push_back(pauli_from_char(c));
  return PauliString(std::move(ops));
}

std::string PauliString::label() const { return string_key(*this); }

std::pair<cplx, PauliString> multiply(const PauliString& a,
                                      const PauliString& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("PauliString size mismatch in multiply");
  std::vector<PauliOp> out(a.labels.size());
  int phase = 0;
  for (std::size_t q = 0; q < a.labels.size(); ++q) {
    const SingleProduct& p =
        kProduct[static_cast<int>(a.labels[q])][static_cast<int>(b.labels[q])];
    out[q] = p.out;
    phase += p.phase;
  }
  return {ipow(phase), PauliString(std::move(out))};
}

PauliSum PauliSum::identity(int n, cplx coeff) {
  PauliSum s(n);
  s.add_term(coeff, PauliString::identity(n));
  return s;
}

PauliSum PauliSum::term(cplx coeff, const std::string& label) {
  PauliSum s(static_cast<int>(label.size()));
  s.add_term(coeff, PauliString::from_label(label));
  return s;
}

void PauliSum::add_term(cplx coeff, PauliString s) {
  if (s.n() != n_)
    throw std::invalid_argument("PauliString size does not match PauliSum");
  terms_.emplace_back(coeff, std::move(s));
}

PauliSum& PauliSum::simplify() {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::pair<cplx, PauliString>> merged;
  merged.reserve(terms_.size());
  for (auto& [coeff, str] : terms_) {
    std::string key = string_key(str);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(std::move(key), merged.size());
      merged.emplace_back(coeff, std::move(str));
    } else {
      merged[it->second].first += coeff;
    }
  }
  terms_.clear();
  for (auto& [coeff, str] : merged) {
    if (std::abs(coeff) > kDropTolerance)
      terms_.emplace_back(coeff, std::move(str));
  }
  return *this;
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
  if (n_ != other.n_) throw std::invalid_argument("PauliSum size mismatch");
  PauliSum out(n_);
  out.terms_ = terms_;
  out.terms_.insert(out.terms_.end(), other.terms_.begin(),
                    other.terms_.end());
  return out.simplify();
}

PauliSum PauliSum::operator-(const PauliSum& other) const {
  return *this + other * cplx(-1.0, 0.0);
}

PauliSum PauliSum::operator*(cplx scalar) const {
  PauliSum out(n_);
  for (const auto& [coeff, str] : terms_) out.add_term(coeff * scalar, str);
  return out.simplify();
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  return compose(*this, other);
}

bool PauliSum::is_hermitian(double tol) const {
  PauliSum s = *this;
  s.simplify();
  for (const auto& [coeff, str] : s.terms())
    if (std::abs(coeff.imag()) > tol) return false;
  return true;
}

PauliSum adjoint(const PauliSum& s) {
  PauliSum out(s.n());
  for (const auto& [coeff, str] : s.terms())
    out.add_term(std::conj(coeff), str);
  return out.simplify();
}

PauliSum compose(const PauliSum& a, const PauliSum& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("PauliSum size mismatch in compose");
  PauliSum out(a.n());
  for (const auto& [ca, sa] : a.terms()) {
    for (const auto& [cb, sb] : b.terms()) {
      auto [phase, str] = multiply(sa, sb);
      out.add_term(ca * cb * phase, std::move(str));
    }
  }
  return out.simplify();
}

PauliSum embed_left_right(const PauliSum& a, const PauliSum& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("PauliSum size mismatch in embed_left_right");
  const int n = a.n();
  PauliSum out(2 * n);
  for (const auto& [ca, sa] : a.terms()) {
    for (const auto& [cb, sb] : b.terms()) {
      // Termwise transpose: Y^T = -Y, X/Z/I unchanged.
      int y_count = 0;
      std::vector<PauliOp> labels;
      labels.reserve(2 * n);
      labels.insert(labels.end(), sa.labels.begin(), sa.labels.end());
      for (PauliOp op : sb.labels) {
        if (op == PauliOp::Y) ++y_count;
        labels.push_back(op);
      }
      cplx sign = (y_count % 2 == 0) ? 1.0 : -1.0;
      out.add_term(ca * cb * sign, PauliString(std::move(labels)));
    }
  }
  return out.simplify();
}

Eigen::MatrixXcd to_dense(const PauliSum& s) {
  const int n = s.n();
  if (n > 14)
    throw std::length_error("to_dense: qubit count exceeds dense guard (14)");
  const std::int64_t dim = std::int64_t(1) << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [coeff, str] : s.terms()) {
    // Each Pauli string is a signed permutation: column j maps to a single
    // row with a phase i^k (-1)^sign.
    std::int64_t flip = 0;
    for (int q = 0; q < n; ++q) {
      PauliOp op = str.labels[q];
      if (op == PauliOp::X || op == PauliOp::Y)
        flip |= std::int64_t(1) << (n - 1 - q);
    }
    for (std::int64_t col = 0; col < dim; ++col) {
      int phase = 0;  // exponent of i
      for (int q = 0; q < n; ++q) {
        const int bit = (col >> (n - 1 - q)) & 1;
        switch (str.labels[q]) {
          case PauliOp::Y:
            // Y|0> = i|1>, Y|1> = -i|0>
            phase += bit ? 3 : 1;
            break;
          case PauliOp::Z:
            if (bit) phase += 2;
            break;
          default:
            break;
        }
      }
      m(col ^ flip, col) += coeff * ipow(phase);
    }
  }
  return m;
}

PauliSum from_dense(const Eigen::MatrixXcd& m, int n) {
  const std::int64_t dim = std::int64_t(1) << n;
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("from_dense: matrix dimension mismatch");
  PauliSum out(n);
  // Enumerate all 4^n strings; adequate for the small registers this is
  // used on (round-trip tests, n <= 3).
  std::vector<PauliOp> labels(n, PauliOp::I);
  const std::int64_t total = std::int64_t(1) << (2 * n);
  for (std::int64_t code = 0; code < total; ++code) {
    for (int q = 0; q < n; ++q)
      labels[q] = static_cast<PauliOp>((code >> (2 * q)) & 3);
    PauliString str(labels);
    PauliSum basis(n);
    basis.add_term(1.0, str);
    cplx coeff = (to_dense(basis).adjoint() * m).trace() / double(dim);
    if (std::abs(coeff) > PauliSum::kDropTolerance)
      out.add_term(coeff, std::move(str));
  }
  return out.simplify();
}

std::string to_text(const PauliSum& s) {
  std::string out;
  char buf[128];
  for (const auto& [coeff, str] : s.terms()) {
    std::snprintf(buf, sizeof(buf), "(%.17g,%.17g) %s\n", coeff.real(),
                  coeff.imag(), str.label().c_str());
    out += buf;
  }
  return out;
}

PauliSum from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<cplx, PauliString>> terms;
  int n = -1;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    double re = 0.0, im = 0.0;
    char label[64] = {0};
    if (std::sscanf(line.c_str(), " (%lf,%lf) %63s", &re, &im, label) != 3)
      throw std::invalid_argument("malformed Pauli term line: " + line);
    PauliString str = PauliString::from_label(label);
    if (n < 0) n = str.n();
    if (str.n() != n)
      throw std::invalid_argument("inconsistent qubit count in Pauli text");
    terms.emplace_back(cplx(re, im), std::move(str));
  }
  if (n < 0) throw std::invalid_argument("empty Pauli text");
  PauliSum out(n);
  for (auto& [coeff, str] : terms) out.add_term(coeff, std::move(str));
  return out;
}

}  // namespace ness
