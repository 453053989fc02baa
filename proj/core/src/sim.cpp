#include "ness/sim.hpp"

#include <cmath>
#include <stdexcept>

namespace ness {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr cplx kI{0.0, 1.0};

std::array<cplx, 4> single_matrix(const Gate& g) {
  const double h = g.angles[0] / 2.0;
  switch (g.kind) {
    case GateKind::RX:
      return {std::cos(h), -kI * std::sin(h), -kI * std::sin(h), std::cos(h)};
    case GateKind::RY:
    case GateKind::CRY:
      return {std::cos(h), -std::sin(h), std::sin(h), std::cos(h)};
    case GateKind::RZ:
      return {std::exp(-kI * h), 0.0, 0.0, std::exp(kI * h)};
    case GateKind::SQG: {
      // RZ(phi) * RY(psi)
      const double p = g.angles[1] / 2.0;
      const cplx em = std::exp(-kI * p), ep = std::exp(kI * p);
      return {em * std::cos(h), -em * std::sin(h), ep * std::sin(h),
              ep * std::cos(h)};
    }
    default:
      throw std::invalid_argument("not a single-qubit gate");
  }
}

}  // namespace

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t tag_a,
                         std::uint64_t tag_b) {
  return splitmix64(splitmix64(seed ^ splitmix64(tag_a)) ^ splitmix64(~tag_b));
}

int Gate::arity() const {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::CRY:
      return 2;
    default:
      return 1;
  }
}

int Gate::n_angles() const {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
      return 0;
    case GateKind::SQG:
      return 2;
    default:
      return 1;
  }
}

Eigen::MatrixXcd gate_matrix(const Gate& g) {
  if (g.arity() == 1) {
    auto u = single_matrix(g);
    Eigen::MatrixXcd m(2, 2);
    m << u[0], u[1], u[2], u[3];
    return m;
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  switch (g.kind) {
    case GateKind::CNOT:
      m(2, 2) = 0; m(3, 3) = 0; m(2, 3) = 1; m(3, 2) = 1;
      break;
    case GateKind::CZ:
      m(3, 3) = -1;
      break;
    case GateKind::CRY: {
      auto u = single_matrix(g);
      m(2, 2) = u[0]; m(2, 3) = u[1]; m(3, 2) = u[2]; m(3, 3) = u[3];
      break;
    }
    default:
      break;
  }
  return m;
}

void Circuit::append(Gate g) {
  if (g.target < 0 || g.target >= n ||
      (g.arity() == 2 && (g.control < 0 || g.control >= n)))
    throw std::invalid_argument("gate qubit index out of range");
  if (g.arity() == 2 && g.control == g.target)
    throw std::invalid_argument("control equals target");
  gates.push_back(g);
}

void Circuit::append(const Circuit& other) {
  if (other.n != n) throw std::invalid_argument("circuit size mismatch");
  for (const Gate& g : other.gates) gates.push_back(g);
}

void Circuit::validate() const {
  for (const Gate& g : gates) {
    if (g.target < 0 || g.target >= n)
      throw std::invalid_argument("gate target out of range");
    if (g.arity() == 2 && (g.control < 0 || g.control >= n ||
                           g.control == g.target))
      throw std::invalid_argument("gate control invalid");
  }
}

StateVector::StateVector(int n) : n_(n), amps_(std::int64_t(1) << n, 0.0) {
  amps_[0] = 1.0;
}

void StateVector::reset_basis(std::int64_t index) {
  std::fill(amps_.begin(), amps_.end(), cplx(0.0));
  amps_[index] = 1.0;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cplx& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply_single(int q, const std::array<cplx, 4>& u) {
  const std::int64_t stride = std::int64_t(1) << (n_ - 1 - q);
  const std::int64_t d = dim();
  for (std::int64_t base = 0; base < d; base += 2 * stride) {
    for (std::int64_t i = base; i < base + stride; ++i) {
      const cplx a0 = amps_[i];
      const cplx a1 = amps_[i + stride];
      amps_[i] = u[0] * a0 + u[1] * a1;
      amps_[i + stride] = u[2] * a0 + u[3] * a1;
    }
  }
}

void StateVector::apply_gate(const Gate& g) {
  switch (g.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::SQG:
      apply_single(g.target, single_matrix(g));
      break;
    case GateKind::CNOT: {
      const std::int64_t cbit = std::int64_t(1) << (n_ - 1 - g.control);
      const std::int64_t tbit = std::int64_t(1) << (n_ - 1 - g.target);
      const std::int64_t d = dim();
      for (std::int64_t i = 0; i < d; ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
      break;
    }
    case GateKind::CZ: {
      const std::int64_t cbit = std::int64_t(1) << (n_ - 1 - g.control);
      const std::int64_t tbit = std::int64_t(1) << (n_ - 1 - g.target);
      const std::int64_t d = dim();
      for (std::int64_t i = 0; i < d; ++i)
        if ((i & cbit) && (i & tbit)) amps_[i] = -amps_[i];
      break;
    }
    case GateKind::CRY: {
      const auto u = single_matrix(g);
      const std::int64_t cbit = std::int64_t(1) << (n_ - 1 - g.control);
      const std::int64_t tbit = std::int64_t(1) << (n_ - 1 - g.target);
      const std::int64_t d = dim();
      for (std::int64_t i = 0; i < d; ++i) {
        if ((i & cbit) && !(i & tbit)) {
          const cplx a0 = amps_[i];
          const cplx a1 = amps_[i | tbit];
          amps_[i] = u[0] * a0 + u[1] * a1;
          amps_[i | tbit] = u[2] * a0 + u[3] * a1;
        }
      }
      break;
    }
  }
}

void StateVector::apply_pauli(PauliOp op, int q) {
  switch (op) {
    case PauliOp::I:
      break;
    case PauliOp::X:
      apply_single(q, {0.0, 1.0, 1.0, 0.0});
      break;
    case PauliOp::Y:
      apply_single(q, {0.0, -kI, kI, 0.0});
      break;
    case PauliOp::Z:
      apply_single(q, {1.0, 0.0, 0.0, -1.0});
      break;
  }
}

void StateVector::apply_h(int q) {
  const double s = 1.0 / std::sqrt(2.0);
  apply_single(q, {s, s, s, -s});
}

void StateVector::apply_sdg(int q) { apply_single(q, {1.0, 0.0, 0.0, -kI}); }

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

void apply_circuit(StateVector& state, const Circuit& c,
                   const NoiseConfig* noise, Rng& rng) {
  const bool noisy = noise != nullptr && noise->enabled;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const Gate& g : c.gates) {
    state.apply_gate(g);
    if (!noisy) continue;
    const int k = g.arity();
    const double p = (k == 1) ? noise->p1 : noise->p2;
    if (p <= 0.0 || unif(rng) >= p) continue;
    if (k == 1) {
      std::uniform_int_distribution<int> pick(1, 3);
      state.apply_pauli(static_cast<PauliOp>(pick(rng)), g.target);
    } else {
      std::uniform_int_distribution<int> pick(1, 15);
      const int code = pick(rng);
      const int pa = code & 3;
      const int pb = (code >> 2) & 3;
      if (pa) state.apply_pauli(static_cast<PauliOp>(pa), g.control);
      if (pb) state.apply_pauli(static_cast<PauliOp>(pb), g.target);
    }
  }
}

StateVector run_circuit(const Circuit& c, const NoiseConfig* noise, Rng& rng) {
  StateVector state(c.n);
  apply_circuit(state, c, noise, rng);
  return state;
}

StateVector run_circuit(const Circuit& c) {
  Rng rng(0);
  return run_circuit(c, nullptr, rng);
}

cplx pauli_expectation(const StateVector& s, const PauliString& p) {
  const int n = s.n();
  if (p.n() != n) throw std::invalid_argument("Pauli size mismatch");
  const std::int64_t d = s.dim();
  std::int64_t flip = 0;
  for (int q = 0; q < n; ++q)
    if (p.labels[q] == PauliOp::X || p.labels[q] == PauliOp::Y)
      flip |= std::int64_t(1) << (n - 1 - q);
  const auto& a = s.amplitudes();
  cplx acc = 0.0;
  for (std::int64_t i = 0; i < d; ++i) {
    int phase = 0;
    for (int q = 0; q < n; ++q) {
      const int bit = (i >> (n - 1 - q)) & 1;
      switch (p.labels[q]) {
        case PauliOp::Y: phase += bit ? 3 : 1; break;
        case PauliOp::Z: phase += bit ? 2 : 0; break;
        default: break;
      }
    }
    cplx ph;
    switch (phase & 3) {
      case 0: ph = {1.0, 0.0}; break;
      case 1: ph = {0.0, 1.0}; break;
      case 2: ph = {-1.0, 0.0}; break;
      default: ph = {0.0, -1.0}; break;
    }
    acc += std::conj(a[i ^ flip]) * ph * a[i];
  }
  return acc;
}

double expectation_exact(const StateVector& s, const PauliSum& o) {
  if (!o.is_hermitian())
    throw std::invalid_argument("expectation_exact requires a Hermitian sum");
  cplx acc = 0.0;
  for (const auto& [coeff, str] : o.terms())
    acc += coeff * pauli_expectation(s, str);
  return acc.real();
}

std::int64_t sample_index(const StateVector& s, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double r = unif(rng);
  const auto& a = s.amplitudes();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::norm(a[i]);
    if (r < acc) return static_cast<std::int64_t>(i);
  }
  return static_cast<std::int64_t>(a.size()) - 1;
}

namespace {

// Rotate the term's eigenbasis to Z and return the support mask.
std::int64_t rotate_to_eigenbasis(StateVector& state, const PauliString& p) {
  const int n = state.n();
  std::int64_t mask = 0;
  for (int q = 0; q < n; ++q) {
    switch (p.labels[q]) {
      case PauliOp::X:
        state.apply_h(q);
        mask |= std::int64_t(1) << (n - 1 - q);
        break;
      case PauliOp::Y:
        state.apply_sdg(q);
        state.apply_h(q);
        mask |= std::int64_t(1) << (n - 1 - q);
        break;
      case PauliOp::Z:
        mask |= std::int64_t(1) << (n - 1 - q);
        break;
      case PauliOp::I:
        break;
    }
  }
  return mask;
}

int parity(std::int64_t bits) {
  return __builtin_popcountll(static_cast<unsigned long long>(bits)) & 1;
}

}  // namespace

std::pair<double, double> expectation_sampled(const Circuit& c,
                                              const PauliSum& o,
                                              int shots_per_term,
                                              const NoiseConfig* noise,
                                              Rng& rng) {
  if (shots_per_term < 1)
    throw std::invalid_argument("shots_per_term must be >= 1");
  if (!o.is_hermitian())
    throw std::invalid_argument("expectation_sampled requires Hermitian sum");
  const bool noisy = noise != nullptr && noise->enabled;

  std::optional<StateVector> cached;
  if (!noisy) cached = run_circuit(c);

  double estimate = 0.0;
  double var = 0.0;
  for (const auto& [coeff, str] : o.terms()) {
    const double w = coeff.real();
    if (str.is_identity()) {
      estimate += w;  // exact, zero variance
      continue;
    }
    double sum = 0.0, sumsq = 0.0;
    if (!noisy) {
      StateVector rotated = *cached;
      const std::int64_t mask = rotate_to_eigenbasis(rotated, str);
      for (int shot = 0; shot < shots_per_term; ++shot) {
        const std::int64_t idx = sample_index(rotated, rng);
        const double v = parity(idx & mask) ? -1.0 : 1.0;
        sum += v;
        sumsq += 1.0;
      }
    } else {
      for (int shot = 0; shot < shots_per_term; ++shot) {
        StateVector state = run_circuit(c, noise, rng);
        const std::int64_t mask = rotate_to_eigenbasis(state, str);
        const std::int64_t idx = sample_index(state, rng);
        const double v = parity(idx & mask) ? -1.0 : 1.0;
        sum += v;
        sumsq += 1.0;
      }
    }
    const double mean = sum / shots_per_term;
    estimate += w * mean;
    if (shots_per_term > 1) {
      const double sample_var =
          (sumsq - shots_per_term * mean * mean) / (shots_per_term - 1);
      var += w * w * std::max(sample_var, 0.0) / shots_per_term;
    }
  }
  return {estimate, std::sqrt(var)};
}

std::vector<std::int64_t> sample_bitstrings(const Circuit& c, int shots,
                                            const NoiseConfig* noise,
                                            Rng& rng) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const bool noisy = noise != nullptr && noise->enabled;
  std::vector<std::int64_t> counts(std::int64_t(1) << c.n, 0);
  if (!noisy) {
    StateVector state = run_circuit(c);
    for (int s = 0; s < shots; ++s) ++counts[sample_index(state, rng)];
  } else {
    for (int s = 0; s < shots; ++s) {
      StateVector state = run_circuit(c, noise, rng);
      ++counts[sample_index(state, rng)];
    }
  }
  return counts;
}

}  // namespace ness
