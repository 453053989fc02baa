#include "ness/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ness {

namespace {

constexpr double kPi = std::numbers::pi;

void add_eigen_specs(const AnsatzConfig& cfg, AnsatzLayout& layout) {
  if (cfg.eig_type == EigType::Decoupled) {
    // Amplitudes (cos t/2, sin t/2) are non-negative on [0, pi].
    for (int q = 0; q < cfg.n_sites; ++q)
      layout.params.push_back({PeriodClass::Single, true, 0.0, kPi, true});
    return;
  }
  // Entangled blocks: [0, pi/2] keeps every rotation entry dominated by
  // its diagonal, which is sufficient for non-negative amplitudes at
  // d1 = 1 (deeper circuits are checked through the cost, not the box).
  for (int rep = 0; rep < cfg.d1; ++rep) {
    for (int q = 0; q < cfg.n_sites; ++q)
      layout.params.push_back({PeriodClass::Single, true, 0.0, kPi / 2, true});
    for (int q = 0; q + 1 < cfg.n_sites; ++q)
      layout.params.push_back(
          {PeriodClass::Controlled, true, 0.0, kPi / 2, true});
  }
}

void add_basis_specs(const AnsatzConfig& cfg, AnsatzLayout& layout) {
  const int layers = cfg.d2 + 1;
  for (int layer = 0; layer < layers; ++layer)
    for (int q = 0; q < cfg.n_sites; ++q)
      for (int a = 0; a < 2; ++a)
        layout.params.push_back(
            {PeriodClass::Paired, false, 0.0, 2 * kPi, false});
}

}  // namespace

AnsatzLayout resolve_layout(const AnsatzConfig& cfg) {
  if (cfg.n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
  if (cfg.d1 < 0 || cfg.d2 < 0)
    throw std::invalid_argument("repetition counts must be >= 0");
  AnsatzLayout layout;
  add_eigen_specs(cfg, layout);
  layout.r_d = static_cast<int>(layout.params.size());
  add_basis_specs(cfg, layout);
  layout.r_v = static_cast<int>(layout.params.size()) - layout.r_d;
  return layout;
}

ParamVector ParamVector::zeros(const AnsatzLayout& layout) {
  ParamVector p;
  p.values.assign(layout.params.size(), 0.0);
  return p;
}

ParamVector ParamVector::random(const AnsatzLayout& layout, Rng& rng) {
  ParamVector p;
  p.values.reserve(layout.params.size());
  for (const ParamSpec& spec : layout.params) {
    std::uniform_real_distribution<double> unif(spec.lo, spec.hi);
    p.values.push_back(unif(rng));
  }
  return p;
}

void ParamVector::validate(const AnsatzLayout& layout) const {
  if (values.size() != layout.params.size())
    throw std::invalid_argument("parameter count does not match layout");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const ParamSpec& spec = layout.params[i];
    if (spec.restricted &&
        (values[i] < spec.lo - 1e-12 || values[i] > spec.hi + 1e-12))
      throw std::invalid_argument("parameter outside restriction interval");
  }
}

Circuit build_eigen_circuit(const AnsatzConfig& cfg,
                            std::span<const double> theta_d) {
  Circuit c;
  c.n = cfg.n_sites;
  std::size_t k = 0;
  if (cfg.eig_type == EigType::Decoupled) {
    if (theta_d.size() != static_cast<std::size_t>(cfg.n_sites))
      throw std::invalid_argument("theta_d length mismatch");
    for (int q = 0; q < cfg.n_sites; ++q)
      c.append(Gate::ry(q, theta_d[k++]));
    return c;
  }
  const std::size_t expected =
      static_cast<std::size_t>(cfg.d1) * (2 * cfg.n_sites - 1);
  if (theta_d.size() != expected)
    throw std::invalid_argument("theta_d length mismatch");
  for (int rep = 0; rep < cfg.d1; ++rep) {
    for (int q = 0; q < cfg.n_sites; ++q)
      c.append(Gate::ry(q, theta_d[k++]));
    for (int q = 0; q + 1 < cfg.n_sites; ++q)
      c.append(Gate::cry(q, q + 1, theta_d[k++]));
  }
  return c;
}

Circuit build_cnot_ladder(int n) {
  Circuit c;
  c.n = 2 * n;
  for (int q = 0; q < n; ++q) c.append(Gate::cnot(q, q + n));
  return c;
}

Circuit build_basis_circuit(const AnsatzConfig& cfg,
                            std::span<const double> theta_v) {
  const std::size_t expected =
      static_cast<std::size_t>(2 * cfg.n_sites) * (cfg.d2 + 1);
  if (theta_v.size() != expected)
    throw std::invalid_argument("theta_v length mismatch");
  Circuit c;
  c.n = cfg.n_sites;
  std::size_t k = 0;
  for (int q = 0; q < cfg.n_sites; ++q) {
    const double ry = theta_v[k++];
    const double rz = theta_v[k++];
    c.append(Gate::sqg(q, ry, rz));
  }
  for (int layer = 0; layer < cfg.d2; ++layer) {
    for (int q = 0; q + 1 < cfg.n_sites; ++q) c.append(Gate::cz(q, q + 1));
    for (int q = 0; q < cfg.n_sites; ++q) {
      const double ry = theta_v[k++];
      const double rz = theta_v[k++];
      c.append(Gate::sqg(q, ry, rz));
    }
  }
  return c;
}

Circuit conjugate_circuit(const Circuit& c) {
  Circuit out;
  out.n = c.n;
  for (const Gate& g : c.gates) {
    Gate h = g;
    switch (g.kind) {
      case GateKind::RY:
      case GateKind::CRY:
      case GateKind::CNOT:
      case GateKind::CZ:
        break;  // real matrices
      case GateKind::RZ:
      case GateKind::RX:
        h.angles[0] = -g.angles[0];
        break;
      case GateKind::SQG:
        h.angles[1] = -g.angles[1];  // conj(RZ(phi) RY(psi)) = RZ(-phi) RY(psi)
        break;
    }
    out.append(h);
  }
  return out;
}

Circuit shift_circuit(const Circuit& c, int offset, int n_total) {
  Circuit out;
  out.n = n_total;
  for (const Gate& g : c.gates) {
    Gate h = g;
    h.target += offset;
    if (h.control >= 0) h.control += offset;
    out.append(h);
  }
  return out;
}

Circuit build_full_circuit(const AnsatzConfig& cfg, const ParamVector& theta) {
  const AnsatzLayout layout = resolve_layout(cfg);
  theta.validate(layout);
  const int n = cfg.n_sites;
  std::span<const double> all(theta.values);
  std::span<const double> theta_d = all.subspan(0, layout.r_d);
  std::span<const double> theta_v = all.subspan(layout.r_d, layout.r_v);

  Circuit full;
  full.n = 2 * n;
  full.append(shift_circuit(build_eigen_circuit(cfg, theta_d), 0, 2 * n));
  full.append(build_cnot_ladder(n));
  const Circuit v = build_basis_circuit(cfg, theta_v);
  full.append(shift_circuit(v, 0, 2 * n));
  full.append(shift_circuit(conjugate_circuit(v), n, 2 * n));
  return full;
}

}  // namespace ness
