#include "ness/lindblad.hpp"

#include <cmath>
#include <stdexcept>

namespace ness {

void LindbladModel::validate() const {
  if (n_sites < 1) throw std::invalid_argument("model needs at least 1 site");
  if (hamiltonian.n() != n_sites)
    throw std::invalid_argument("hamiltonian size mismatch");
  if (!hamiltonian.is_hermitian())
    throw std::invalid_argument("hamiltonian must be Hermitian");
  for (const auto& j : jumps) {
    if (j.op.n() != n_sites)
      throw std::invalid_argument("jump operator size mismatch");
    if (j.rate < 0.0) throw std::invalid_argument("negative dissipation rate");
  }
}

PauliSum sigma_single(PauliOp op, int site, int n) {
  if (site < 0 || site >= n) throw std::invalid_argument("site out of range");
  PauliString str = PauliString::identity(n);
  str.labels[site] = op;
  PauliSum s(n);
  s.add_term(1.0, std::move(str));
  return s;
}

PauliSum sigma_minus(int site, int n) {
  // (X - iY)/2: maps |0> to |1> under sigma^z |0> = +|0>.
  PauliSum s(n);
  PauliString x = PauliString::identity(n);
  x.labels[site] = PauliOp::X;
  PauliString y = PauliString::identity(n);
  y.labels[site] = PauliOp::Y;
  s.add_term(cplx(0.5, 0.0), std::move(x));
  s.add_term(cplx(0.0, -0.5), std::move(y));
  return s;
}

PauliSum sigma_plus(int site, int n) {
  PauliSum s(n);
  PauliString x = PauliString::identity(n);
  x.labels[site] = PauliOp::X;
  PauliString y = PauliString::identity(n);
  y.labels[site] = PauliOp::Y;
  s.add_term(cplx(0.5, 0.0), std::move(x));
  s.add_term(cplx(0.0, 0.5), std::move(y));
  return s;
}

PauliSum liouvillian_vector(const LindbladModel& m) {
  m.validate();
  const int n = m.n_sites;
  const PauliSum id = PauliSum::identity(n);
  PauliSum out =
      (embed_left_right(m.hamiltonian, id) -
       embed_left_right(id, m.hamiltonian)) *
      cplx(0.0, -1.0);
  for (const auto& jump : m.jumps) {
    if (jump.rate == 0.0) continue;
    const PauliSum cdc = compose(adjoint(jump.op), jump.op);
    PauliSum diss = embed_left_right(jump.op, adjoint(jump.op)) -
                    (embed_left_right(cdc, id) + embed_left_right(id, cdc)) *
                        cplx(0.5, 0.0);
    out = out + diss * cplx(jump.rate / 2.0, 0.0);
  }
  return out.simplify();
}

PauliSum cost_operator(const LindbladModel& m) {
  PauliSum liouv = liouvillian_vector(m);
  return compose(adjoint(liouv), liouv);
}

LindbladModel tfim_model(int n, double g, double gamma1, double gamma2,
                         Boundary boundary) {
  if (n < 1) throw std::invalid_argument("tfim_model: n must be >= 1");
  LindbladModel m;
  m.n_sites = n;
  PauliSum h(n);
  // Periodic N=2 counts the bond twice; simplify() merges it to weight 1.
  const int bonds = n < 2 ? 0 : (boundary == Boundary::Periodic ? n : n - 1);
  for (int b = 0; b < bonds; ++b) {
    PauliString zz = PauliString::identity(n);
    zz.labels[b] = PauliOp::Z;
    zz.labels[(b + 1) % n] = PauliOp::Z;
    h.add_term(0.5, std::move(zz));
  }
  for (int i = 0; i < n; ++i) {
    PauliString x = PauliString::identity(n);
    x.labels[i] = PauliOp::X;
    h.add_term(g, std::move(x));
  }
  m.hamiltonian = h.simplify();
  for (int i = 0; i < n; ++i)
    m.jumps.push_back({sigma_minus(i, n), gamma1,
                       "damping_" + std::to_string(i)});
  for (int i = 0; i < n; ++i)
    m.jumps.push_back({sigma_single(PauliOp::Z, i, n), gamma2,
                       "dephasing_" + std::to_string(i)});
  m.validate();
  return m;
}

LindbladModel cqed_model(int n, double mu, double gamma1, double gamma2,
                         double theta, Boundary boundary, double gamma3) {
  if (n < 2) throw std::invalid_argument("cqed_model: n must be >= 2");
  LindbladModel m;
  m.n_sites = n;
  PauliSum h(n);
  for (int i = 0; i < n; ++i)
    h = h + compose(sigma_plus(i, n), sigma_minus(i, n)) * cplx(mu, 0.0);
  m.hamiltonian = h.simplify();
  for (int i = 0; i < n; ++i)
    m.jumps.push_back({sigma_minus(i, n), gamma1,
                       "damping_" + std::to_string(i)});
  for (int i = 0; i < n; ++i)
    m.jumps.push_back({sigma_single(PauliOp::Z, i, n), gamma2,
                       "dephasing_" + std::to_string(i)});
  const double a = std::cos(theta);  // alpha = gamma* (real here)
  const double d = std::sin(theta);  // delta = beta* (real here)
  const int pairs = (boundary == Boundary::Periodic) ? n : n - 1;
  for (int i = 0; i < pairs; ++i) {
    const int j = (i + 1) % n;
    PauliSum c3 = sigma_minus(i, n) * cplx(a, 0.0) +
                  sigma_plus(i, n) * cplx(d, 0.0) +
                  sigma_minus(j, n) * cplx(a, 0.0) +
                  sigma_plus(j, n) * cplx(d, 0.0);
    m.jumps.push_back({c3.simplify(), gamma3,
                       "engineered_" + std::to_string(i)});
  }
  m.validate();
  return m;
}

Observable current_observable(int i, double theta, int n, Boundary boundary) {
  const int j = (boundary == Boundary::Periodic) ? (i + 1) % n : i + 1;
  if (i < 0 || i >= n || j >= n)
    throw std::invalid_argument("current_observable: invalid site index");
  const double eta =
      std::cos(theta) * std::cos(theta) - std::sin(theta) * std::sin(theta);
  PauliSum hop = compose(sigma_plus(i, n), sigma_minus(j, n)) * cplx(-eta, 0.0);
  PauliSum obs = (hop + adjoint(hop)).simplify();
  return {obs, "current_" + std::to_string(i)};
}

Observable magnetization_observable(char axis, int n) {
  PauliOp op;
  switch (axis) {
    case 'x': op = PauliOp::X; break;
    case 'y': op = PauliOp::Y; break;
    case 'z': op = PauliOp::Z; break;
    default:
      throw std::invalid_argument("magnetization axis must be x, y or z");
  }
  PauliSum s(n);
  for (int i = 0; i < n; ++i) {
    PauliString str = PauliString::identity(n);
    str.labels[i] = op;
    s.add_term(1.0 / n, std::move(str));
  }
  return {s.simplify(), std::string("m") + axis};
}

}  // namespace ness
