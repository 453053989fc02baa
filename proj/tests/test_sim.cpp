#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ness/sim.hpp"

using namespace ness;

namespace {

constexpr double kPi = std::numbers::pi;

Circuit random_circuit(int n, int gates, Rng& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 5);
  Circuit c;
  c.n = n;
  for (int i = 0; i < gates; ++i) {
    const int q = qubit(rng);
    switch (kind(rng)) {
      case 0: c.append(Gate::rx(q, angle(rng))); break;
      case 1: c.append(Gate::ry(q, angle(rng))); break;
      case 2: c.append(Gate::rz(q, angle(rng))); break;
      case 3: c.append(Gate::sqg(q, angle(rng), angle(rng))); break;
      case 4: {
        int t = qubit(rng);
        if (t == q) t = (q + 1) % n;
        c.append(Gate::cnot(q, t));
        break;
      }
      default: {
        int t = qubit(rng);
        if (t == q) t = (q + 1) % n;
        c.append(Gate::cz(q, t));
        break;
      }
    }
  }
  return c;
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("empty circuit prepares the all-zero state") {
  Circuit c;
  c.n = 2;
  const StateVector s = run_circuit(c);
  CHECK(std::abs(s.amplitudes()[0] - cplx(1, 0)) < 1e-15);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(s.amplitudes()[i]) < 1e-15);
}

TEST_CASE("RY(pi) flips a qubit up to sign") {
  Circuit c;
  c.n = 1;
  c.append(Gate::ry(0, kPi));
  const StateVector s = run_circuit(c);
  CHECK(std::abs(s.amplitudes()[0]) < 1e-14);
  CHECK(std::abs(std::abs(s.amplitudes()[1]) - 1.0) < 1e-14);
}

TEST_CASE("RY(pi/2) then CNOT gives the Bell-like state") {
  Circuit c;
  c.n = 2;
  c.append(Gate::ry(0, kPi / 2));
  c.append(Gate::cnot(0, 1));
  const StateVector s = run_circuit(c);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.amplitudes()[0] - cplx(r, 0)) < 1e-14);
  CHECK(std::abs(s.amplitudes()[3] - cplx(r, 0)) < 1e-14);
  CHECK(std::abs(s.amplitudes()[1]) < 1e-14);
  CHECK(std::abs(s.amplitudes()[2]) < 1e-14);
}

TEST_CASE("gate matrices are unitary") {
  const std::vector<Gate> gates = {
      Gate::rx(0, 0.7),  Gate::ry(0, -1.3),    Gate::rz(0, 2.1),
      Gate::cnot(0, 1),  Gate::cz(0, 1),       Gate::cry(0, 1, 0.9),
      Gate::sqg(0, 0.4, -0.6)};
  for (const Gate& g : gates) {
    const Eigen::MatrixXcd u = gate_matrix(g);
    const Eigen::MatrixXcd id =
        Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    CHECK((u.adjoint() * u - id).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("exact expectations") {
  Circuit c;
  c.n = 1;
  const StateVector zero = run_circuit(c);
  CHECK(expectation_exact(zero, PauliSum::term(1.0, "Z")) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expectation_exact(zero, PauliSum::term(1.0, "X")) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      (void)expectation_exact(zero, PauliSum::term(cplx(0, 1), "X")),
      std::invalid_argument);
}

TEST_CASE("exact expectation matches the dense quadratic form") {
  Rng rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  const Circuit c = random_circuit(2, 12, rng);
  const StateVector s = run_circuit(c);
  PauliSum o = PauliSum::term(u(rng), "XZ") + PauliSum::term(u(rng), "YY") +
               PauliSum::term(u(rng), "IZ") + PauliSum::term(u(rng), "XI");
  Eigen::VectorXcd psi(4);
  for (int i = 0; i < 4; ++i) psi(i) = s.amplitudes()[i];
  const double dense = (psi.adjoint() * to_dense(o) * psi)(0).real();
  CHECK(expectation_exact(s, o) == doctest::Approx(dense).epsilon(1e-10));
}

TEST_CASE("sampled identity terms are exact with zero variance") {
  Circuit c;
  c.n = 1;
  c.append(Gate::ry(0, 0.3));
  Rng rng(5);
  const PauliSum id = PauliSum::identity(1, 0.75);
  auto [est, err] = expectation_sampled(c, id, 10, nullptr, rng);
  CHECK(est == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(err == 0.0);
}

TEST_CASE("sampled <Z> on |0> is deterministic") {
  Circuit c;
  c.n = 1;
  Rng rng(7);
  auto [est, err] = expectation_sampled(c, PauliSum::term(1.0, "Z"), 25,
                                        nullptr, rng);
  CHECK(est == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(err == 0.0);
}

TEST_CASE("sampled estimates calibrate against exact values") {
  // Noiseless sampled estimates should sit within 5 standard errors of the
  // exact value in at least 99% of seeds.
  Rng setup(9);
  const Circuit c = random_circuit(2, 10, setup);
  const PauliSum o = PauliSum::term(0.8, "XZ") + PauliSum::term(-0.4, "ZY") +
                     PauliSum::term(0.3, "IZ");
  const StateVector s = run_circuit(c);
  const double exact = expectation_exact(s, o);
  int hits = 0;
  const int trials = 200;
  for (int seed = 0; seed < trials; ++seed) {
    Rng rng(split_seed(1234, 0xca1, seed));
    auto [est, err] = expectation_sampled(c, o, 200, nullptr, rng);
    if (std::abs(est - exact) <= 5.0 * std::max(err, 1e-12)) ++hits;
  }
  CHECK(hits >= trials * 99 / 100);
}

TEST_CASE("bitstring sampling") {
  Circuit c;
  c.n = 1;
  Rng rng(11);
  auto counts = sample_bitstrings(c, 100, nullptr, rng);
  CHECK(counts[0] == 100);
  CHECK(counts[1] == 0);

  Circuit h;
  h.n = 1;
  h.append(Gate::ry(0, kPi / 2));
  Rng rng2(13);
  counts = sample_bitstrings(h, 10000, nullptr, rng2);
  // Binomial(1e4, 0.5): 5 sigma is 250.
  CHECK(std::abs(double(counts[0]) - 5000.0) < 250.0);
}

TEST_CASE("sampling frequencies follow half-angle amplitudes") {
  const double theta = 0.9;
  Circuit c;
  c.n = 1;
  c.append(Gate::ry(0, theta));
  Rng rng(17);
  const int shots = 20000;
  auto counts = sample_bitstrings(c, shots, nullptr, rng);
  const double p0 = std::cos(theta / 2) * std::cos(theta / 2);
  CHECK(std::abs(double(counts[0]) / shots - p0) < 0.02);
}

TEST_CASE("norm is preserved by every gate") {
  Rng rng(19);
  StateVector s(3);
  const Circuit c = random_circuit(3, 40, rng);
  for (const Gate& g : c.gates) {
    s.apply_gate(g);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("noisy trajectories preserve the trace exactly") {
  Rng rng(23);
  NoiseConfig noise{0.3, 0.3, true};
  const Circuit c = random_circuit(2, 10, rng);
  for (int t = 0; t < 20; ++t) {
    const StateVector s = run_circuit(c, &noise, rng);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("single-qubit depolarizing channel mean") {
  // One RY gate with insertion probability p: the trajectory-averaged state
  // is (1 - 4p/3) rho + (4p/3) I/2.
  const double p = 0.3;
  const double q = 4.0 * p / 3.0;
  Circuit c;
  c.n = 1;
  c.append(Gate::ry(0, 0.8));
  NoiseConfig noise{p, 0.0, true};
  Rng rng(29);
  const int trajectories = 40000;
  Eigen::Matrix2cd avg = Eigen::Matrix2cd::Zero();
  for (int t = 0; t < trajectories; ++t) {
    const StateVector s = run_circuit(c, &noise, rng);
    Eigen::Vector2cd psi;
    psi << s.amplitudes()[0], s.amplitudes()[1];
    avg += psi * psi.adjoint();
  }
  avg /= double(trajectories);
  const StateVector ideal = run_circuit(c);
  Eigen::Vector2cd psi0;
  psi0 << ideal.amplitudes()[0], ideal.amplitudes()[1];
  const Eigen::Matrix2cd expected =
      (1.0 - q) * (psi0 * psi0.adjoint()) +
      q * 0.5 * Eigen::Matrix2cd::Identity();
  CHECK((avg - expected).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("two-qubit depolarizing channel mean") {
  // One CNOT on a product state: mean is (1 - 16p/15) rho + (16p/15) I/4.
  const double p = 0.3;
  const double q = 16.0 * p / 15.0;
  Circuit c;
  c.n = 2;
  c.append(Gate::ry(0, 0.7));
  c.append(Gate::cnot(0, 1));
  NoiseConfig noise{0.0, p, true};
  Rng rng(31);
  const int trajectories = 40000;
  Eigen::Matrix4cd avg = Eigen::Matrix4cd::Zero();
  for (int t = 0; t < trajectories; ++t) {
    const StateVector s = run_circuit(c, &noise, rng);
    Eigen::Vector4cd psi;
    for (int i = 0; i < 4; ++i) psi(i) = s.amplitudes()[i];
    avg += psi * psi.adjoint();
  }
  avg /= double(trajectories);
  const StateVector ideal = run_circuit(c);
  Eigen::Vector4cd psi0;
  for (int i = 0; i < 4; ++i) psi0(i) = ideal.amplitudes()[i];
  const Eigen::Matrix4cd expected =
      (1.0 - q) * (psi0 * psi0.adjoint()) +
      q * 0.25 * Eigen::Matrix4cd::Identity();
  CHECK((avg - expected).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("identical seeds reproduce trajectories and estimates") {
  Rng setup(37);
  const Circuit c = random_circuit(2, 8, setup);
  NoiseConfig noise{0.05, 0.1, true};
  Rng a(999), b(999);
  const StateVector sa = run_circuit(c, &noise, a);
  const StateVector sb = run_circuit(c, &noise, b);
  for (int i = 0; i < 4; ++i)
    CHECK(sa.amplitudes()[i] == sb.amplitudes()[i]);
  const PauliSum o = PauliSum::term(0.6, "ZX") + PauliSum::term(0.2, "XI");
  Rng ra(555), rb(555);
  auto ea = expectation_sampled(c, o, 100, &noise, ra);
  auto eb = expectation_sampled(c, o, 100, &noise, rb);
  CHECK(ea.first == eb.first);
  CHECK(ea.second == eb.second);
}

TEST_CASE("split_seed separates streams") {
  CHECK(split_seed(1, 2, 3) != split_seed(1, 2, 4));
  CHECK(split_seed(1, 2, 3) != split_seed(1, 3, 3));
  CHECK(split_seed(1, 2, 3) == split_seed(1, 2, 3));
}

TEST_CASE("circuit validation rejects bad indices") {
  Circuit c;
  c.n = 2;
  CHECK_THROWS_AS(c.append(Gate::ry(2, 0.1)), std::invalid_argument);
  CHECK_THROWS_AS(c.append(Gate::cnot(1, 1)), std::invalid_argument);
  Circuit d;
  d.n = 2;
  d.gates.push_back(Gate::cnot(1, 1));  // bypasses the appending check
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

}  // TEST_SUITE
