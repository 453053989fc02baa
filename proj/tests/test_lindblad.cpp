#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ness/lindblad.hpp"
#include "ness/oracle.hpp"

using namespace ness;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd flatten(const Eigen::MatrixXcd& m) {
  Eigen::VectorXcd v(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

// Independent superoperator: apply the master equation to every basis
// matrix |i><j| and collect the flattened results as columns.
Eigen::MatrixXcd brute_force_superoperator(const LindbladModel& m) {
  const Eigen::Index dim = Eigen::Index(1) << m.n_sites;
  Eigen::MatrixXcd super(dim * dim, dim * dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(dim, dim);
      basis(i, j) = 1.0;
      super.col(i * dim + j) = flatten(lindblad_apply(m, basis));
    }
  return super;
}

LindbladModel random_model(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 3);
  LindbladModel m;
  m.n_sites = n;
  PauliSum h(n);
  for (int t = 0; t < 4; ++t) {
    std::vector<PauliOp> ops(n);
    for (auto& o : ops) o = static_cast<PauliOp>(pick(rng));
    h.add_term(u(rng), PauliString(std::move(ops)));
  }
  m.hamiltonian = h.simplify();
  for (int k = 0; k < 2; ++k) {
    PauliSum c(n);
    for (int t = 0; t < 2; ++t) {
      std::vector<PauliOp> ops(n);
      for (auto& o : ops) o = static_cast<PauliOp>(pick(rng));
      c.add_term(cplx(u(rng), u(rng)), PauliString(std::move(ops)));
    }
    m.jumps.push_back({c.simplify(), std::abs(u(rng)), "random"});
  }
  return m;
}

}  // namespace

TEST_SUITE("lindblad") {

TEST_CASE("zero model gives a zero generator") {
  LindbladModel m;
  m.n_sites = 1;
  m.hamiltonian = PauliSum::zero(1);
  CHECK(liouvillian_vector(m).size() == 0);
  CHECK(cost_operator(m).size() == 0);
}

TEST_CASE("single damping channel matches the brute-force superoperator") {
  LindbladModel m;
  m.n_sites = 1;
  m.hamiltonian = PauliSum::zero(1);
  m.jumps.push_back({sigma_minus(0, 1), 1.0, "damping"});
  const Eigen::MatrixXcd lhs = to_dense(liouvillian_vector(m));
  const Eigen::MatrixXcd rhs = brute_force_superoperator(m);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pure Hamiltonian generator annihilates the identity") {
  LindbladModel m;
  m.n_sites = 1;
  m.hamiltonian = PauliSum::term(0.7, "X");
  const PauliSum l = liouvillian_vector(m);
  const PauliSum expected =
      (embed_left_right(m.hamiltonian, PauliSum::identity(1)) -
       embed_left_right(PauliSum::identity(1), m.hamiltonian)) *
      cplx(0, -1);
  CHECK((to_dense(l) - to_dense(expected)).cwiseAbs().maxCoeff() < 1e-13);
  const Eigen::VectorXcd vec_id =
      flatten(Eigen::MatrixXcd::Identity(2, 2));
  CHECK((to_dense(l) * vec_id).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("damping cost operator has a zero mode at the steady state") {
  LindbladModel m;
  m.n_sites = 1;
  m.hamiltonian = PauliSum::zero(1);
  m.jumps.push_back({sigma_minus(0, 1), 1.0, "damping"});
  const Eigen::MatrixXcd gram = to_dense(cost_operator(m));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  CHECK(std::abs(es.eigenvalues()(0)) < 1e-12);
  // The kernel vector must be vec(|1><1|) = (0,0,0,1) up to phase.
  const Eigen::VectorXcd k = es.eigenvectors().col(0);
  CHECK(std::abs(std::abs(k(3)) - 1.0) < 1e-10);
}

TEST_CASE("cost operator term count is deterministic") {
  const LindbladModel m = tfim_model(2, 1.0, 1.0, 0.5);
  const PauliSum a = cost_operator(m);
  const PauliSum b = cost_operator(m);
  CHECK(a.size() == b.size());
  CHECK(a.is_hermitian());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(a),
                                                     Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("tfim N=1 drops the pair term") {
  const LindbladModel m = tfim_model(1, 0.8, 1.0, 0.5);
  REQUIRE(m.hamiltonian.size() == 1);
  CHECK(m.hamiltonian.terms()[0].second.label() == "X");
  CHECK(std::abs(m.hamiltonian.terms()[0].first - cplx(0.8, 0)) < 1e-15);
  CHECK(m.jumps.size() == 2);
}

TEST_CASE("tfim N=2 periodic doubles the single bond") {
  const LindbladModel m = tfim_model(2, 0.3, 1.0, 0.5, Boundary::Periodic);
  Eigen::MatrixXcd expected =
      to_dense(PauliSum::term(1.0, "ZZ") + PauliSum::term(0.3, "XI") +
               PauliSum::term(0.3, "IX"));
  CHECK((to_dense(m.hamiltonian) - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("tfim N=3 open has exactly two bonds") {
  const LindbladModel m = tfim_model(3, 0.0, 1.0, 0.5, Boundary::Open);
  CHECK(m.hamiltonian.size() == 2);
}

TEST_CASE("cqed engineered jump at theta=0") {
  const LindbladModel m = cqed_model(2, 1.0, 0.3, 0.5, 0.0, Boundary::Open);
  const PauliSum* c3 = nullptr;
  for (const auto& j : m.jumps)
    if (j.tag.rfind("engineered", 0) == 0) c3 = &j.op;
  REQUIRE(c3 != nullptr);
  const PauliSum expected = sigma_minus(0, 2) + sigma_minus(1, 2);
  CHECK((to_dense(*c3) - to_dense(expected)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("current observable vanishes at theta=pi/4") {
  const Observable i = current_observable(0, kPi / 4, 2, Boundary::Open);
  CHECK(i.op.size() == 0);
}

TEST_CASE("cqed N=2 generator matches the brute-force superoperator") {
  const LindbladModel m = cqed_model(2, 1.0, 0.3, 0.5, kPi / 8);
  const Eigen::MatrixXcd lhs = to_dense(liouvillian_vector(m));
  const Eigen::MatrixXcd rhs = brute_force_superoperator(m);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("current observable at theta=0 is the hopping form") {
  const Observable i = current_observable(0, 0.0, 2, Boundary::Open);
  const PauliSum expected = (PauliSum::term(1.0, "XX") +
                             PauliSum::term(1.0, "YY")) *
                            cplx(-0.5, 0);
  CHECK((to_dense(i.op) - to_dense(expected)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(i.op.is_hermitian());
  CHECK(std::abs(to_dense(i.op).trace()) < 1e-13);
}

TEST_CASE("magnetization observables") {
  const Observable mz = magnetization_observable('z', 1);
  REQUIRE(mz.op.size() == 1);
  CHECK(mz.op.terms()[0].second.label() == "Z");
  CHECK(std::abs(to_dense(mz.op).trace()) < 1e-13);
  // On |1...1> the z magnetization is -1 under sigma^z |0> = +|0>.
  const Observable mz2 = magnetization_observable('z', 2);
  const Eigen::MatrixXcd d = to_dense(mz2.op);
  CHECK(std::abs(d(3, 3) - cplx(-1, 0)) < 1e-13);
}

TEST_CASE("rate-free cost operator is the Gram form of the commutator") {
  std::mt19937_64 rng(41);
  LindbladModel m = random_model(2, rng);
  for (auto& j : m.jumps) j.rate = 0.0;
  const PauliSum k =
      (embed_left_right(m.hamiltonian, PauliSum::identity(2)) -
       embed_left_right(PauliSum::identity(2), m.hamiltonian)) *
      cplx(0, -1);
  const PauliSum expected = compose(adjoint(k), k);
  CHECK((to_dense(cost_operator(m)) - to_dense(expected))
            .cwiseAbs()
            .maxCoeff() < 1e-11);
  // The vectorized maximally mixed state has zero cost.
  const Eigen::Index dim = 4;
  Eigen::VectorXcd mixed = Eigen::VectorXcd::Zero(dim * dim);
  for (Eigen::Index i = 0; i < dim; ++i) mixed(i * dim + i) = 0.5;
  const double cost = (mixed.adjoint() * to_dense(expected) * mixed)(0).real();
  CHECK(std::abs(cost) < 1e-11);
}

TEST_CASE("random models match the brute-force superoperator") {
  std::mt19937_64 rng(43);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const LindbladModel m = random_model(n, rng);
      const Eigen::MatrixXcd lhs = to_dense(liouvillian_vector(m));
      const Eigen::MatrixXcd rhs = brute_force_superoperator(m);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("the generator preserves the trace") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-1, 1);
  const LindbladModel m = random_model(2, rng);
  const Eigen::MatrixXcd super = to_dense(liouvillian_vector(m));
  const Eigen::Index dim = 4;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXcd rho(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) rho(i, j) = cplx(u(rng), u(rng));
    const Eigen::VectorXcd sigma = super * flatten(rho);
    cplx trace = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) trace += sigma(i * dim + i);
    CHECK(std::abs(trace) < 1e-10);
  }
}

TEST_CASE("model validation") {
  LindbladModel m;
  m.n_sites = 1;
  m.hamiltonian = PauliSum::term(cplx(0, 1), "X");  // not Hermitian
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.hamiltonian = PauliSum::term(1.0, "X");
  m.jumps.push_back({sigma_minus(0, 1), -0.5, "bad rate"});
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  CHECK_THROWS_AS((void)tfim_model(0, 1.0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)cqed_model(1, 1.0, 0.3, 0.5, 0.0),
                  std::invalid_argument);
}

}  // TEST_SUITE
