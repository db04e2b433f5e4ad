#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "darkbell/error.hpp"
#include "darkbell/hamiltonian.hpp"
#include "darkbell/schedules.hpp"
#include "oracle.hpp"

using namespace darkbell;
using darkbell::testing::oracle_hamiltonian;

namespace {

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  ModelParams p;
  p.omega = 1.0 + 0.3 * u(rng);
  for (Param q : {Param::Delta1, Param::Delta2, Param::G1r, Param::G1c, Param::G2r, Param::G2c}) p.set(q, u(rng));
  p.u1 = 0.15 * u(rng);
  p.u2 = 0.15 * u(rng);
  return p;
}

constexpr BasisLabel L(int n, Spin a, Spin b) { return {n, a, b}; }
constexpr Spin D = Spin::Down;
constexpr Spin U = Spin::Up;

}  // namespace

TEST(Hamiltonian, MatchesKroneckerOracle) {
  std::mt19937_64 rng(11);
  for (int n_max : {2, 5, 9}) {
    const HilbertSpace space(n_max);
    for (int k = 0; k < 20; ++k) {
      const ModelParams p = random_params(rng);
      const Eigen::MatrixXd diff = build_hamiltonian(p, space).dense() - oracle_hamiltonian(p, n_max);
      EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(Hamiltonian, HermitianAndParityConserving) {
  std::mt19937_64 rng(12);
  const HilbertSpace space(10);
  const OperatorMatrix parity = parity_operator(space);
  for (int k = 0; k < 20; ++k) {
    const OperatorMatrix h = build_hamiltonian(random_params(rng), space);
    EXPECT_EQ(h.hermiticity_defect(), 0.0);
    EXPECT_LT((h * parity - parity * h).max_abs(), 1e-14);
  }
}

TEST(Hamiltonian, CouplingMatrixElements) {
  const HilbertSpace space(6);
  ModelParams p;
  p.g1r = 0.11;
  p.g1c = 0.13;
  p.g2r = 0.17;
  p.g2c = 0.19;
  const OperatorMatrix h = build_hamiltonian(p, space);
  EXPECT_DOUBLE_EQ(h(L(1, D, U), L(0, U, U)), 0.11);
  EXPECT_DOUBLE_EQ(h(L(1, U, D), L(0, U, U)), 0.17);
  EXPECT_DOUBLE_EQ(h(L(1, U, U), L(0, D, U)), 0.13);
  EXPECT_DOUBLE_EQ(h(L(1, U, U), L(0, U, D)), 0.19);
  EXPECT_DOUBLE_EQ(h(L(0, D, D), L(1, U, D)), 0.13);
  EXPECT_DOUBLE_EQ(h(L(3, D, U), L(2, U, U)), 0.11 * std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(h(L(4, U, U), L(3, U, D)), 0.19 * 2.0);
  EXPECT_EQ(h(L(1, D, U), L(0, U, D)), 0.0);
  EXPECT_EQ(h(L(2, U, U), L(0, U, U)), 0.0);
}

TEST(Hamiltonian, StarkDiagonal) {
  const HilbertSpace space(6);
  ModelParams p;
  p.omega = 1.0;
  p.delta1 = 0.3;
  p.delta2 = -0.2;
  p.u1 = 0.4;
  p.u2 = 0.25;
  const OperatorMatrix h = build_hamiltonian(p, space);
  EXPECT_NEAR(h(L(2, U, D), L(2, U, D)), 2.0 * (1.0 + 0.4 - 0.25) + 0.3 + 0.2, 1e-15);
  EXPECT_NEAR(h(L(5, D, D), L(5, D, D)), 5.0 * (1.0 - 0.65) - 0.1, 1e-15);
  EXPECT_NEAR(h(L(0, U, U), L(0, U, U)), 0.1, 1e-15);
}

TEST(Hamiltonian, DecoupledSpectrum) {
  const int n_max = 12;
  const HilbertSpace space(n_max);
  ModelParams p;
  p.omega = 1.0;
  p.delta1 = 0.37;
  p.delta2 = 0.21;
  const Eigen::VectorXd ev =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(build_hamiltonian(p, space).dense()).eigenvalues();
  std::vector<double> expected;
  for (int n = 0; n <= n_max; ++n) {
    for (int a : {-1, 1}) {
      for (int b : {-1, 1}) expected.push_back(n + a * 0.37 + b * 0.21);
    }
  }
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(ev[static_cast<Eigen::Index>(i)], expected[i], 1e-12);
}

TEST(Hamiltonian, LinearInParameters) {
  std::mt19937_64 rng(13);
  const HilbertSpace space(7);
  const HamiltonianGenerators gens(space);
  for (int k = 0; k < 10; ++k) {
    const ModelParams p = random_params(rng);
    const ModelParams q = random_params(rng);
    ModelParams sum;
    for (Param x : kAllParams) sum.set(x, 0.3 * p.get(x) + 0.7 * q.get(x));
    const OperatorMatrix lhs = gens.combine(sum);
    const OperatorMatrix rhs = 0.3 * gens.combine(p) + 0.7 * gens.combine(q);
    EXPECT_LT((lhs - rhs).max_abs(), 1e-14);
  }
}

TEST(Hamiltonian, MatrixFreeApplyMatchesAssembled) {
  std::mt19937_64 rng(14);
  const HilbertSpace space(9);
  const HamiltonianGenerators gens(space);
  const ModelParams p = random_params(rng);
  const Eigen::VectorXcd in = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(space.dim()));
  Eigen::VectorXcd out(in.size());
  gens.apply(p, in, out);
  const Eigen::VectorXcd ref = build_hamiltonian(p, space).dense().cast<Complex>() * in;
  EXPECT_LT((out - ref).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Hamiltonian, RejectsInvalidParams) {
  const HilbertSpace space(4);
  ModelParams p;
  p.omega = 0.0;
  EXPECT_THROW(build_hamiltonian(p, space), Error);
  p.omega = 1.0;
  p.u1 = 0.8;
  p.u2 = 0.3;
  try {
    build_hamiltonian(p, space);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParams);
  }
  p.u2 = std::nan("");
  EXPECT_THROW(build_hamiltonian(p, space), Error);
}

TEST(Hamiltonian, DerivativeMatchesFiniteDifference) {
  const HilbertSpace space(8);
  for (const auto& s : builtin_presets()) {
    for (double frac : {0.2, 0.5, 0.8}) {
      const double t = frac * s.duration();
      const double h = 1e-5 * s.duration();
      const OperatorMatrix fd =
          (1.0 / (2.0 * h)) * (build_hamiltonian(s.params_at(t + h), space) - build_hamiltonian(s.params_at(t - h), space));
      const OperatorMatrix an = build_hamiltonian_derivative(s, t, space);
      EXPECT_LT((fd - an).max_abs(), 1e-7) << s.name() << " t=" << t;
    }
  }
}
