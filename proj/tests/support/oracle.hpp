#pragma once

// Reference constructions used only by tests: a dense Kronecker-product
// Hamiltonian and random parameter draws on the dark-state manifolds.

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "darkbell/model.hpp"

namespace darkbell::testing {

inline Eigen::MatrixXd annihilation(int n_max) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Qubit basis (down, up); lowering operator |down><up|.
inline Eigen::Matrix2d lowering() {
  Eigen::Matrix2d s;
  s << 0, 1, 0, 0;
  return s;
}

inline Eigen::Matrix2d pauli_z() {
  Eigen::Matrix2d z;
  z << -1, 0, 0, 1;
  return z;
}

inline Eigen::MatrixXd kron3(const Eigen::MatrixXd& f, const Eigen::MatrixXd& q1, const Eigen::MatrixXd& q2) {
  return Eigen::kroneckerProduct(f, Eigen::kroneckerProduct(q1, q2).eval()).eval();
}

inline Eigen::MatrixXd oracle_hamiltonian(const ModelParams& p, int n_max) {
  const Eigen::MatrixXd a = annihilation(n_max);
  const Eigen::MatrixXd ad = a.transpose();
  const Eigen::MatrixXd num = ad * a;
  const Eigen::MatrixXd If = Eigen::MatrixXd::Identity(n_max + 1, n_max + 1);
  const Eigen::MatrixXd I2 = Eigen::Matrix2d::Identity();
  const Eigen::MatrixXd s = lowering();
  const Eigen::MatrixXd sd = s.transpose();
  const Eigen::MatrixXd z = pauli_z();

  Eigen::MatrixXd h = p.omega * kron3(num, I2, I2) + p.u1 * kron3(num, z, I2) + p.u2 * kron3(num, I2, z) +
                      p.delta1 * kron3(If, z, I2) + p.delta2 * kron3(If, I2, z);
  h += p.g1r * (kron3(ad, s, I2) + kron3(a, sd, I2));
  h += p.g1c * (kron3(ad, sd, I2) + kron3(a, s, I2));
  h += p.g2r * (kron3(ad, I2, s) + kron3(a, I2, sd));
  h += p.g2c * (kron3(ad, I2, sd) + kron3(a, I2, s));
  return h;
}

// Uniform draw of parameters satisfying a family's conditions.
inline ModelParams draw_on_family(std::mt19937_64& rng, const DarkFamily& f) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  ModelParams p;
  p.omega = uniform(0.5, 2.0);
  const double s = f.sign;
  const double ga = uniform(-1.5, 1.5) * p.omega;
  const double gb = uniform(-1.5, 1.5) * p.omega;
  switch (f.kind) {
    case FamilyKind::EvenBell:
      p.delta1 = uniform(-1.0, 2.0) * p.omega;
      p.delta2 = p.omega - p.delta1;
      p.g1r = ga;
      p.g1c = gb;
      p.g2r = s * ga;
      p.g2c = s * gb;
      break;
    case FamilyKind::OddUpDown:
      p.delta2 = uniform(-1.5, 1.5) * p.omega;
      p.delta1 = p.delta2 + p.omega;
      p.g1c = ga;
      p.g1r = gb;
      p.g2r = s * ga;
      p.g2c = s * gb;
      break;
    case FamilyKind::OddDownUp:
      p.delta1 = uniform(-1.5, 1.5) * p.omega;
      p.delta2 = p.delta1 + p.omega;
      p.g1c = ga;
      p.g1r = gb;
      p.g2r = s * ga;
      p.g2c = s * gb;
      break;
  }
  if (f.stark) {
    p.u1 = uniform(-0.5, 0.5) * p.omega;
    p.u2 = uniform(-0.5, 0.5) * p.omega;
  }
  return p;
}

inline constexpr std::array<FamilyKind, 3> kFamilyKinds = {FamilyKind::EvenBell, FamilyKind::OddUpDown,
                                                           FamilyKind::OddDownUp};

}  // namespace darkbell::testing
