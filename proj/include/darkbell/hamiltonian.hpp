#pragma once

#include <array>

#include "darkbell/model.hpp"
#include "darkbell/operator_matrix.hpp"

namespace darkbell {

class Schedule;

/// dH/dp for each model parameter on a fixed space.
///
/// H is linear in all nine parameters,
///   H = (omega + u1 s1z + u2 s2z) a^dag a + sum_j delta_j s_jz
///       + sum_j [g_jr (a^dag s_j + a s_j^dag) + g_jc (a^dag s_j^dag + a s_j)],
/// with s_j = |down><up| the lowering operator of qubit j. Matrix elements that
/// would reach n > n_max are dropped.
class HamiltonianGenerators {
 public:
  explicit HamiltonianGenerators(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const OperatorMatrix& generator(Param p) const { return generators_[static_cast<std::size_t>(p)]; }

  /// sum_p coefficients.get(p) * dH/dp
  OperatorMatrix combine(const ModelParams& coefficients) const;

  /// out = H(params) * in without assembling H.
  void apply(const ModelParams& params, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;

 private:
  HilbertSpace space_;
  std::array<OperatorMatrix, kNumParams> generators_;
  // Diagonal parts (omega, delta_j, u_j generators) as dense vectors.
  std::array<Eigen::VectorXd, kNumParams> diagonals_;
};

/// Throws InvalidParams if params violate their invariants.
OperatorMatrix build_hamiltonian(const ModelParams& params, const HilbertSpace& space);

/// sum_p (dp/dt)(t) * dH/dp along a schedule. Throws OutOfRange outside [0, T]
/// and SingularRate where a ramp's derivative is unbounded.
OperatorMatrix build_hamiltonian_derivative(const Schedule& schedule, double t,
                                            const HilbertSpace& space);

}  // namespace darkbell
