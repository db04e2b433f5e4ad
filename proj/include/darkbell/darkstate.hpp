#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "darkbell/hamiltonian.hpp"

namespace darkbell {

enum class ConditionUnit { Omega, Dimensionless };

struct ConditionResidual {
  std::string name;  // e.g. "delta1 + delta2 = omega"
  double residual = 0.0;
  ConditionUnit unit = ConditionUnit::Omega;
};

struct ConditionReport {
  DarkFamily family;
  std::vector<ConditionResidual> conditions;

  double max_residual() const;
  bool satisfied(double tol) const { return max_residual() <= tol; }
  /// Names of the conditions above tol.
  std::vector<std::string> violated(double tol) const;
};

/// Residual of each existence condition of a family. Ratio conditions are
/// reported as |g_a - sign*g_b| / max(|g_a|, |g_b|) (0 when both vanish);
/// frequency conditions in units of omega. Non-Stark families also require
/// u1 = u2 = 0.
ConditionReport check_conditions(const ModelParams& params, const DarkFamily& family);

inline constexpr double kConditionTolerance = 1e-10;

/// Unnormalized amplitudes of a family's dark state on its four labels, in
/// the order (vacuum label, photon pair a, photon pair b). No condition check.
std::array<double, 3> dark_amplitudes(const ModelParams& params, const DarkFamily& family);

struct DarkStateResult {
  StateVector state;
  double energy = 0.0;
  double conditions_residual = 0.0;
};

/// Normalized analytic dark state. Throws ConditionsViolated when
/// check_conditions fails at kConditionTolerance and ZeroState when all
/// amplitudes vanish.
DarkStateResult construct_dark_state(const ModelParams& params, const DarkFamily& family,
                                     const HilbertSpace& space);

/// Fixes the global phase of a state supported on one photon or less: the
/// largest zero-photon amplitude becomes real positive; if the zero-photon
/// part vanishes, |1 down up> (or else |1 down down>) is made real positive.
void fix_dark_phase(StateVector& state);

using BoundaryMatrix = Eigen::Matrix<double, 6, 4>;

/// The 6x4 one-photon eigen-equation matrix acting on (c1, c2, c3, c4).
/// Even basis: (|0uu>, |0dd>, |1ud>, |1du>); odd: (|0ud>, |0du>, |1uu>, |1dd>).
/// Rows 5-6 are the two-photon cancellation rows. Stark terms are included.
BoundaryMatrix boundary_matrix(const ModelParams& params, Sector parity, double energy);
inline BoundaryMatrix boundary_matrix(const ModelParams& params, Sector parity) {
  return boundary_matrix(params, parity, params.omega);
}

/// Basis labels of (c1, c2, c3, c4) for a parity.
std::array<BasisLabel, 4> boundary_basis(Sector parity);

inline constexpr double kRankThreshold = 1e-8;

struct NullspaceResult {
  int rank = 0;
  Eigen::Matrix<double, 4, 1> singular_values;
  /// Set when the nullspace is exactly one-dimensional; phase-fixed.
  std::optional<StateVector> state;
};

/// Numeric nullspace of the boundary matrix via SVD; rank counts singular
/// values above kRankThreshold * (largest).
NullspaceResult boundary_nullspace(const ModelParams& params, Sector parity,
                                   const HilbertSpace& space);

/// ||(H - omega) state||_2
double verify_dark_eigenstate(const StateVector& state, const ModelParams& params,
                              const HilbertSpace& space);

}  // namespace darkbell
