#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "darkbell/darkstate.hpp"
#include "darkbell/schedules.hpp"

namespace darkbell {

/// Lowest eigenpairs of H restricted to a parity sector.
struct SectorEigen {
  Sector sector = Sector::Full;
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // full-space columns, normalized, largest entry positive
  Eigen::VectorXd top_shell_weight;

  int size() const { return static_cast<int>(values.size()); }
  StateVector state(const HilbertSpace& space, int k) const;
};

inline constexpr double kTruncationWeight = 1e-6;

/// Throws EigensolverFailure on non-convergence and InvalidParams when
/// n_levels exceeds the sector dimension. n_levels <= 0 keeps all.
SectorEigen diagonalize_sector(const ModelParams& params, Sector sector, const HilbertSpace& space,
                               int n_levels = -1);

/// Sweep along one named parameter. After setting the axis parameter, each
/// link assigns target = offset + scale * current(source), in order.
struct ParamAxis {
  Param param = Param::G1c;
  std::vector<std::pair<Param, Link>> links;
};

/// Sweep along the time of a schedule; axis values are times.
struct ScheduleAxis {
  Schedule schedule;
};

struct SweepSpec {
  ModelParams base;
  std::variant<ParamAxis, ScheduleAxis> axis;
  std::vector<double> points;  // strictly monotone
  Sector sector = Sector::Even;
  int n_levels = 8;
  /// Energy whose nearest level starts the overlap tracker.
  double track_energy = 1.0;

  /// Parameters at the i-th sweep point.
  ModelParams params_at(std::size_t i) const;
  void validate(const HilbertSpace& space) const;
};

struct SpectrumResult {
  std::vector<double> axis;
  Eigen::MatrixXd eigenvalues;  // points x n_levels
  std::vector<int> tracked_level;
  std::vector<double> tracked_energy;
  std::vector<double> dark_residual;       // min_k |E_k - omega|
  std::vector<std::vector<bool>> contaminated;  // per point, per level

  bool truncation_flag(std::size_t i) const;
};

/// Diagonalizes every point (in parallel) then follows one level by
/// maximal overlap with the previous point's tracked vector. Errors carry the
/// failing point index.
SpectrumResult sweep(const SweepSpec& spec, const HilbertSpace& space);

/// Uniform grid of n points on [from, to].
std::vector<double> linspace(double from, double to, int n);

struct LevelGap {
  double gap = 0.0;
  int level_index = -1;  // nearest level other than the dark one
  int dark_index = -1;
  double dark_overlap = 0.0;
};

inline constexpr double kDarkOverlapThreshold = 0.999;
inline constexpr double kDegeneracyTolerance = 1e-10;

/// Distance from reference_energy to the nearest level other than the dark
/// level of `family` in its sector. The dark level is identified by overlap
/// > 0.999 with the analytic state; inside a degenerate block the block
/// projection counts and the other block members remain candidates.
/// Throws NoDarkLevel if nothing overlaps.
LevelGap nearest_level_gap(const ModelParams& params, const DarkFamily& family,
                           const HilbertSpace& space, double reference_energy);

}  // namespace darkbell
