#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "darkbell/schedules.hpp"
#include "darkbell/spectrum.hpp"

namespace darkbell {

/// Settings of the [run] section.
struct RunSettings {
  std::optional<std::string> preset;
  std::optional<std::string> name;
  std::optional<double> t_final;
  int n_max = HilbertSpace::kDefaultNMax;
  double rtol = 1e-10;
  double atol = 1e-12;
  int samples = 500;
  std::optional<FamilyKind> family;
  int sign = 1;
  std::optional<bool> stark;
};

/// Settings of the [sweep] section.
struct SweepSettings {
  std::string axis = "g1c";  // parameter name or "time"
  std::optional<double> from;
  std::optional<double> to;
  int points = 100;
  int levels = 8;
  Sector sector = Sector::Even;
};

/// A parsed configuration file:
///
///   [model]            constant parameter values (omega, delta1, ..., u2)
///   [schedule.<param>] start/end/exponent ramp, value constant, or
///                      link/scale/offset (param = offset + scale * link)
///   [run]              preset, name, t_final, n_max, rtol, atol, samples,
///                      family, sign, stark
///   [sweep]            axis, from, to, points, levels, sector
///
/// Lines starting with '#' or ';' are comments.
struct RunConfig {
  ModelParams model;
  std::map<Param, Trajectory> schedule;
  RunSettings run;
  std::optional<SweepSettings> sweep;

  /// DarkFamily from [run]; stark defaults to whether any u is nonzero.
  std::optional<DarkFamily> family() const;
};

/// Throws Error(Config) with line (syntax) or key (semantic) diagnostics.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig parse_config_file(const std::string& path);

/// Resolves the evolution schedule: a [run] preset, or [model] + [schedule.*]
/// with t_final. Exactly one of the two must be present.
Schedule schedule_from_config(const RunConfig& config);

/// Text form of a schedule that parse_config + schedule_from_config map back
/// to an equivalent schedule. Numbers carry 17 significant digits.
std::string dump_config(const Schedule& schedule, const RunSettings& run);

/// "{:.17g}"
std::string format_number(double value);

}  // namespace darkbell
