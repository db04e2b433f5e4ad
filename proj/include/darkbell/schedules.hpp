#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "darkbell/model.hpp"

namespace darkbell {

/// value(t) = start + (end - start) * (t/T)^exponent
struct Ramp {
  double start = 0.0;
  double end = 0.0;
  double exponent = 1.0;

  static Ramp constant(double value) { return Ramp{value, value, 1.0}; }
  bool is_constant() const { return start == end; }

  /// s = t/T in [0, 1]; endpoints are returned exactly.
  double value(double s) const;
  /// d value / dt. Throws SingularRate at s = 0 when exponent < 1.
  double rate(double s, double duration) const;

  friend bool operator==(const Ramp&, const Ramp&) = default;
};

/// value = offset + scale * value(source)
struct Link {
  Param source = Param::G1r;
  double scale = 1.0;
  double offset = 0.0;

  friend bool operator==(const Link&, const Link&) = default;
};

using Trajectory = std::variant<Ramp, Link>;

/// Time-dependent model parameters on [0, T], one trajectory per parameter.
class Schedule {
 public:
  /// All parameters constant at `initial`.
  Schedule(std::string name, double duration, const ModelParams& initial);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  double duration() const { return duration_; }
  void set_duration(double duration);

  const Trajectory& trajectory(Param p) const { return traj_[static_cast<std::size_t>(p)]; }
  Schedule& set_ramp(Param p, Ramp ramp);
  Schedule& set_constant(Param p, double value) { return set_ramp(p, Ramp::constant(value)); }
  /// Throws Config on self-links or cycles.
  Schedule& set_link(Param p, Link link);

  const std::optional<DarkFamily>& family() const { return family_; }
  Schedule& set_family(std::optional<DarkFamily> family);
  /// The Bell state the attached family reaches, if any.
  std::optional<BellLabel> target() const;

  /// Throws OutOfRange unless 0 <= t <= T.
  ModelParams params_at(double t) const;
  ParamRates rates_at(double t) const;

  /// Checks the parameter invariants and the attached family's conditions on
  /// `points` evenly spaced times; returns the largest condition residual.
  /// Throws InvalidParams / ConditionsViolated on failure.
  double validate(int points = 1000, double tol = 1e-10) const;

  /// Schedule with every ramp frozen at its value at time t.
  Schedule frozen_at(double t, double duration) const;

 private:
  double evaluate(Param p, double s, int depth) const;
  double evaluate_rate(Param p, double s, int depth) const;

  std::string name_;
  double duration_;
  std::array<Trajectory, kNumParams> traj_;
  std::optional<DarkFamily> family_;
};

/// Opposite-sign variant: negates the qubit-2 couplings g2r and g2c (and
/// compensates any link reading from them), flips the family sign, and so
/// targets the "+" Bell state.
Schedule flip_sign(const Schedule& schedule);

/// The four published protocols:
///   linear49    T = 49,  even family, linear ramps
///   nonlinear34 T = 34,  even family, cube-root ramps
///   stark98     T = 9.8, even Stark family, linear ramps
///   starkodd9   T = 9,   odd (up-down) Stark family, linear ramps
std::vector<Schedule> builtin_presets();

/// Looks up a preset by name; a "-flip" suffix returns flip_sign(preset).
std::optional<Schedule> find_preset(const std::string& name);

}  // namespace darkbell
