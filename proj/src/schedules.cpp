#include "darkbell/schedules.hpp"

#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "darkbell/darkstate.hpp"
#include "darkbell/error.hpp"

namespace darkbell {

namespace {

constexpr int kMaxLinkDepth = static_cast<int>(kNumParams);

}  // namespace

double Ramp::value(double s) const {
  if (s <= 0.0) return start;
  if (s >= 1.0) return end;
  if (start == end) return start;
  const double w = exponent == 1.0 ? s : std::pow(s, exponent);
  return start + (end - start) * w;
}

double Ramp::rate(double s, double duration) const {
  if (start == end) return 0.0;
  const double span = (end - start) / duration;
  if (exponent == 1.0) return span;
  if (s <= 0.0) {
    if (exponent < 1.0) {
      throw Error(ErrorKind::SingularRate,
                  fmt::format("ramp with exponent {} has an unbounded rate at t = 0", exponent));
    }
    return 0.0;
  }
  return span * exponent * std::pow(s, exponent - 1.0);
}

Schedule::Schedule(std::string name, double duration, const ModelParams& initial)
    : name_(std::move(name)), duration_(duration) {
  set_duration(duration);
  for (Param p : kAllParams) traj_[static_cast<std::size_t>(p)] = Ramp::constant(initial.get(p));
}

void Schedule::set_duration(double duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorKind::InvalidParams, fmt::format("schedule duration must be positive, got {}", duration));
  }
  duration_ = duration;
}

Schedule& Schedule::set_ramp(Param p, Ramp ramp) {
  if (!(ramp.exponent > 0.0)) {
    throw Error(ErrorKind::InvalidParams,
                fmt::format("ramp exponent for {} must be positive, got {}", to_string(p), ramp.exponent));
  }
  traj_[static_cast<std::size_t>(p)] = ramp;
  return *this;
}

Schedule& Schedule::set_link(Param p, Link link) {
  if (link.source == p) {
    throw Error(ErrorKind::Config, fmt::format("{} cannot link to itself", to_string(p)));
  }
  const Trajectory previous = traj_[static_cast<std::size_t>(p)];
  traj_[static_cast<std::size_t>(p)] = link;
  try {
    (void)evaluate(p, 0.0, 0);
  } catch (const Error&) {
    traj_[static_cast<std::size_t>(p)] = previous;
    throw;
  }
  return *this;
}

Schedule& Schedule::set_family(std::optional<DarkFamily> family) {
  family_ = family;
  return *this;
}

std::optional<BellLabel> Schedule::target() const {
  if (!family_) return std::nullopt;
  return target_bell(*family_);
}

double Schedule::evaluate(Param p, double s, int depth) const {
  if (depth > kMaxLinkDepth) {
    throw Error(ErrorKind::Config, fmt::format("cyclic parameter links through {}", to_string(p)));
  }
  const Trajectory& tr = traj_[static_cast<std::size_t>(p)];
  if (const auto* ramp = std::get_if<Ramp>(&tr)) return ramp->value(s);
  const auto& link = std::get<Link>(tr);
  return link.offset + link.scale * evaluate(link.source, s, depth + 1);
}

double Schedule::evaluate_rate(Param p, double s, int depth) const {
  if (depth > kMaxLinkDepth) {
    throw Error(ErrorKind::Config, fmt::format("cyclic parameter links through {}", to_string(p)));
  }
  const Trajectory& tr = traj_[static_cast<std::size_t>(p)];
  if (const auto* ramp = std::get_if<Ramp>(&tr)) return ramp->rate(s, duration_);
  const auto& link = std::get<Link>(tr);
  return link.scale * evaluate_rate(link.source, s, depth + 1);
}

namespace {

double normalized_time(double t, double duration) {
  if (!(t >= 0.0) || t > duration * (1.0 + 1e-12)) {
    throw Error(ErrorKind::OutOfRange, fmt::format("time {} outside [0, {}]", t, duration));
  }
  return t >= duration ? 1.0 : t / duration;
}

}  // namespace

ModelParams Schedule::params_at(double t) const {
  const double s = normalized_time(t, duration_);
  ModelParams out;
  for (Param p : kAllParams) out.set(p, evaluate(p, s, 0));
  return out;
}

ParamRates Schedule::rates_at(double t) const {
  const double s = normalized_time(t, duration_);
  ParamRates out;
  for (Param p : kAllParams) out.set(p, evaluate_rate(p, s, 0));
  return out;
}

double Schedule::validate(int points, double tol) const {
  if (points < 2) points = 2;
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = duration_ * i / (points - 1);
    const ModelParams p = params_at(t);
    p.validate();
    if (!family_) continue;
    const ConditionReport report = check_conditions(p, *family_);
    worst = std::max(worst, report.max_residual());
    if (!report.satisfied(tol)) {
      const auto bad = report.violated(tol);
      throw Error(ErrorKind::ConditionsViolated,
                  fmt::format("schedule '{}' breaks '{}' at t = {} (residual {:.3e})", name_,
                              bad.empty() ? "?" : bad.front(), t, report.max_residual()));
    }
  }
  return worst;
}

Schedule Schedule::frozen_at(double t, double duration) const {
  Schedule out(name_ + "-frozen", duration, params_at(t));
  out.set_family(family_);
  return out;
}

Schedule flip_sign(const Schedule& schedule) {
  Schedule out = schedule;
  auto reads_qubit2 = [](Param p) { return p == Param::G2r || p == Param::G2c; };
  for (Param p : kAllParams) {
    const Trajectory& tr = schedule.trajectory(p);
    if (reads_qubit2(p)) {
      if (const auto* ramp = std::get_if<Ramp>(&tr)) {
        out.set_ramp(p, Ramp{-ramp->start, -ramp->end, ramp->exponent});
      } else {
        Link link = std::get<Link>(tr);
        // A qubit-2 coupling reading another qubit-2 coupling keeps its scale.
        if (!reads_qubit2(link.source)) link.scale = -link.scale;
        link.offset = -link.offset;
        out.set_link(p, link);
      }
    } else if (const auto* link = std::get_if<Link>(&tr); link && reads_qubit2(link->source)) {
      out.set_link(p, Link{link->source, -link->scale, link->offset});
    }
  }
  if (auto fam = schedule.family()) {
    fam->sign = -fam->sign;
    out.set_family(fam);
  }
  out.set_name(schedule.name() + "-flip");
  return out;
}

std::vector<Schedule> builtin_presets() {
  std::vector<Schedule> out;
  ModelParams base;  // omega = 1

  {
    Schedule s("linear49", 49.0, base);
    s.set_ramp(Param::Delta1, {1.0, 0.5, 1.0})
        .set_ramp(Param::Delta2, {0.0, 0.5, 1.0})
        .set_ramp(Param::G1c, {0.0, 0.539, 1.0})
        .set_link(Param::G2c, {Param::G1c, 1.0, 0.0})
        .set_link(Param::G1r, {Param::G2c, 0.7, 0.0})
        .set_link(Param::G2r, {Param::G1c, 0.7, 0.0})
        .set_family(DarkFamily{FamilyKind::EvenBell, 1, false});
    out.push_back(std::move(s));
  }
  {
    const double third = 1.0 / 3.0;
    Schedule s("nonlinear34", 34.0, base);
    s.set_ramp(Param::Delta1, {1.0, 0.5, third})
        .set_ramp(Param::Delta2, {0.0, 0.5, third})
        .set_ramp(Param::G1c, {0.0, 0.539, third})
        .set_link(Param::G2c, {Param::G1c, 1.0, 0.0})
        .set_ramp(Param::G1r, {0.0, 0.284, 2.0 * third})
        .set_link(Param::G2r, {Param::G1r, 1.0, 0.0})
        .set_family(DarkFamily{FamilyKind::EvenBell, 1, false});
    out.push_back(std::move(s));
  }
  {
    Schedule s("stark98", 9.8, base);
    s.set_ramp(Param::Delta1, {1.0, 1.0 / 3.0, 1.0})
        .set_ramp(Param::Delta2, {0.0, 2.0 / 3.0, 1.0})
        .set_ramp(Param::G1c, {0.0, std::sqrt(2.0), 1.0})
        .set_link(Param::G1r, {Param::G1c, 0.98, 0.0})
        .set_link(Param::G2r, {Param::G1r, 1.0, 0.0})
        .set_link(Param::G2c, {Param::G1c, 1.0, 0.0})
        .set_constant(Param::U1, 2.0 / 3.0)
        .set_constant(Param::U2, 1.0 / 3.0)
        .set_family(DarkFamily{FamilyKind::EvenBell, 1, true});
    out.push_back(std::move(s));
  }
  {
    Schedule s("starkodd9", 9.0, base);
    s.set_ramp(Param::Delta1, {16.0 / 9.0, 1.0, 1.0})
        .set_ramp(Param::Delta2, {7.0 / 9.0, 0.0, 1.0})
        .set_ramp(Param::G1c, {0.0, 1.87, 1.0})
        .set_ramp(Param::G1r, {0.0, 1.7, 1.0})
        .set_link(Param::G2r, {Param::G1c, 1.0, 0.0})
        .set_link(Param::G2c, {Param::G1r, 1.0, 0.0})
        .set_constant(Param::U1, 0.0)
        .set_constant(Param::U2, -1.0)
        .set_family(DarkFamily{FamilyKind::OddUpDown, 1, true});
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<Schedule> find_preset(const std::string& name) {
  constexpr std::string_view kFlip = "-flip";
  // Case and underscores are ignored: "STARK_ODD_9" names starkodd9.
  std::string base;
  for (char c : name) {
    if (c != '_') base += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  bool flip = false;
  if (base.size() > kFlip.size() && base.ends_with(kFlip)) {
    base.resize(base.size() - kFlip.size());
    flip = true;
  }
  for (auto& s : builtin_presets()) {
    if (s.name() == base) return flip ? flip_sign(s) : s;
  }
  return std::nullopt;
}

}  // namespace darkbell
