#include <gtest/gtest.h>

#include <cmath>

#include "darkbell/darkstate.hpp"
#include "darkbell/error.hpp"
#include "darkbell/schedules.hpp"

using namespace darkbell;

namespace {

Schedule preset(const std::string& name) {
  auto s = find_preset(name);
  if (!s) throw std::runtime_error("missing preset " + name);
  return *s;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Config;
}

}  // namespace

TEST(Ramp, ValueAndRate) {
  const Ramp r{1.0, 0.5, 1.0};
  EXPECT_EQ(r.value(0.0), 1.0);
  EXPECT_EQ(r.value(1.0), 0.5);
  EXPECT_DOUBLE_EQ(r.value(0.25), 0.875);
  EXPECT_DOUBLE_EQ(r.rate(0.3, 10.0), -0.05);
  const Ramp cube{0.0, 0.8, 1.0 / 3.0};
  EXPECT_NEAR(cube.value(0.125), 0.4, 1e-15);
  EXPECT_NEAR(cube.rate(0.125, 2.0), 0.8 / 3.0 * std::pow(0.125, -2.0 / 3.0) / 2.0, 1e-14);
  EXPECT_EQ(kind_of([&] { (void)cube.rate(0.0, 2.0); }), ErrorKind::SingularRate);
  EXPECT_EQ(Ramp::constant(0.3).rate(0.0, 1.0), 0.0);
}

TEST(Presets, EndpointsAreExact) {
  const auto lin = preset("linear49");
  EXPECT_EQ(lin.duration(), 49.0);
  auto p0 = lin.params_at(0.0);
  auto p1 = lin.params_at(49.0);
  EXPECT_EQ(p0.delta1, 1.0);
  EXPECT_EQ(p0.delta2, 0.0);
  EXPECT_EQ(p0.g1c, 0.0);
  EXPECT_EQ(p1.delta1, 0.5);
  EXPECT_EQ(p1.delta2, 0.5);
  EXPECT_EQ(p1.g1c, 0.539);
  EXPECT_EQ(p1.g2c, 0.539);
  EXPECT_DOUBLE_EQ(p1.g1r, 0.7 * 0.539);

  const auto stark = preset("stark98");
  p1 = stark.params_at(9.8);
  EXPECT_DOUBLE_EQ(p1.delta1, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(p1.delta2, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(p1.g1c, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(p1.g1r, 0.98 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(p1.u1 + p1.u2, 1.0);

  const auto odd = preset("starkodd9");
  p0 = odd.params_at(0.0);
  p1 = odd.params_at(9.0);
  EXPECT_DOUBLE_EQ(p0.delta1, 16.0 / 9.0);
  EXPECT_DOUBLE_EQ(p0.delta2, 7.0 / 9.0);
  EXPECT_EQ(p1.delta1, 1.0);
  EXPECT_EQ(p1.delta2, 0.0);
  EXPECT_EQ(p1.g1c, 1.87);
  EXPECT_EQ(p1.g1r, 1.7);
  EXPECT_EQ(p1.u2, -1.0);
}

TEST(Presets, ConditionsHoldAlongEverySchedule) {
  for (const auto& s : builtin_presets()) {
    ASSERT_TRUE(s.family().has_value()) << s.name();
    EXPECT_LE(s.validate(1000, 1e-10), 1e-12) << s.name();
    const auto f = flip_sign(s);
    EXPECT_LE(f.validate(1000, 1e-10), 1e-12) << f.name();
  }
}

TEST(Presets, FinalDarkStateIsTheBellState) {
  // At t = T the vacuum amplitude vanishes for every preset.
  const HilbertSpace space(4);
  for (const auto& base : builtin_presets()) {
    for (const auto& s : {base, flip_sign(base)}) {
      const auto p = s.params_at(s.duration());
      const auto vacuum = dark_amplitudes(p, *s.family())[0];
      EXPECT_NEAR(vacuum, 0.0, 1e-15) << s.name();
    }
  }
}

TEST(Presets, RatesMatchFiniteDifferences) {
  for (const auto& s : builtin_presets()) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const double t = frac * s.duration();
      const double h = 1e-6 * s.duration();
      const auto rate = s.rates_at(t);
      const auto lo = s.params_at(t - h);
      const auto hi = s.params_at(t + h);
      for (Param p : kAllParams) {
        EXPECT_NEAR(rate.get(p), (hi.get(p) - lo.get(p)) / (2 * h), 1e-6) << s.name() << " " << to_string(p);
      }
    }
  }
}

TEST(Presets, NonlinearRateIsSingularAtStart) {
  const auto s = preset("nonlinear34");
  EXPECT_EQ(kind_of([&] { (void)s.rates_at(0.0); }), ErrorKind::SingularRate);
  EXPECT_NO_THROW((void)preset("linear49").rates_at(0.0));
}

TEST(Presets, OutOfRangeTimes) {
  const auto s = preset("linear49");
  EXPECT_EQ(kind_of([&] { (void)s.params_at(-0.1); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([&] { (void)s.params_at(49.1); }), ErrorKind::OutOfRange);
}

TEST(Presets, SignFlip) {
  const auto s = preset("linear49");
  const auto f = flip_sign(s);
  EXPECT_EQ(f.family()->sign, -1);
  EXPECT_EQ(*f.target(), BellLabel::PsiPlus);
  EXPECT_EQ(*s.target(), BellLabel::PsiMinus);
  for (double t : {0.0, 10.0, 49.0}) {
    const auto a = s.params_at(t);
    const auto b = f.params_at(t);
    EXPECT_DOUBLE_EQ(b.g2r, -a.g2r);
    EXPECT_DOUBLE_EQ(b.g2c, -a.g2c);
    EXPECT_DOUBLE_EQ(b.g1r, a.g1r);
    EXPECT_DOUBLE_EQ(b.g1c, a.g1c);
  }
  const auto named = find_preset("linear49-flip");
  ASSERT_TRUE(named);
  EXPECT_DOUBLE_EQ(named->params_at(20.0).g2c, f.params_at(20.0).g2c);
  EXPECT_EQ(*find_preset("starkodd9-flip")->target(), BellLabel::PhiPlus);
  EXPECT_FALSE(find_preset("linear50"));
  EXPECT_EQ(find_preset("STARK_ODD_9")->name(), "starkodd9");
  EXPECT_EQ(find_preset("LINEAR_49-flip")->family()->sign, -1);
}

TEST(Schedule, LinksAndCycles) {
  Schedule s("custom", 2.0, ModelParams{});
  s.set_ramp(Param::G1c, {0.0, 1.0, 1.0});
  s.set_link(Param::G1r, {Param::G1c, 0.5, 0.1});
  s.set_link(Param::G2r, {Param::G1r, 2.0, 0.0});
  const auto p = s.params_at(1.0);
  EXPECT_DOUBLE_EQ(p.g1r, 0.35);
  EXPECT_DOUBLE_EQ(p.g2r, 0.7);
  EXPECT_DOUBLE_EQ(s.rates_at(1.0).g2r, 0.5);
  EXPECT_EQ(kind_of([&] { s.set_link(Param::G1c, {Param::G2r, 1.0, 0.0}); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([&] { s.set_link(Param::U1, {Param::U1, 1.0, 0.0}); }), ErrorKind::Config);
}

TEST(Schedule, ValidateDetectsBrokenConditions) {
  Schedule s("bad", 1.0, ModelParams{});
  s.set_ramp(Param::Delta1, {1.0, 0.4, 1.0});
  s.set_ramp(Param::Delta2, {0.0, 0.5, 1.0});
  s.set_family(DarkFamily{FamilyKind::EvenBell, 1, false});
  EXPECT_EQ(kind_of([&] { (void)s.validate(); }), ErrorKind::ConditionsViolated);
}

TEST(Schedule, FrozenIsConstant) {
  const auto s = preset("stark98");
  const auto f = s.frozen_at(4.0, 3.0);
  EXPECT_EQ(f.duration(), 3.0);
  EXPECT_EQ(f.params_at(0.0), s.params_at(4.0));
  EXPECT_EQ(f.params_at(3.0), s.params_at(4.0));
  for (Param p : kAllParams) EXPECT_EQ(f.rates_at(1.5).get(p), 0.0);
  EXPECT_EQ(f.family(), s.family());
}

TEST(Schedule, DurationRescalesTime) {
  auto s = preset("linear49");
  s.set_duration(10.0);
  EXPECT_EQ(s.params_at(10.0).delta1, 0.5);
  EXPECT_DOUBLE_EQ(s.params_at(5.0).delta1, 0.75);
}
