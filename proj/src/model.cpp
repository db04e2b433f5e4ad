#include "darkbell/model.hpp"

#include <cmath>

#include <fmt/format.h>

#include "darkbell/error.hpp"

namespace darkbell {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CutoffExceeded: return "cutoff-exceeded";
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::ConditionsViolated: return "conditions-violated";
    case ErrorKind::ZeroState: return "zero-state";
    case ErrorKind::EigensolverFailure: return "eigensolver-failure";
    case ErrorKind::NoDarkLevel: return "no-dark-level";
    case ErrorKind::DegeneratePair: return "degenerate-pair";
    case ErrorKind::SingularRate: return "singular-rate";
    case ErrorKind::StepSizeUnderflow: return "step-size-underflow";
    case ErrorKind::NormDriftExceeded: return "norm-drift-exceeded";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

namespace {

constexpr std::array<std::string_view, kNumParams> kParamNames = {
    "omega", "delta1", "delta2", "g1r", "g1c", "g2r", "g2c", "u1", "u2"};

}  // namespace

std::string_view to_string(Param p) { return kParamNames[static_cast<std::size_t>(p)]; }

std::optional<Param> param_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kNumParams; ++i) {
    if (kParamNames[i] == name) return static_cast<Param>(i);
  }
  return std::nullopt;
}

double& ModelParams::at(Param p) {
  switch (p) {
    case Param::Omega: return omega;
    case Param::Delta1: return delta1;
    case Param::Delta2: return delta2;
    case Param::G1r: return g1r;
    case Param::G1c: return g1c;
    case Param::G2r: return g2r;
    case Param::G2c: return g2c;
    case Param::U1: return u1;
    case Param::U2: return u2;
  }
  throw Error(ErrorKind::InvalidParams, "unknown parameter");
}

double ModelParams::get(Param p) const { return const_cast<ModelParams*>(this)->at(p); }

void ModelParams::set(Param p, double value) { at(p) = value; }

void ModelParams::validate() const {
  for (Param p : kAllParams) {
    if (!std::isfinite(get(p))) {
      throw Error(ErrorKind::InvalidParams, fmt::format("{} is not finite", to_string(p)));
    }
  }
  if (!(omega > 0.0)) {
    throw Error(ErrorKind::InvalidParams, fmt::format("omega must be positive, got {}", omega));
  }
  // Tolerate rounding at the |u1 + u2| = omega boundary used by the Stark presets.
  if (std::abs(u1 + u2) > omega * (1.0 + 1e-12)) {
    throw Error(ErrorKind::InvalidParams,
                fmt::format("|u1 + u2| = {} exceeds omega = {}", std::abs(u1 + u2), omega));
  }
}

bool ModelParams::is_valid() const {
  try {
    validate();
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string to_string(const ModelParams& p) {
  return fmt::format(
      "omega={:.6g} delta1={:.6g} delta2={:.6g} g1r={:.6g} g1c={:.6g} g2r={:.6g} g2c={:.6g} "
      "u1={:.6g} u2={:.6g}",
      p.omega, p.delta1, p.delta2, p.g1r, p.g1c, p.g2r, p.g2c, p.u1, p.u2);
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::EvenBell: return "even";
    case FamilyKind::OddUpDown: return "odd-updown";
    case FamilyKind::OddDownUp: return "odd-downup";
  }
  return "?";
}

std::optional<FamilyKind> family_from_string(std::string_view name) {
  if (name == "even" || name == "even-bell") return FamilyKind::EvenBell;
  if (name == "odd-updown" || name == "odd_updown") return FamilyKind::OddUpDown;
  if (name == "odd-downup" || name == "odd_downup") return FamilyKind::OddDownUp;
  return std::nullopt;
}

BasisLabel DarkFamily::vacuum_label() const {
  switch (kind) {
    case FamilyKind::EvenBell: return {0, Spin::Up, Spin::Up};
    case FamilyKind::OddUpDown: return {0, Spin::Up, Spin::Down};
    case FamilyKind::OddDownUp: return {0, Spin::Down, Spin::Up};
  }
  return {};
}

std::pair<BasisLabel, BasisLabel> DarkFamily::photon_pair() const {
  if (kind == FamilyKind::EvenBell) {
    return {{1, Spin::Down, Spin::Up}, {1, Spin::Up, Spin::Down}};
  }
  return {{1, Spin::Down, Spin::Down}, {1, Spin::Up, Spin::Up}};
}

std::string to_string(const DarkFamily& family) {
  return fmt::format("{}({}{})", to_string(family.kind), family.sign > 0 ? "+" : "-",
                     family.stark ? ",stark" : "");
}

std::string_view to_string(BellLabel bell) {
  switch (bell) {
    case BellLabel::PsiMinus: return "psi-";
    case BellLabel::PsiPlus: return "psi+";
    case BellLabel::PhiMinus: return "phi-";
    case BellLabel::PhiPlus: return "phi+";
  }
  return "?";
}

std::optional<BellLabel> bell_from_string(std::string_view name) {
  for (BellLabel b : {BellLabel::PsiMinus, BellLabel::PsiPlus, BellLabel::PhiMinus,
                      BellLabel::PhiPlus}) {
    if (to_string(b) == name) return b;
  }
  return std::nullopt;
}

BellLabel target_bell(const DarkFamily& family) {
  if (family.kind == FamilyKind::EvenBell) {
    return family.sign > 0 ? BellLabel::PsiMinus : BellLabel::PsiPlus;
  }
  return family.sign > 0 ? BellLabel::PhiMinus : BellLabel::PhiPlus;
}

std::array<double, 4> bell_amplitudes(BellLabel bell) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (bell) {
    case BellLabel::PsiMinus: return {0.0, h, -h, 0.0};
    case BellLabel::PsiPlus: return {0.0, h, h, 0.0};
    case BellLabel::PhiMinus: return {h, 0.0, 0.0, -h};
    case BellLabel::PhiPlus: return {h, 0.0, 0.0, h};
  }
  return {};
}

}  // namespace darkbell
