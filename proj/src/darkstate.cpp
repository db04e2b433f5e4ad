#include "darkbell/darkstate.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>
#include <fmt/format.h>

#include "darkbell/error.hpp"

namespace darkbell {

namespace {

// |a - sign*b| / max(|a|, |b|); zero when both vanish.
double ratio_residual(double a, double b, int sign) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - sign * b) / scale;
}

void require_sign(const DarkFamily& family) {
  if (family.sign != 1 && family.sign != -1) {
    throw Error(ErrorKind::InvalidParams, fmt::format("family sign must be +1 or -1, got {}", family.sign));
  }
}

std::string format_report(const ConditionReport& report, double tol) {
  std::string out = fmt::format("{} conditions:", to_string(report.family));
  for (const auto& c : report.conditions) {
    out += fmt::format(" [{}: {:.3e}{}]", c.name, c.residual, c.residual > tol ? " VIOLATED" : "");
  }
  return out;
}

}  // namespace

double ConditionReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : conditions) m = std::max(m, c.residual);
  return m;
}

std::vector<std::string> ConditionReport::violated(double tol) const {
  std::vector<std::string> out;
  for (const auto& c : conditions) {
    if (!(c.residual <= tol)) out.push_back(c.name);
  }
  return out;
}

ConditionReport check_conditions(const ModelParams& p, const DarkFamily& family) {
  require_sign(family);
  ConditionReport report{family, {}};
  auto freq = [&](std::string name, double lhs) {
    report.conditions.push_back({std::move(name), std::abs(lhs - p.omega) / p.omega, ConditionUnit::Omega});
  };
  auto ratio = [&](std::string name, double a, double b) {
    report.conditions.push_back({std::move(name), ratio_residual(a, b, family.sign), ConditionUnit::Dimensionless});
  };
  const std::string s = family.sign > 0 ? "+1" : "-1";
  switch (family.kind) {
    case FamilyKind::EvenBell:
      freq("delta1 + delta2 = omega", p.delta1 + p.delta2);
      ratio("g2r/g1r = " + s, p.g2r, p.g1r);
      ratio("g2c/g1c = " + s, p.g2c, p.g1c);
      break;
    case FamilyKind::OddUpDown:
      freq("delta1 - delta2 = omega", p.delta1 - p.delta2);
      ratio("g2r/g1c = " + s, p.g2r, p.g1c);
      ratio("g1r/g2c = " + s, p.g1r, p.g2c);
      break;
    case FamilyKind::OddDownUp:
      freq("delta2 - delta1 = omega", p.delta2 - p.delta1);
      ratio("g2r/g1c = " + s, p.g2r, p.g1c);
      ratio("g1r/g2c = " + s, p.g1r, p.g2c);
      break;
  }
  if (!family.stark) {
    report.conditions.push_back({"u1 = 0", std::abs(p.u1) / p.omega, ConditionUnit::Omega});
    report.conditions.push_back({"u2 = 0", std::abs(p.u2) / p.omega, ConditionUnit::Omega});
  }
  return report;
}

std::array<double, 3> dark_amplitudes(const ModelParams& p, const DarkFamily& family) {
  require_sign(family);
  double vacuum = 0.0;
  double lead = 0.0;
  switch (family.kind) {
    case FamilyKind::EvenBell:
      vacuum = p.delta1 - p.delta2 + p.u1 - p.u2;
      lead = p.g1r;
      break;
    case FamilyKind::OddUpDown:
      vacuum = p.delta1 + p.delta2 + p.u1 + p.u2;
      lead = p.g1r;
      break;
    case FamilyKind::OddDownUp:
      vacuum = p.delta1 + p.delta2 + p.u1 + p.u2;
      lead = p.g2r;
      break;
  }
  return {vacuum, lead, -family.sign * lead};
}

void fix_dark_phase(StateVector& state) {
  const double tiny = 1e-12 * state.norm();
  Complex pivot = 0.0;
  for (Spin s1 : {Spin::Down, Spin::Up}) {
    for (Spin s2 : {Spin::Down, Spin::Up}) {
      const Complex a = state[BasisLabel{0, s1, s2}];
      if (std::abs(a) > std::abs(pivot)) pivot = a;
    }
  }
  if (std::abs(pivot) <= tiny) {
    pivot = state[BasisLabel{1, Spin::Down, Spin::Up}];
    if (std::abs(pivot) <= tiny) pivot = state[BasisLabel{1, Spin::Down, Spin::Down}];
  }
  if (std::abs(pivot) <= tiny) return;
  state.amplitudes() *= std::conj(pivot) / std::abs(pivot);
}

DarkStateResult construct_dark_state(const ModelParams& params, const DarkFamily& family,
                                     const HilbertSpace& space) {
  params.validate();
  const ConditionReport report = check_conditions(params, family);
  if (!report.satisfied(kConditionTolerance)) {
    throw Error(ErrorKind::ConditionsViolated, format_report(report, kConditionTolerance));
  }
  const auto amps = dark_amplitudes(params, family);
  if (amps[0] == 0.0 && amps[1] == 0.0) {
    throw Error(ErrorKind::ZeroState,
                fmt::format("{} dark state vanishes: vacuum and coupling amplitudes are both zero",
                            to_string(family)));
  }
  const auto [a, b] = family.photon_pair();
  StateVector state(space);
  state[family.vacuum_label()] = amps[0];
  state[a] = amps[1];
  state[b] = amps[2];
  state = state.normalized();
  fix_dark_phase(state);
  return DarkStateResult{std::move(state), params.omega, report.max_residual()};
}

BoundaryMatrix boundary_matrix(const ModelParams& p, Sector parity, double e) {
  const double r2 = std::sqrt(2.0);
  BoundaryMatrix m;
  if (parity == Sector::Even) {
    m << p.delta1 + p.delta2 - e, 0.0, p.g2r, p.g1r,
         0.0, -p.delta1 - p.delta2 - e, p.g1c, p.g2c,
         p.g2r, p.g1c, p.omega + p.delta1 - p.delta2 + p.u1 - p.u2 - e, 0.0,
         p.g1r, p.g2c, 0.0, p.omega - p.delta1 + p.delta2 - p.u1 + p.u2 - e,
         0.0, 0.0, r2 * p.g2c, r2 * p.g1c,
         0.0, 0.0, r2 * p.g1r, r2 * p.g2r;
  } else if (parity == Sector::Odd) {
    m << p.delta1 - p.delta2 - e, 0.0, p.g2c, p.g1r,
         0.0, -p.delta1 + p.delta2 - e, p.g1c, p.g2r,
         p.g2c, p.g1c, p.omega + p.delta1 + p.delta2 + p.u1 + p.u2 - e, 0.0,
         p.g1r, p.g2r, 0.0, p.omega - p.delta1 - p.delta2 - p.u1 - p.u2 - e,
         0.0, 0.0, r2 * p.g2r, r2 * p.g1c,
         0.0, 0.0, r2 * p.g1r, r2 * p.g2c;
  } else {
    throw Error(ErrorKind::InvalidParams, "boundary matrix needs an even or odd parity");
  }
  return m;
}

std::array<BasisLabel, 4> boundary_basis(Sector parity) {
  using S = Spin;
  if (parity == Sector::Even) {
    return {BasisLabel{0, S::Up, S::Up}, BasisLabel{0, S::Down, S::Down},
            BasisLabel{1, S::Up, S::Down}, BasisLabel{1, S::Down, S::Up}};
  }
  if (parity == Sector::Odd) {
    return {BasisLabel{0, S::Up, S::Down}, BasisLabel{0, S::Down, S::Up},
            BasisLabel{1, S::Up, S::Up}, BasisLabel{1, S::Down, S::Down}};
  }
  throw Error(ErrorKind::InvalidParams, "boundary basis needs an even or odd parity");
}

NullspaceResult boundary_nullspace(const ModelParams& params, Sector parity,
                                   const HilbertSpace& space) {
  const BoundaryMatrix m = boundary_matrix(params, parity);
  Eigen::JacobiSVD<BoundaryMatrix> svd(m, Eigen::ComputeFullV);
  NullspaceResult out;
  out.singular_values = svd.singularValues();
  const double top = out.singular_values[0];
  for (int k = 0; k < 4; ++k) {
    if (top > 0.0 && out.singular_values[k] > kRankThreshold * top) ++out.rank;
  }
  if (out.rank == 3) {
    const auto labels = boundary_basis(parity);
    const Eigen::Vector4d v = svd.matrixV().col(3);
    StateVector state(space);
    for (int k = 0; k < 4; ++k) state[labels[static_cast<std::size_t>(k)]] = v[k];
    state = state.normalized();
    fix_dark_phase(state);
    out.state = std::move(state);
  }
  return out;
}

double verify_dark_eigenstate(const StateVector& state, const ModelParams& params,
                              const HilbertSpace& space) {
  const OperatorMatrix h = build_hamiltonian(params, space);
  Eigen::VectorXcd r = h.apply(state).amplitudes() - params.omega * state.amplitudes();
  return r.norm();
}

}  // namespace darkbell
