#include "darkbell/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "darkbell/error.hpp"

namespace darkbell {

namespace odeint = boost::numeric::odeint;

namespace {

using OdeState = std::vector<Complex>;

Sector dominant_sector(const StateVector& s) {
  return s.sector_weight(Sector::Even) >= s.sector_weight(Sector::Odd) ? Sector::Even : Sector::Odd;
}

Sector opposite(Sector s) { return s == Sector::Even ? Sector::Odd : Sector::Even; }

void require_space(const StateVector& s, const HilbertSpace& space, const char* what) {
  if (!(s.space() == space)) {
    throw Error(ErrorKind::InvalidParams, fmt::format("{} lives on a different space", what));
  }
}

}  // namespace

double EvolutionTrace::max_norm_error() const {
  return norm_error.empty() ? 0.0 : *std::max_element(norm_error.begin(), norm_error.end());
}

double EvolutionTrace::max_parity_leakage() const {
  return parity_leakage.empty() ? 0.0
                                : *std::max_element(parity_leakage.begin(), parity_leakage.end());
}

double reduced_qubit_fidelity(const StateVector& state, BellLabel bell) {
  const auto b = bell_amplitudes(bell);
  const auto& amps = state.amplitudes();
  double f = 0.0;
  for (Eigen::Index n = 0; n + 3 < amps.size(); n += 4) {
    Complex proj = 0.0;
    for (Eigen::Index q = 0; q < 4; ++q) proj += b[static_cast<std::size_t>(q)] * amps[n + q];
    f += std::norm(proj);
  }
  return f;
}

StateVector product_with_bell(const HilbertSpace& space, const std::vector<Complex>& photon,
                              BellLabel bell) {
  if (photon.size() > static_cast<std::size_t>(space.n_max() + 1)) {
    throw Error(ErrorKind::CutoffExceeded, "photon amplitudes exceed the cutoff");
  }
  const auto b = bell_amplitudes(bell);
  StateVector out(space);
  for (std::size_t n = 0; n < photon.size(); ++n) {
    for (std::size_t q = 0; q < 4; ++q) {
      out.amplitudes()[static_cast<Eigen::Index>(4 * n + q)] = photon[n] * b[q];
    }
  }
  return out;
}

EvolutionTrace evolve(const EvolutionSpec& spec, const HilbertSpace& space) {
  const Schedule& schedule = spec.schedule;
  const double duration = schedule.duration();
  const auto& family = schedule.family();
  if (spec.samples < 2) throw Error(ErrorKind::InvalidParams, "need at least two output samples");

  auto dark_at = [&](double t, const char* what) {
    if (!family) {
      throw Error(ErrorKind::InvalidParams,
                  fmt::format("schedule '{}' has no dark-state family; supply the {} state",
                              schedule.name(), what));
    }
    return construct_dark_state(schedule.params_at(t), *family, space).state;
  };
  const StateVector initial = spec.initial_state ? *spec.initial_state : dark_at(0.0, "initial");
  const StateVector target = spec.target_state ? *spec.target_state : dark_at(duration, "target");
  require_space(initial, space, "initial state");
  require_space(target, space, "target state");
  if (!initial.is_normalized() || !target.is_normalized()) {
    throw Error(ErrorKind::InvalidParams, "initial and target states must be normalized");
  }
  const Sector sector = family ? family->sector() : dominant_sector(initial);
  if (initial.sector_weight(opposite(sector)) > 1e-12 || target.sector_weight(opposite(sector)) > 1e-12) {
    throw Error(ErrorKind::InvalidParams, "initial and target states must share one parity sector");
  }
  const std::optional<BellLabel> bell = schedule.target();

  // Population columns: the vacuum label and photon pair of the family.
  const DarkFamily labels_of = family ? *family : DarkFamily{};
  const auto [pair_a, pair_b] = labels_of.photon_pair();
  const std::array<BasisLabel, 3> tracked = {labels_of.vacuum_label(), pair_a, pair_b};

  EvolutionTrace trace;
  for (const auto& l : tracked) trace.population_labels.push_back(l.tag());
  trace.population_labels.emplace_back("rest");

  const HamiltonianGenerators gens(space);
  const auto dim = static_cast<Eigen::Index>(space.dim());
  const auto opposite_idx = space.sector_indices(opposite(sector));
  Eigen::VectorXcd work(dim);

  long evaluations = 0;
  auto system = [&](const OdeState& x, OdeState& dxdt, double t) {
    ++evaluations;
    const ModelParams p = schedule.params_at(std::min(t, duration));
    const Eigen::Map<const Eigen::VectorXcd> in(x.data(), dim);
    gens.apply(p, in, work);
    dxdt.resize(x.size());
    Eigen::Map<Eigen::VectorXcd> out(dxdt.data(), dim);
    out = Complex(0.0, -1.0) * work;
  };

  auto observer = [&](const OdeState& x, double t) {
    const StateVector psi(space, Eigen::Map<const Eigen::VectorXcd>(x.data(), dim));
    const double nrm = psi.norm();
    std::vector<double> pops;
    double listed = 0.0;
    for (const auto& l : tracked) {
      pops.push_back(std::norm(psi[l]));
      listed += pops.back();
    }
    pops.push_back(nrm * nrm - listed);
    trace.times.push_back(t);
    trace.populations.push_back(std::move(pops));
    trace.fidelity_full.push_back(target.overlap(psi));
    trace.fidelity_qubits.push_back(bell ? reduced_qubit_fidelity(psi, *bell)
                                         : std::numeric_limits<double>::quiet_NaN());
    trace.norm_error.push_back(std::abs(nrm - 1.0));
    Eigen::VectorXcd hpsi;
    gens.apply(schedule.params_at(std::min(t, duration)), psi.amplitudes(), hpsi);
    trace.energy.push_back(psi.amplitudes().dot(hpsi).real());
    double leak = 0.0;
    for (std::size_t i : opposite_idx) leak += std::norm(x[i]);
    trace.parity_leakage.push_back(leak);
    if (trace.norm_error.back() > spec.options.max_norm_drift) {
      throw Error(ErrorKind::NormDriftExceeded,
                  fmt::format("norm drift {:.3e} exceeds {:.3e} at t = {}", trace.norm_error.back(),
                              spec.options.max_norm_drift, t));
    }
  };

  OdeState x(initial.amplitudes().data(), initial.amplitudes().data() + dim);
  const std::vector<double> times = linspace(0.0, duration, spec.samples);
  auto stepper = odeint::make_dense_output(spec.options.atol, spec.options.rtol,
                                           odeint::runge_kutta_dopri5<OdeState>());
  const double dt0 = std::min(1e-3, duration / spec.samples);
  try {
    odeint::integrate_times(stepper, system, x, times.begin(), times.end(), dt0, observer,
                            odeint::max_step_checker(static_cast<int>(
                                std::min<long>(spec.options.max_steps, std::numeric_limits<int>::max()))));
  } catch (const Error& e) {
    const double t = trace.times.empty() ? 0.0 : trace.times.back();
    trace.rhs_evaluations = evaluations;
    throw EvolutionError(e.kind(), e.what(), t, std::move(trace));
  } catch (const odeint::odeint_error& e) {
    const double t = trace.times.empty() ? 0.0 : trace.times.back();
    trace.rhs_evaluations = evaluations;
    throw EvolutionError(ErrorKind::StepSizeUnderflow,
                         fmt::format("integrator gave up after t = {}: {}", t, e.what()), t,
                         std::move(trace));
  }
  trace.rhs_evaluations = evaluations;
  trace.final_state = StateVector(space, Eigen::Map<const Eigen::VectorXcd>(x.data(), dim));
  return trace;
}

double adiabatic_metric(const Schedule& schedule, double t, int m, int n,
                        const HilbertSpace& space) {
  const Sector sector = schedule.family() ? schedule.family()->sector() : Sector::Full;
  const SectorEigen eig = diagonalize_sector(schedule.params_at(t), sector, space);
  if (m < 0 || n < 0 || m >= eig.size() || n >= eig.size()) {
    throw Error(ErrorKind::OutOfRange, fmt::format("levels ({}, {}) outside 0..{}", m, n, eig.size() - 1));
  }
  const double gap = eig.values[m] - eig.values[n];
  if (std::abs(gap) <= kDegeneracyTolerance) {
    throw Error(ErrorKind::DegeneratePair,
                fmt::format("levels {} and {} are degenerate (gap {:.3e})", m, n, gap));
  }
  const Eigen::MatrixXd hdot = build_hamiltonian_derivative(schedule, t, space).dense();
  const double matel = std::abs(eig.vectors.col(m).dot(hdot * eig.vectors.col(n)));
  return matel / (gap * gap);
}

const LevelCoupling& ScalingReport::nearest() const {
  for (const auto& l : levels) {
    if (l.level == nearest_level) return l;
  }
  throw Error(ErrorKind::NoDarkLevel, "scaling report has no nearest level");
}

ScalingReport verify_matrix_element_scaling(const Schedule& schedule, double t,
                                            const HilbertSpace& space) {
  if (!schedule.family()) {
    throw Error(ErrorKind::NoDarkLevel, fmt::format("schedule '{}' has no dark-state family", schedule.name()));
  }
  const DarkFamily family = *schedule.family();
  const ModelParams p = schedule.params_at(t);
  const ParamRates rates = schedule.rates_at(t);

  const LevelGap gap = nearest_level_gap(p, family, space, p.omega);
  const StateVector dark = construct_dark_state(p, family, space).state;
  const SectorEigen eig = diagonalize_sector(p, family.sector(), space);
  const HamiltonianGenerators gens(space);
  const OperatorMatrix h = gens.combine(p);
  const OperatorMatrix hdot = gens.combine(rates);

  const auto [a, b] = family.photon_pair();
  const auto ia = static_cast<Eigen::Index>(space.index_of(a));
  const auto ib = static_cast<Eigen::Index>(space.index_of(b));
  const double d_a = h(a, a) - p.omega;
  const double d_b = h(b, b) - p.omega;
  const int s = family.sign;

  ScalingReport report;
  report.time = t;
  report.dark_level = gap.dark_index;
  report.nearest_level = gap.level_index;
  report.detuning = d_b;
  report.gap = gap.gap;

  for (int k = 0; k < eig.size(); ++k) {
    const double delta = eig.values[k] - p.omega;
    const double res = std::abs((d_a - delta) * eig.vectors(ia, k) - s * (d_b - delta) * eig.vectors(ib, k));
    report.relation_residual_max = std::max(report.relation_residual_max, res);
  }

  const Eigen::VectorXcd hdot_dark = hdot.apply(dark).amplitudes();
  Eigen::VectorXcd outside = hdot_dark;
  outside[ia] = 0.0;
  outside[ib] = 0.0;
  report.support_residual = outside.norm();

  // Predicted amplitude on |a>, with the phase of the constructed state.
  const auto raw = dark_amplitudes(p, family);
  const double norm = std::sqrt(raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]);
  const double align = dark[family.vacuum_label()].real() * raw[0] + dark[a].real() * raw[1] +
                       dark[b].real() * raw[2];
  const double phase = align >= 0.0 ? 1.0 : -1.0;
  const bool downup = family.kind == FamilyKind::OddDownUp;
  const double lead = downup ? p.g2r : p.g1r;
  const double lead_rate = downup ? rates.g2r : rates.g1r;
  report.predicted_coefficient = phase * (lead_rate * raw[0] - 2.0 * rates.delta1 * lead) / norm;
  report.coefficient_residual =
      std::max(std::abs(hdot_dark[ia] - report.predicted_coefficient),
               std::abs(hdot_dark[ib] - static_cast<double>(s) * report.predicted_coefficient));

  const Eigen::VectorXd hdot_dark_re = hdot_dark.real();
  for (int k = 0; k < eig.size(); ++k) {
    if (k == gap.dark_index) continue;
    LevelCoupling lc;
    lc.level = k;
    lc.delta = eig.values[k] - p.omega;
    lc.matel = std::abs(eig.vectors.col(k).dot(hdot_dark_re));
    lc.ratio = std::abs(lc.delta) / std::sqrt(d_b * d_b + lc.delta * lc.delta);
    lc.relation_residual =
        std::abs((d_a - lc.delta) * eig.vectors(ia, k) - s * (d_b - lc.delta) * eig.vectors(ib, k));
    report.levels.push_back(lc);
  }
  const double dn = report.nearest().delta;
  report.metric_nearest = dn == 0.0 ? std::numeric_limits<double>::infinity()
                                    : report.nearest().matel / (dn * dn);
  return report;
}

}  // namespace darkbell
