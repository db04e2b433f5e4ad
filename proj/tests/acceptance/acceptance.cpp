// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "darkbell/commands.hpp"
#include "darkbell/dynamics.hpp"
#include "darkbell/error.hpp"
#include "oracle.hpp"

using namespace darkbell;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  if (!pass) ++failures;
  std::cout << fmt::format("[{}] {:>2}  {}\n", pass ? "PASS" : "FAIL", id, what);
  std::cout.flush();
}

void note(const std::string& what) { std::cout << "          " << what << "\n"; }

struct Run {
  EvolutionTrace trace;
  double bell_fidelity = 0.0;
  double seconds = 0.0;
};

// Full-state overlap of the final state with |1> (x) |Bell>.
Run run_preset(const Schedule& s, int n_max) {
  const HilbertSpace space(n_max);
  EvolutionSpec spec{s, std::nullopt, std::nullopt, {}, 200};
  const auto start = std::chrono::steady_clock::now();
  Run r{evolve(spec, space), 0.0, 0.0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const StateVector bell = product_with_bell(space, {Complex(0.0), Complex(1.0)}, *s.target());
  r.bell_fidelity = bell.overlap(*r.trace.final_state);
  return r;
}

constexpr double kFidelityThreshold = 0.985;

void dark_state_criteria() {
  constexpr int kDraws = 100;
  constexpr double kResidualTol = 1e-12;
  constexpr double kNullTol = 1e-10;
  std::mt19937_64 rng(20240917);
  const HilbertSpace space(8);
  double worst_residual = 0.0;
  double worst_null = 0.0;
  int draws = 0;
  int rank_mismatch = 0;
  for (auto kind : testing::kFamilyKinds) {
    for (int sign : {1, -1}) {
      for (bool stark : {false, true}) {
        const DarkFamily f{kind, sign, stark};
        for (int k = 0; k < kDraws; ++k) {
          const ModelParams p = testing::draw_on_family(rng, f);
          const auto dark = construct_dark_state(p, f, space);
          worst_residual = std::max(worst_residual, verify_dark_eigenstate(dark.state, p, space));
          const auto null = boundary_nullspace(p, f.sector(), space);
          if (!null.state) {
            ++rank_mismatch;
          } else {
            worst_null = std::max(worst_null,
                                  (null.state->amplitudes() - dark.state.amplitudes()).cwiseAbs().maxCoeff());
          }
          ++draws;
        }
      }
    }
  }
  report(1, worst_residual < kResidualTol,
         fmt::format("dark-state exactness: max ||(H - omega)Psi|| = {:.2e} over {} draws "
                     "(3 families x 2 signs x Stark on/off, n_max 8), tol {:.0e}",
                     worst_residual, draws, kResidualTol));
  report(11, rank_mismatch == 0 && worst_null <= kNullTol,
         fmt::format("nullspace oracle: max |analytic - SVD| = {:.2e}, {} rank mismatches over {} draws, tol {:.0e}",
                     worst_null, rank_mismatch, draws, kNullTol));
}

void flat_line_criterion() {
  constexpr double kTol = 1e-9;
  bool pass = true;
  std::string detail;
  for (const std::string name : {"fig1a", "fig4"}) {
    const auto r = sweep(*spectrum_preset(name), HilbertSpace(24));
    double worst = 0.0;
    for (double d : r.dark_residual) worst = std::max(worst, d);
    pass = pass && worst < kTol && r.axis.size() == 100;
    detail += fmt::format("{} max min_k|E_k - omega| = {:.2e} ({} pts); ", name, worst, r.axis.size());
  }
  report(2, pass, fmt::format("horizontal spectral line: {}tol {:.0e}", detail, kTol));
}

struct PresetExpectation {
  int id;
  std::string name;
  std::optional<double> reference_ns;
};

}  // namespace

int main() {
  try {
    dark_state_criteria();
    flat_line_criterion();

    const std::vector<PresetExpectation> expectations = {
        {3, "linear49", std::nullopt},
        {4, "nonlinear34", std::nullopt},
        {5, "stark98", 0.52},
        {6, "starkodd9", 0.48},
    };
    constexpr double kFreqGhz = 3.0;
    constexpr double kTimeTol = 0.02;
    constexpr double kRuntimeLimit = 10.0;

    std::map<std::string, Run> runs;
    for (const auto& e : expectations) {
      const Schedule s = *find_preset(e.name);
      const Run r = run_preset(s, HilbertSpace::kDefaultNMax);
      runs.emplace(s.name(), r);
      bool pass = r.bell_fidelity >= kFidelityThreshold;
      std::string extra;
      if (e.id == 3) {
        pass = pass && r.seconds < kRuntimeLimit;
        extra = fmt::format(", runtime {:.2f} s (limit {:.0f} s)", r.seconds, kRuntimeLimit);
      }
      if (e.reference_ns) {
        const double ns = physical_time_ns(s.duration(), kFreqGhz);
        const double rel = std::abs(ns - *e.reference_ns) / *e.reference_ns;
        pass = pass && rel <= kTimeTol;
        extra = fmt::format(", physical time {:.4f} ns at {} GHz vs {} ns (rel {:.2e}, tol {:.0e})", ns, kFreqGhz,
                            *e.reference_ns, rel, kTimeTol);
      }
      report(e.id, pass,
             fmt::format("{} T = {}: fidelity to |1>|{}> = {:.6f} (>= {}){}", e.name, s.duration(),
                         to_string(*s.target()), r.bell_fidelity, kFidelityThreshold, extra));
    }

    {
      bool pass = true;
      std::string detail;
      for (const auto& base : builtin_presets()) {
        const Schedule s = flip_sign(base);
        const Run r = run_preset(s, HilbertSpace::kDefaultNMax);
        runs.emplace(s.name(), r);
        pass = pass && r.bell_fidelity >= kFidelityThreshold && s.target() != base.target();
        detail += fmt::format("{} -> {} {:.6f}; ", s.name(), to_string(*s.target()), r.bell_fidelity);
      }
      report(7, pass, fmt::format("sign-flip variants: {}threshold {}", detail, kFidelityThreshold));
    }

    {
      constexpr double kTol = 1e-10;
      const Schedule s = *find_preset("linear49");
      const HilbertSpace space(HilbertSpace::kDefaultNMax);
      double worst = 0.0;
      for (int k = 1; k <= 20; ++k) {
        const auto r = verify_matrix_element_scaling(s, s.duration() * k / 20.0, space);
        worst = std::max(worst, r.relation_residual_max);
      }
      report(8, worst <= kTol,
             fmt::format("component relation over all even eigenstates at 20 times of linear49: max residual {:.2e}, "
                         "tol {:.0e}",
                         worst, kTol));
    }

    {
      constexpr double kTol = 1e-12;
      const int n_max = HilbertSpace::kDefaultNMax;
      const HilbertSpace space(n_max);
      ModelParams p;
      p.omega = 1.0;
      p.delta1 = 0.37;
      p.delta2 = 0.21;
      std::vector<double> values;
      for (Sector sec : {Sector::Even, Sector::Odd}) {
        const auto eig = diagonalize_sector(p, sec, space);
        values.insert(values.end(), eig.values.begin(), eig.values.end());
      }
      double worst = 0.0;
      int checked = 0;
      for (int n = 0; n < n_max - 1; ++n) {
        for (int a : {-1, 1}) {
          for (int b : {-1, 1}) {
            const double expected = n * p.omega + a * p.delta1 + b * p.delta2;
            double best = 1e300;
            for (double v : values) best = std::min(best, std::abs(v - expected));
            worst = std::max(worst, best);
            ++checked;
          }
        }
      }
      report(9, worst <= kTol,
             fmt::format("decoupled spectrum n*omega +- delta1 +- delta2: {} levels (n < n_max - 1), max error {:.2e}, "
                         "tol {:.0e}",
                         checked, worst, kTol));
    }

    {
      constexpr double kLeakTol = 1e-10;
      constexpr double kNormTol = 1e-8;
      constexpr double kConvTol = 1e-4;
      constexpr double kStationaryTol = 1e-8;
      double leak = 0.0;
      double drift = 0.0;
      double worst_change = 0.0;
      std::string worst_change_name;
      std::vector<std::string> unconverged;
      for (const auto& [name, r] : runs) {
        leak = std::max(leak, r.trace.max_parity_leakage());
        drift = std::max(drift, r.trace.max_norm_error());
        const Run doubled = run_preset(*find_preset(name), 2 * HilbertSpace::kDefaultNMax);
        const double change = std::abs(doubled.bell_fidelity - r.bell_fidelity);
        if (change >= kConvTol) {
          unconverged.push_back(fmt::format("{} ({:.2e})", name, change));
        }
        if (change > worst_change) {
          worst_change = change;
          worst_change_name = name;
        }
      }
      double worst_stationary = 1.0;
      const HilbertSpace space(HilbertSpace::kDefaultNMax);
      for (const auto& base : builtin_presets()) {
        for (double frac : {0.0, 0.5, 1.0}) {
          const Schedule frozen = base.frozen_at(frac * base.duration(), base.duration());
          EvolutionSpec spec{frozen, std::nullopt, std::nullopt, {}, 50};
          const auto tr = evolve(spec, space);
          for (double f : tr.fidelity_full) worst_stationary = std::min(worst_stationary, f);
        }
      }
      const bool pass = leak <= kLeakTol && drift <= kNormTol && worst_change < kConvTol &&
                        worst_stationary >= 1.0 - kStationaryTol;
      report(10, pass,
             fmt::format("property suite over 8 preset runs: parity leakage {:.2e} (<= {:.0e}), norm drift {:.2e} "
                         "(<= {:.0e}), max fidelity change 24 -> 48 {:.2e} [{}] (< {:.0e}), frozen stationarity "
                         "min {:.12f} (>= 1 - {:.0e})",
                         leak, kLeakTol, drift, kNormTol, worst_change, worst_change_name, kConvTol,
                         worst_stationary, kStationaryTol));
      for (const auto& u : unconverged) note("not converged at 24 -> 48: " + u);
      if (!unconverged.empty()) {
        for (const auto& name : {std::string("starkodd9")}) {
          const double f48 = run_preset(*find_preset(name), 48).bell_fidelity;
          const double f96 = run_preset(*find_preset(name), 96).bell_fidelity;
          note(fmt::format("{} fidelity at n_max 48 / 96: {:.8f} / {:.8f} (change {:.2e})", name, f48, f96,
                           std::abs(f96 - f48)));
        }
      }
    }
  } catch (const Error& e) {
    std::cout << fmt::format("[FAIL] aborted: {} ({})\n", e.what(), to_string(e.kind()));
    return 1;
  }
  std::cout << (failures == 0 ? "all criteria passed\n" : fmt::format("{} criteria failed\n", failures));
  return failures == 0 ? 0 : 1;
}
