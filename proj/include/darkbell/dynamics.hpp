#pragma once

#include <optional>
#include <string>
#include <vector>

#include "darkbell/darkstate.hpp"
#include "darkbell/error.hpp"
#include "darkbell/schedules.hpp"
#include "darkbell/spectrum.hpp"

namespace darkbell {

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// Abort threshold on |norm - 1|.
  double max_norm_drift = 1e-6;
  long max_steps = 5'000'000;
};

struct EvolutionSpec {
  Schedule schedule;
  /// Defaults to the family's dark state at t = 0.
  std::optional<StateVector> initial_state;
  /// Defaults to the family's dark state at t = T.
  std::optional<StateVector> target_state;
  IntegratorOptions options;
  int samples = 500;
};

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<std::string> population_labels;     // e.g. 0uu, 1du, 1ud, rest
  std::vector<std::vector<double>> populations;   // per time, per label
  std::vector<double> fidelity_full;
  std::vector<double> fidelity_qubits;
  std::vector<double> norm_error;
  std::vector<double> energy;
  std::vector<double> parity_leakage;  // weight outside the initial sector
  std::optional<StateVector> final_state;
  long rhs_evaluations = 0;

  double final_fidelity() const { return fidelity_full.empty() ? 0.0 : fidelity_full.back(); }
  double max_norm_error() const;
  double max_parity_leakage() const;
};

/// Raised by evolve(); carries the trace recorded before the failure.
class EvolutionError : public Error {
 public:
  EvolutionError(ErrorKind kind, const std::string& what, double time, EvolutionTrace partial)
      : Error(kind, what), time_(time), partial_(std::move(partial)) {}
  double time() const { return time_; }
  const EvolutionTrace& partial() const { return partial_; }

 private:
  double time_;
  EvolutionTrace partial_;
};

/// Integrates i d psi/dt = H(t) psi with an adaptive Dormand-Prince 5(4)
/// pair and dense output sampled on `samples` evenly spaced times.
EvolutionTrace evolve(const EvolutionSpec& spec, const HilbertSpace& space);

/// <bell| Tr_photon(|psi><psi|) |bell>
double reduced_qubit_fidelity(const StateVector& state, BellLabel bell);

/// |psi> = |photon> (x) |bell> for a normalized photon amplitude vector.
StateVector product_with_bell(const HilbertSpace& space, const std::vector<Complex>& photon,
                              BellLabel bell);

/// |<E_m|dH/dt|E_n>| / (E_m - E_n)^2 for sector levels m, n (ascending index)
/// in the sector of the schedule's family (full space if none). Throws
/// DegeneratePair when |E_m - E_n| <= 1e-10.
double adiabatic_metric(const Schedule& schedule, double t, int m, int n,
                        const HilbertSpace& space);

struct LevelCoupling {
  int level = -1;
  double delta = 0.0;      // E - omega
  double matel = 0.0;      // |<psi|dH/dt|Psi>|
  double ratio = 0.0;      // |delta| / sqrt(D^2 + delta^2)
  double relation_residual = 0.0;
};

struct ScalingReport {
  double time = 0.0;
  int dark_level = -1;
  int nearest_level = -1;
  double detuning = 0.0;  // D: the dark state's vacuum amplitude coefficient
  double gap = 0.0;
  double metric_nearest = 0.0;
  /// max over sector eigenstates of |(d_a - delta) psi_a - sign (d_b - delta) psi_b|
  double relation_residual_max = 0.0;
  /// ||dH/dt |Psi> outside span{|a>, |b>}||
  double support_residual = 0.0;
  /// |<a|dH/dt|Psi> - predicted|, predicted = (g'_lead D - 2 delta1' g_lead)/N
  double coefficient_residual = 0.0;
  double predicted_coefficient = 0.0;
  std::vector<LevelCoupling> levels;

  const LevelCoupling& nearest() const;
};

/// Checks the component relation obeyed by every sector eigenstate when the
/// dark-state conditions hold, and reports how dH/dt couples the dark state
/// to each level. Throws NoDarkLevel if the schedule has no family.
ScalingReport verify_matrix_element_scaling(const Schedule& schedule, double t,
                                            const HilbertSpace& space);

}  // namespace darkbell
