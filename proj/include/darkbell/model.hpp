#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "darkbell/hilbert.hpp"

namespace darkbell {

/// The nine real parameters of the anisotropic two-qubit Rabi(-Stark) model.
enum class Param : std::uint8_t {
  Omega,   // resonator frequency
  Delta1,  // sigma_1z coefficient (qubit 1 splitting is 2*delta1)
  Delta2,
  G1r,  // rotating coupling, qubit 1
  G1c,  // counter-rotating coupling, qubit 1
  G2r,
  G2c,
  U1,  // Stark shift, qubit 1
  U2,
};

inline constexpr std::size_t kNumParams = 9;
inline constexpr std::array<Param, kNumParams> kAllParams = {
    Param::Omega, Param::Delta1, Param::Delta2, Param::G1r, Param::G1c,
    Param::G2r,   Param::G2c,    Param::U1,     Param::U2};

std::string_view to_string(Param p);
/// Accepts the snake-case names used in config files ("delta1", "g1r", ...).
std::optional<Param> param_from_string(std::string_view name);

/// All energies are in units of omega unless omega is set otherwise.
struct ModelParams {
  double omega = 1.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double g1r = 0.0;
  double g1c = 0.0;
  double g2r = 0.0;
  double g2c = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;

  double get(Param p) const;
  void set(Param p, double value);
  double& at(Param p);

  /// Throws InvalidParams unless omega > 0, |u1 + u2| <= omega, all finite.
  void validate() const;
  bool is_valid() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

std::string to_string(const ModelParams& params);

/// Rates of change of every parameter; same layout as ModelParams.
using ParamRates = ModelParams;

/// The three one-photon dark-state families.
///   EvenBell:   omega = delta1 + delta2, g2r/g1r = g2c/g1c = sign
///   OddUpDown:  delta1 - delta2 = omega, g2r/g1c = g1r/g2c = sign
///   OddDownUp:  delta2 - delta1 = omega, g2r/g1c = g1r/g2c = sign
enum class FamilyKind : std::uint8_t { EvenBell, OddUpDown, OddDownUp };

std::string_view to_string(FamilyKind kind);
std::optional<FamilyKind> family_from_string(std::string_view name);

struct DarkFamily {
  FamilyKind kind = FamilyKind::EvenBell;
  int sign = 1;        // +1 or -1, branch of the coupling-ratio condition
  bool stark = false;  // whether u1, u2 may be nonzero

  Sector sector() const { return kind == FamilyKind::EvenBell ? Sector::Even : Sector::Odd; }

  /// The zero-photon label carrying the detuning amplitude.
  BasisLabel vacuum_label() const;
  /// The one-photon pair (a, b) entering as (|a> - sign*|b>).
  /// Even: (|1 down up>, |1 up down>); odd: (|1 down down>, |1 up up>).
  std::pair<BasisLabel, BasisLabel> photon_pair() const;

  friend bool operator==(const DarkFamily&, const DarkFamily&) = default;
};

std::string to_string(const DarkFamily& family);

/// The four Bell states, written with qubit 1 first:
///   PsiMinus (|du> - |ud>)/sqrt2, PsiPlus (|du> + |ud>)/sqrt2,
///   PhiMinus (|dd> - |uu>)/sqrt2, PhiPlus (|dd> + |uu>)/sqrt2.
enum class BellLabel : std::uint8_t { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

std::string_view to_string(BellLabel bell);
std::optional<BellLabel> bell_from_string(std::string_view name);

/// Bell state reached by a family when its vacuum amplitude vanishes.
BellLabel target_bell(const DarkFamily& family);

/// Two-qubit amplitudes of a Bell state indexed by 2*s1 + s2 (Down = 0).
std::array<double, 4> bell_amplitudes(BellLabel bell);

}  // namespace darkbell
