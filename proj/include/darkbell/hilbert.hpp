#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace darkbell {

using Complex = std::complex<double>;

enum class Spin : std::uint8_t { Down = 0, Up = 1 };

/// +1 for Up, -1 for Down (eigenvalue of sigma_z).
constexpr int sz(Spin s) { return s == Spin::Up ? 1 : -1; }

enum class Sector { Even, Odd, Full };

Sector sector_from_string(const std::string& name);
std::string to_string(Sector sector);

/// |n, s1, s2> with n photons in the resonator.
struct BasisLabel {
  int n = 0;
  Spin s1 = Spin::Down;
  Spin s2 = Spin::Down;

  /// Eigenvalue of exp(i pi a^dag a) sigma_1z sigma_2z on this label.
  constexpr int parity() const { return (n % 2 == 0 ? 1 : -1) * sz(s1) * sz(s2); }

  /// Short tag such as "0uu" or "1du" (photon number, then qubit 1, qubit 2).
  std::string tag() const;

  friend constexpr bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Truncated Fock (0..n_max) x qubit x qubit space, ordered lexicographically
/// in (n, s1, s2) with Down before Up.
class HilbertSpace {
 public:
  static constexpr int kDefaultNMax = 24;

  explicit HilbertSpace(int n_max = kDefaultNMax);

  int n_max() const { return n_max_; }
  std::size_t dim() const { return 4 * static_cast<std::size_t>(n_max_ + 1); }

  std::size_t index_of(const BasisLabel& label) const;
  BasisLabel label_of(std::size_t index) const;
  int parity(std::size_t index) const { return label_of(index).parity(); }

  /// Flat indices belonging to a parity sector, ascending.
  std::vector<std::size_t> sector_indices(Sector sector) const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  int n_max_;
};

inline constexpr double kNormTolerance = 1e-9;

class StateVector {
 public:
  explicit StateVector(const HilbertSpace& space);
  StateVector(const HilbertSpace& space, Eigen::VectorXcd amplitudes);

  static StateVector basis(const HilbertSpace& space, const BasisLabel& label);

  const HilbertSpace& space() const { return space_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }

  Complex operator[](const BasisLabel& label) const { return amps_[space_.index_of(label)]; }
  Complex& operator[](const BasisLabel& label) { return amps_[space_.index_of(label)]; }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = kNormTolerance) const;
  /// Throws ZeroState if the vector vanishes.
  StateVector normalized() const;

  /// <this|other>
  Complex inner(const StateVector& other) const;
  /// |<this|other>|^2
  double overlap(const StateVector& other) const { return std::norm(inner(other)); }

  /// Total probability in one parity sector.
  double sector_weight(Sector sector) const;
  /// Probability on the n = n_max shell.
  double top_shell_weight() const;

 private:
  HilbertSpace space_;
  Eigen::VectorXcd amps_;
};

}  // namespace darkbell
