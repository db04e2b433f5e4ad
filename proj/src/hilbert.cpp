#include "darkbell/hilbert.hpp"

#include <fmt/format.h>

#include "darkbell/error.hpp"

namespace darkbell {

Sector sector_from_string(const std::string& name) {
  if (name == "even") return Sector::Even;
  if (name == "odd") return Sector::Odd;
  if (name == "full") return Sector::Full;
  throw Error(ErrorKind::Config, fmt::format("unknown sector '{}' (expected even|odd|full)", name));
}

std::string to_string(Sector sector) {
  switch (sector) {
    case Sector::Even: return "even";
    case Sector::Odd: return "odd";
    case Sector::Full: return "full";
  }
  return "?";
}

std::string BasisLabel::tag() const {
  auto c = [](Spin s) { return s == Spin::Up ? 'u' : 'd'; };
  return fmt::format("{}{}{}", n, c(s1), c(s2));
}

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max) {
  if (n_max < 2) {
    throw Error(ErrorKind::InvalidParams, fmt::format("n_max must be >= 2, got {}", n_max));
  }
}

std::size_t HilbertSpace::index_of(const BasisLabel& label) const {
  if (label.n < 0 || label.n > n_max_) {
    throw Error(ErrorKind::CutoffExceeded,
                fmt::format("photon number {} outside 0..{}", label.n, n_max_));
  }
  return (static_cast<std::size_t>(label.n) * 2 + static_cast<std::size_t>(label.s1)) * 2 +
         static_cast<std::size_t>(label.s2);
}

BasisLabel HilbertSpace::label_of(std::size_t index) const {
  if (index >= dim()) {
    throw Error(ErrorKind::OutOfRange, fmt::format("index {} outside 0..{}", index, dim() - 1));
  }
  return BasisLabel{static_cast<int>(index / 4), static_cast<Spin>((index / 2) % 2),
                    static_cast<Spin>(index % 2)};
}

std::vector<std::size_t> HilbertSpace::sector_indices(Sector sector) const {
  std::vector<std::size_t> out;
  out.reserve(sector == Sector::Full ? dim() : dim() / 2);
  for (std::size_t i = 0; i < dim(); ++i) {
    const int p = parity(i);
    if (sector == Sector::Full || (sector == Sector::Even && p > 0) ||
        (sector == Sector::Odd && p < 0)) {
      out.push_back(i);
    }
  }
  return out;
}

StateVector::StateVector(const HilbertSpace& space)
    : space_(space), amps_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dim()))) {}

StateVector::StateVector(const HilbertSpace& space, Eigen::VectorXcd amplitudes)
    : space_(space), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != space_.dim()) {
    throw Error(ErrorKind::InvalidParams,
                fmt::format("amplitude length {} does not match dimension {}", amps_.size(),
                            space_.dim()));
  }
}

StateVector StateVector::basis(const HilbertSpace& space, const BasisLabel& label) {
  StateVector s(space);
  s[label] = 1.0;
  return s;
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorKind::ZeroState, "cannot normalize the zero vector");
  return StateVector(space_, amps_ / n);
}

Complex StateVector::inner(const StateVector& other) const {
  if (!(space_ == other.space_)) {
    throw Error(ErrorKind::InvalidParams, "inner product between different spaces");
  }
  return amps_.dot(other.amps_);  // conjugates the left operand
}

double StateVector::sector_weight(Sector sector) const {
  double w = 0.0;
  for (std::size_t i : space_.sector_indices(sector)) w += std::norm(amps_[static_cast<Eigen::Index>(i)]);
  return w;
}

double StateVector::top_shell_weight() const {
  return amps_.tail(4).squaredNorm();
}

}  // namespace darkbell
