#include "darkbell/operator_matrix.hpp"

#include <vector>

#include "darkbell/error.hpp"

namespace darkbell {

namespace {

void require_same_space(const HilbertSpace& a, const HilbertSpace& b) {
  if (!(a == b)) throw Error(ErrorKind::InvalidParams, "operators act on different spaces");
}

}  // namespace

OperatorMatrix::OperatorMatrix(const HilbertSpace& space)
    : space_(space),
      entries_(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(space.dim())) {}

OperatorMatrix::OperatorMatrix(const HilbertSpace& space, Sparse entries)
    : space_(space), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw Error(ErrorKind::InvalidParams, "operator shape does not match the space");
  }
  entries_.makeCompressed();
}

OperatorMatrix OperatorMatrix::identity(const HilbertSpace& space) {
  return diagonal(space, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(space.dim())));
}

OperatorMatrix OperatorMatrix::diagonal(const HilbertSpace& space, const Eigen::VectorXd& diag) {
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (diag[i] != 0.0) trips.emplace_back(i, i, diag[i]);
  }
  Sparse m(diag.size(), diag.size());
  m.setFromTriplets(trips.begin(), trips.end());
  return OperatorMatrix(space, std::move(m));
}

double OperatorMatrix::operator()(std::size_t row, std::size_t col) const {
  return entries_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

double OperatorMatrix::operator()(const BasisLabel& row, const BasisLabel& col) const {
  return (*this)(space_.index_of(row), space_.index_of(col));
}

StateVector OperatorMatrix::apply(const StateVector& state) const {
  require_same_space(space_, state.space());
  Eigen::VectorXcd out = entries_.cast<Complex>() * state.amplitudes();
  return StateVector(space_, std::move(out));
}

Complex OperatorMatrix::expectation(const StateVector& bra, const StateVector& ket) const {
  return bra.inner(apply(ket));
}

double OperatorMatrix::max_abs() const {
  double m = 0.0;
  for (Eigen::Index k = 0; k < entries_.outerSize(); ++k) {
    for (Sparse::InnerIterator it(entries_, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

double OperatorMatrix::hermiticity_defect() const {
  const Sparse diff = entries_ - Sparse(entries_.transpose());
  double m = 0.0;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
    for (Sparse::InnerIterator it(diff, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  require_same_space(space_, other.space_);
  entries_ += other.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  require_same_space(space_, other.space_);
  entries_ -= other.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(double scale) {
  entries_ *= scale;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a.space_, b.space_);
  return OperatorMatrix(a.space_, OperatorMatrix::Sparse(a.entries_ * b.entries_));
}

OperatorMatrix parity_projector(const HilbertSpace& space, Sector sector) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dim()));
  for (std::size_t i : space.sector_indices(sector)) diag[static_cast<Eigen::Index>(i)] = 1.0;
  return OperatorMatrix::diagonal(space, diag);
}

OperatorMatrix parity_operator(const HilbertSpace& space) {
  Eigen::VectorXd diag(static_cast<Eigen::Index>(space.dim()));
  for (std::size_t i = 0; i < space.dim(); ++i) {
    diag[static_cast<Eigen::Index>(i)] = static_cast<double>(space.parity(i));
  }
  return OperatorMatrix::diagonal(space, diag);
}

}  // namespace darkbell
