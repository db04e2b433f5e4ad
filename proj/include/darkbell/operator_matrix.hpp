#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "darkbell/hilbert.hpp"

namespace darkbell {

/// Matrix of an operator on a HilbertSpace.
///
/// Every operator of the model (H, dH/dt, the parity operator, projectors)
/// has real matrix elements in the Fock x qubit basis, so entries are stored
/// as a real sparse (compressed column) matrix; complex states are handled by
/// apply(). dense() materializes the matrix for eigensolves.
class OperatorMatrix {
 public:
  using Sparse = Eigen::SparseMatrix<double>;

  explicit OperatorMatrix(const HilbertSpace& space);
  OperatorMatrix(const HilbertSpace& space, Sparse entries);

  static OperatorMatrix identity(const HilbertSpace& space);
  static OperatorMatrix diagonal(const HilbertSpace& space, const Eigen::VectorXd& diag);

  const HilbertSpace& space() const { return space_; }
  const Sparse& entries() const { return entries_; }
  std::size_t dim() const { return space_.dim(); }

  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries_); }
  double operator()(std::size_t row, std::size_t col) const;
  double operator()(const BasisLabel& row, const BasisLabel& col) const;

  StateVector apply(const StateVector& state) const;
  /// <bra|O|ket>
  Complex expectation(const StateVector& bra, const StateVector& ket) const;

  double max_abs() const;
  /// max |O - O^dag| over entries
  double hermiticity_defect() const;
  bool is_zero(double tol = 0.0) const { return max_abs() <= tol; }

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(double scale);

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator*(double s, OperatorMatrix a) { return a *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  HilbertSpace space_;
  Sparse entries_;
};

/// Diagonal idempotent projector onto a parity sector (Full gives identity).
OperatorMatrix parity_projector(const HilbertSpace& space, Sector sector);

/// R = exp(i pi a^dag a) sigma_1z sigma_2z, diagonal with entries +-1.
OperatorMatrix parity_operator(const HilbertSpace& space);

}  // namespace darkbell
