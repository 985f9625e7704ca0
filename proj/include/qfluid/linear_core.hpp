#pragma once

// Finite-dimensional complex Hilbert space algebra: state vectors,
// Hermitian observables, expectation values, dispersion and unitary
// evolution (hbar = 1).

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace qfluid {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Raised when a Hamiltonian or state fails validation.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tolerance on |norm - 1| accepted by operations requiring normalized input.
inline constexpr double kNormTolerance = 1e-10;

class StateVector {
 public:
  /// Takes raw amplitudes; throws if dim < 2 or the vector is zero.
  explicit StateVector(CVector amplitudes);

  /// Normalizes and wraps the given amplitudes.
  static StateVector normalized(const CVector& amplitudes);
  /// Canonical basis vector e_k.
  static StateVector basis(Eigen::Index dim, Eigen::Index k);

  const CVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kNormTolerance) const;

  /// <this|other>, antilinear in the first slot.
  Complex inner(const StateVector& other) const;

  /// Ray equality: |<u|v>| = ||u|| ||v|| within tol.
  bool same_ray(const StateVector& other, double tol = 1e-10) const;
  /// Componentwise equality of raw amplitudes.
  bool same_amplitudes(const StateVector& other, double tol = 1e-12) const;

  StateVector with_phase(double alpha) const;

 private:
  CVector amplitudes_;
};

class HermitianOperator {
 public:
  /// Validates self-adjointness to 1e-10 * ||M|| and diagonalizes.
  explicit HermitianOperator(CMatrix matrix);

  static HermitianOperator diagonal(const RVector& eigenvalues);
  static HermitianOperator identity(Eigen::Index dim);

  const CMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  /// Ascending eigenvalues.
  const RVector& eigenvalues() const { return eigenvalues_; }
  /// Columns are orthonormal eigenvectors, ordered like eigenvalues().
  const CMatrix& eigenvectors() const { return eigenvectors_; }
  StateVector eigenstate(Eigen::Index k) const;

  /// Smallest gap between consecutive eigenvalues.
  double min_gap() const;
  /// True when every gap exceeds 1e-8 * spectral range.
  bool is_nondegenerate() const;
  /// Throws ValidationError when the spectrum is degenerate.
  void require_nondegenerate() const;

  HermitianOperator shifted(double c) const;
  HermitianOperator scaled(double s) const;

 private:
  CMatrix matrix_;
  RVector eigenvalues_;
  CMatrix eigenvectors_;
};

class Projector {
 public:
  /// |v><v| / ||v||^2.
  explicit Projector(const StateVector& v);
  const CMatrix& matrix() const { return matrix_; }
  /// Max deviation from P^2 = P, P = P^dagger, tr P = 1.
  double axiom_residual() const;

 private:
  CMatrix matrix_;
};

double expectation(const HermitianOperator& a, const StateVector& v);

/// <v|H^2 v> - <v|H v>^2, clamped at zero for round-off.
double dispersion_squared(const HermitianOperator& h, const StateVector& v);

/// exp(-iHt) v via the eigendecomposition of H.
StateVector evolve(const HermitianOperator& h, const StateVector& v, double t);

/// Parses {"dim": d, "re": [[...]], "im": [[...]]}; "im" may be omitted.
HermitianOperator hermitian_from_json(const nlohmann::json& j);
nlohmann::json hermitian_to_json(const HermitianOperator& h);

/// Parses {"re": [...], "im": [...]} and normalizes.
StateVector state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const StateVector& v);

}  // namespace qfluid
