#include "qfluid/linear_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfluid {

namespace {

constexpr double kHermiticityTolerance = 1e-10;
constexpr double kDegeneracyTolerance = 1e-8;
// Negative variance beyond this (relative to ||H||^2) is a hard error.
constexpr double kVarianceRoundoff = 1e-10;

void require_same_dim(const HermitianOperator& a, const StateVector& v) {
  if (a.dim() != v.dim()) {
    std::ostringstream msg;
    msg << "dimension mismatch: operator " << a.dim() << ", state " << v.dim();
    throw ValidationError(msg.str());
  }
}

void require_normalized(const StateVector& v) {
  if (!v.is_normalized()) {
    std::ostringstream msg;
    msg << "state is not normalized (norm " << v.norm() << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 2) {
    throw ValidationError("state dimension must be at least 2");
  }
  if (!amplitudes_.allFinite()) {
    throw ValidationError("state has non-finite amplitudes");
  }
  if (amplitudes_.norm() == 0.0) {
    throw ValidationError("zero vector is not a state");
  }
}

StateVector StateVector::normalized(const CVector& amplitudes) {
  StateVector raw(amplitudes);
  return StateVector(amplitudes / raw.norm());
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) throw ValidationError("basis index out of range");
  CVector e = CVector::Zero(dim);
  e(k) = 1.0;
  return StateVector(std::move(e));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

Complex StateVector::inner(const StateVector& other) const {
  if (dim() != other.dim()) throw ValidationError("dimension mismatch in inner product");
  return amplitudes_.dot(other.amplitudes_);
}

bool StateVector::same_ray(const StateVector& other, double tol) const {
  if (dim() != other.dim()) return false;
  return std::abs(std::abs(inner(other)) - norm() * other.norm()) <= tol;
}

bool StateVector::same_amplitudes(const StateVector& other, double tol) const {
  if (dim() != other.dim()) return false;
  return (amplitudes_ - other.amplitudes_).cwiseAbs().maxCoeff() <= tol;
}

StateVector StateVector::with_phase(double alpha) const {
  return StateVector(amplitudes_ * std::polar(1.0, alpha));
}

HermitianOperator::HermitianOperator(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw ValidationError("operator matrix is not square");
  if (matrix_.rows() < 2) throw ValidationError("operator dimension must be at least 2");
  if (!matrix_.allFinite()) throw ValidationError("operator has non-finite entries");
  const double scale = std::max(1.0, matrix_.norm());
  const double skew = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (skew > kHermiticityTolerance * scale) {
    std::ostringstream msg;
    msg << "operator is not Hermitian: max|M - M^dagger| = " << skew;
    throw ValidationError(msg.str());
  }
  // Symmetrize away sub-tolerance noise before diagonalizing.
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

HermitianOperator HermitianOperator::diagonal(const RVector& eigenvalues) {
  return HermitianOperator(eigenvalues.cast<Complex>().asDiagonal().toDenseMatrix());
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(CMatrix::Identity(dim, dim));
}

StateVector HermitianOperator::eigenstate(Eigen::Index k) const {
  if (k < 0 || k >= dim()) throw ValidationError("eigenstate index out of range");
  return StateVector(eigenvectors_.col(k));
}

double HermitianOperator::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i + 1 < eigenvalues_.size(); ++i) {
    gap = std::min(gap, eigenvalues_(i + 1) - eigenvalues_(i));
  }
  return gap;
}

bool HermitianOperator::is_nondegenerate() const {
  const double range = eigenvalues_(eigenvalues_.size() - 1) - eigenvalues_(0);
  return range > 0.0 && min_gap() > kDegeneracyTolerance * range;
}

void HermitianOperator::require_nondegenerate() const {
  if (!is_nondegenerate()) {
    std::ostringstream msg;
    msg << "Hamiltonian spectrum is degenerate (min gap " << min_gap()
        << "); distinct eigenvalues are required";
    throw ValidationError(msg.str());
  }
}

HermitianOperator HermitianOperator::shifted(double c) const {
  return HermitianOperator(matrix_ + c * CMatrix::Identity(dim(), dim()));
}

HermitianOperator HermitianOperator::scaled(double s) const {
  return HermitianOperator(s * matrix_);
}

Projector::Projector(const StateVector& v)
    : matrix_(v.amplitudes() * v.amplitudes().adjoint() / v.amplitudes().squaredNorm()) {}

double Projector::axiom_residual() const {
  const double idempotent = (matrix_ * matrix_ - matrix_).cwiseAbs().maxCoeff();
  const double selfadjoint = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  const double trace = std::abs(matrix_.trace() - 1.0);
  return std::max({idempotent, selfadjoint, trace});
}

double expectation(const HermitianOperator& a, const StateVector& v) {
  require_same_dim(a, v);
  require_normalized(v);
  const Complex value = v.amplitudes().dot(a.matrix() * v.amplitudes());
  const double scale = std::max(1.0, a.matrix().norm());
  if (std::abs(value.imag()) > 1e-10 * scale) {
    throw ValidationError("expectation value has a non-negligible imaginary part");
  }
  return value.real();
}

double dispersion_squared(const HermitianOperator& h, const StateVector& v) {
  require_same_dim(h, v);
  require_normalized(v);
  // ||(H - <H>) v||^2 avoids the cancellation in <H^2> - <H>^2.
  const CVector hv = h.matrix() * v.amplitudes();
  const Complex mean = v.amplitudes().dot(hv);
  const double variance = (hv - mean * v.amplitudes()).squaredNorm();
  const double scale = std::max(1.0, h.matrix().squaredNorm());
  if (variance < -kVarianceRoundoff * scale) {
    throw ValidationError("negative dispersion beyond round-off");
  }
  return std::max(variance, 0.0);
}

StateVector evolve(const HermitianOperator& h, const StateVector& v, double t) {
  require_same_dim(h, v);
  require_normalized(v);
  const CMatrix& u = h.eigenvectors();
  CVector coeffs = u.adjoint() * v.amplitudes();
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs(k) *= std::polar(1.0, -h.eigenvalues()(k) * t);
  }
  CVector out = u * coeffs;
  return StateVector(out / out.norm());
}

namespace {

RMatrix parse_real_matrix(const nlohmann::json& j, const char* key, Eigen::Index dim) {
  if (!j.contains(key)) {
    throw ValidationError(std::string("missing field \"") + key + "\"");
  }
  const auto& rows = j.at(key);
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
    throw ValidationError(std::string("field \"") + key + "\" must be an array of " +
                          std::to_string(dim) + " rows");
  }
  RMatrix out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto& row = rows.at(r);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw ValidationError(std::string(key) + "[" + std::to_string(r) + "] must have " +
                            std::to_string(dim) + " entries");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto& entry = row.at(c);
      if (!entry.is_number()) {
        throw ValidationError(std::string(key) + "[" + std::to_string(r) + "][" +
                              std::to_string(c) + "] is not a number");
      }
      out(r, c) = entry.get<double>();
    }
  }
  return out;
}

RVector parse_real_vector(const nlohmann::json& j, const char* key, std::size_t size) {
  const auto& arr = j.at(key);
  if (!arr.is_array() || (size != 0 && arr.size() != size)) {
    throw ValidationError(std::string("field \"") + key + "\" has the wrong length");
  }
  RVector out(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw ValidationError(std::string(key) + "[" + std::to_string(i) + "] is not a number");
    }
    out(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  }
  return out;
}

}  // namespace

HermitianOperator hermitian_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("Hamiltonian JSON must be an object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer()) {
    throw ValidationError("missing or non-integer field \"dim\"");
  }
  const auto dim = j.at("dim").get<Eigen::Index>();
  if (dim < 2) throw ValidationError("\"dim\" must be at least 2");
  const RMatrix re = parse_real_matrix(j, "re", dim);
  const RMatrix im = j.contains("im") ? parse_real_matrix(j, "im", dim) : RMatrix::Zero(dim, dim);
  CMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = Complex(re(r, c), im(r, c));
    }
  }
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c <= r; ++c) {
      const double skew = std::abs(m(r, c) - std::conj(m(c, r)));
      if (skew > kHermiticityTolerance * std::max(1.0, m.norm())) {
        throw ValidationError("matrix is not Hermitian at entry [" + std::to_string(r) + "][" +
                              std::to_string(c) + "]");
      }
    }
  }
  return HermitianOperator(std::move(m));
}

nlohmann::json hermitian_to_json(const HermitianOperator& h) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < h.dim(); ++r) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ir = nlohmann::json::array();
    for (Eigen::Index c = 0; c < h.dim(); ++c) {
      rr.push_back(h.matrix()(r, c).real());
      ir.push_back(h.matrix()(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"dim", h.dim()}, {"re", re}, {"im", im}};
}

StateVector state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("re")) {
    throw ValidationError("state JSON must be an object with \"re\" (and optional \"im\")");
  }
  const RVector re = parse_real_vector(j, "re", 0);
  const RVector im = j.contains("im") ? parse_real_vector(j, "im", re.size())
                                      : RVector::Zero(re.size());
  CVector v(re.size());
  for (Eigen::Index k = 0; k < re.size(); ++k) v(k) = Complex(re(k), im(k));
  return StateVector::normalized(v);
}

nlohmann::json state_to_json(const StateVector& v) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.dim(); ++k) {
    re.push_back(v.amplitudes()(k).real());
    im.push_back(v.amplitudes()(k).imag());
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace qfluid
