#include "qfluid/projective_geometry.hpp"

#include <cmath>
#include <sstream>

namespace qfluid {

namespace {

// Homogeneous representative (zeta with 1 inserted at slot k).
CVector lift_coordinates(const Point& x, int chart, int dim) {
  if (x.size() != 2 * (dim - 1)) throw std::invalid_argument("chart coordinate size mismatch");
  CVector z(dim);
  int m = 0;
  for (int a = 0; a < dim; ++a) {
    if (a == chart) {
      z(a) = 1.0;
    } else {
      z(a) = Complex(x(2 * m), x(2 * m + 1));
      ++m;
    }
  }
  return z;
}

Eigen::VectorXd realify_skipping(const CVector& c, int chart) {
  Eigen::VectorXd out(2 * (c.size() - 1));
  int m = 0;
  for (Eigen::Index a = 0; a < c.size(); ++a) {
    if (a == chart) continue;
    out(2 * m) = c(a).real();
    out(2 * m + 1) = c(a).imag();
    ++m;
  }
  return out;
}

void require_chart(int chart, Eigen::Index dim) {
  if (chart < 0 || chart >= dim) throw std::invalid_argument("chart index out of range");
}

}  // namespace

int best_chart(const CVector& z) {
  Eigen::Index k = 0;
  z.cwiseAbs().maxCoeff(&k);
  return static_cast<int>(k);
}

ProjectivePoint::ProjectivePoint(const StateVector& v)
    : representative_(StateVector::normalized(v.amplitudes())),
      chart_index_(best_chart(v.amplitudes())) {}

bool ProjectivePoint::same_point(const ProjectivePoint& other, double tol) const {
  return representative_.same_ray(other.representative_, tol);
}

Point chart_coordinates(const CVector& z, int chart) {
  require_chart(chart, z.size());
  if (std::abs(z(chart)) == 0.0) throw ChartError("point lies outside the requested chart");
  return realify_skipping(z / z(chart), chart);
}

StateVector state_from_chart(const Point& x, int chart, int dim) {
  require_chart(chart, dim);
  return StateVector::normalized(lift_coordinates(x, chart, dim));
}

Eigen::VectorXd chart_pushforward(const CVector& z, const CVector& dz, int chart) {
  require_chart(chart, z.size());
  const Complex zk = z(chart);
  if (std::abs(zk) == 0.0) throw ChartError("point lies outside the requested chart");
  const CVector dzeta = (dz * zk - z * dz(chart)) / (zk * zk);
  return realify_skipping(dzeta, chart);
}

CVector horizontal_lift(const Point& x, int chart, const Eigen::VectorXd& tangent,
                        const StateVector& at) {
  const int dim = static_cast<int>(at.dim());
  const CVector z = lift_coordinates(x, chart, dim);
  CVector dz = CVector::Zero(dim);
  int m = 0;
  for (int a = 0; a < dim; ++a) {
    if (a == chart) continue;
    dz(a) = Complex(tangent(2 * m), tangent(2 * m + 1));
    ++m;
  }
  const double scale = z.norm();
  const CVector v = z / scale;
  CVector w = dz / scale;
  w -= v.dot(w) * v;
  const Complex overlap = v.dot(at.amplitudes());
  if (std::abs(overlap) < 1e-12) throw std::invalid_argument("lift target is not on the ray");
  return (overlap / std::abs(overlap)) * w;
}

Eigen::MatrixXd fubini_study_metric(const Point& x) {
  const auto n = x.size() / 2;
  CVector zeta(n);
  for (Eigen::Index a = 0; a < n; ++a) zeta(a) = Complex(x(2 * a), x(2 * a + 1));
  const double s = 1.0 + zeta.squaredNorm();
  // Hermitian form h_ab = ((1 + |zeta|^2) delta_ab - zeta_a conj(zeta_b)) / (1 + |zeta|^2)^2.
  const CMatrix h = (s * CMatrix::Identity(n, n) - zeta * zeta.adjoint()) / (s * s);
  Eigen::MatrixXd g(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const Complex hab = h(a, b);
      g(2 * a, 2 * b) = hab.real();
      g(2 * a, 2 * b + 1) = -hab.imag();
      g(2 * a + 1, 2 * b) = hab.imag();
      g(2 * a + 1, 2 * b + 1) = hab.real();
    }
  }
  return g;
}

ChartManifold fubini_study_chart(int n) {
  if (n < 1) throw std::invalid_argument("projective dimension must be positive");
  return ChartManifold(
      2 * n, [](const Point& x) { return fubini_study_metric(x); },
      [](const Point& x) { return x.allFinite() && x.cwiseAbs().maxCoeff() <= kChartBound; });
}

VectorField fundamental_field(const HermitianOperator& a, int chart) {
  const int dim = static_cast<int>(a.dim());
  require_chart(chart, dim);
  const CMatrix m = a.matrix();
  return VectorField{[m, chart, dim](const Point& x) -> Eigen::VectorXd {
    const CVector z = lift_coordinates(x, chart, dim);
    const CVector hz = m * z;
    // d zeta_a / dt = -i ((Hz)_a - zeta_a (Hz)_k) with z_k = 1.
    const CVector dzeta = Complex(0.0, -1.0) * (hz - z * hz(chart));
    return realify_skipping(dzeta, chart);
  }};
}

double dispersion_via_metric(const HermitianOperator& h, const ProjectivePoint& p) {
  if (h.dim() != p.dim()) throw ValidationError("dimension mismatch between operator and point");
  const int k = p.chart_index();
  const Point x = chart_coordinates(p.representative().amplitudes(), k);
  const Eigen::VectorXd field = fundamental_field(h, k)(x);
  return field.dot(fubini_study_metric(x) * field);
}

double fubini_study_distance(const StateVector& u, const StateVector& v) {
  const CVector a = u.amplitudes() / u.norm();
  const CVector b = v.amplitudes() / v.norm();
  const Complex overlap = a.dot(b);
  const double perp = (b - overlap * a).norm();
  return std::atan2(perp, std::abs(overlap));
}

GeodesicSphere::GeodesicSphere(const HermitianOperator& h, int i, int j) : i_(i), j_(j) {
  if (i == j) throw std::invalid_argument("geodesic sphere needs two distinct eigenstates");
  if (i < j) throw std::invalid_argument("geodesic sphere expects i > j");
  if (j < 0 || i >= h.dim()) throw std::invalid_argument("eigenstate index out of range");
  e_i_ = h.eigenvectors().col(i);
  e_j_ = h.eigenvectors().col(j);
  omega_ = h.eigenvalues()(i) - h.eigenvalues()(j);
}

StateVector GeodesicSphere::state(double theta, double phi) const {
  return StateVector(std::cos(0.5 * theta) * e_j_ +
                     std::sin(0.5 * theta) * std::polar(1.0, -phi) * e_i_);
}

CVector GeodesicSphere::d_theta(double theta, double phi) const {
  return 0.5 * (-std::sin(0.5 * theta) * e_j_ +
                std::cos(0.5 * theta) * std::polar(1.0, -phi) * e_i_);
}

CVector GeodesicSphere::d_phi(double theta, double phi) const {
  return Complex(0.0, -1.0) * std::sin(0.5 * theta) * std::polar(1.0, -phi) * e_i_;
}

CVector GeodesicSphere::unit_theta(double theta, double phi) const {
  return 2.0 * d_theta(theta, phi);
}

CVector GeodesicSphere::unit_phi(double theta, double phi) const {
  return Complex(0.0, -1.0) * unit_theta(theta, phi);
}

Eigen::Matrix2d GeodesicSphere::induced_metric(double theta, double phi) const {
  const CVector z = state(theta, phi).amplitudes();
  const int k = best_chart(z);
  const Point x = chart_coordinates(z, k);
  Eigen::MatrixXd jac(x.size(), 2);
  jac.col(0) = chart_pushforward(z, d_theta(theta, phi), k);
  jac.col(1) = chart_pushforward(z, d_phi(theta, phi), k);
  return jac.transpose() * fubini_study_metric(x) * jac;
}

}  // namespace qfluid
