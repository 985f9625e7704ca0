#pragma once

// Complex projective space P(C^{n+1}) as a chart manifold with the
// Fubini-Study metric normalized so that g_FS(X, X) is the Hamiltonian
// variance along the Schroedinger field (P^1 is then a sphere of radius 1/2).
//
// Affine chart k: zeta_a = z_a / z_k for a != k (ascending a), realified as
// interleaved (Re zeta_a, Im zeta_a) pairs.

#include "qfluid/linear_core.hpp"
#include "qfluid/riemannian_core.hpp"

namespace qfluid {

/// Chart coordinates are restricted to max |zeta_a| <= this bound.
inline constexpr double kChartBound = 1e3;

class ProjectivePoint {
 public:
  /// Normalizes v and selects the chart of its largest-modulus amplitude.
  explicit ProjectivePoint(const StateVector& v);

  const StateVector& representative() const { return representative_; }
  int chart_index() const { return chart_index_; }
  int dim() const { return static_cast<int>(representative_.dim()); }

  /// Phase-insensitive: |<u|v>| = 1 within tol.
  bool same_point(const ProjectivePoint& other, double tol = 1e-10) const;
  bool operator==(const ProjectivePoint& other) const { return same_point(other); }

 private:
  StateVector representative_;
  int chart_index_;
};

/// Index of the largest-modulus amplitude (lowest index on ties).
int best_chart(const CVector& z);

/// Realified affine coordinates of the ray of z in chart k.
Point chart_coordinates(const CVector& z, int chart);
/// Normalized representative with a positive real k-th amplitude.
StateVector state_from_chart(const Point& x, int chart, int dim);

/// Chart-coordinate image of the tangent vector dz at the representative z.
Eigen::VectorXd chart_pushforward(const CVector& z, const CVector& dz, int chart);

/// Horizontal lift (orthogonal to the representative) of a chart tangent
/// vector, expressed at the normalized representative `at`.
CVector horizontal_lift(const Point& x, int chart, const Eigen::VectorXd& tangent,
                        const StateVector& at);

/// 2n x 2n real metric at chart coordinates x (same formula in every chart).
Eigen::MatrixXd fubini_study_metric(const Point& x);

/// P^n in one affine chart; the chart index only affects the domain label.
ChartManifold fubini_study_chart(int n);

/// Generator of [v] -> [exp(-iAt) v] in chart coordinates of chart k.
VectorField fundamental_field(const HermitianOperator& a, int chart);

/// g_FS(X, X) for the Schroedinger field X of h at p.
double dispersion_via_metric(const HermitianOperator& h, const ProjectivePoint& p);

/// Geodesic distance arctan(||v_perp|| / |<u|v>|); orthogonal states are pi/2 apart.
double fubini_study_distance(const StateVector& u, const StateVector& v);

/// Totally geodesic sphere of superpositions of eigenstates e_j (theta = 0)
/// and e_i (theta = pi), i > j, eigenvalues ascending:
///   v(theta, phi) = cos(theta/2) e_j + sin(theta/2) exp(-i phi) e_i.
/// The Schroedinger flow rotates it with d(phi)/dt = +omega, omega = l_i - l_j,
/// and the area form is (1/4) sin(theta) dtheta ^ dphi.
class GeodesicSphere {
 public:
  GeodesicSphere(const HermitianOperator& h, int i, int j);

  int upper() const { return i_; }
  int lower() const { return j_; }
  double omega() const { return omega_; }

  StateVector state(double theta, double phi) const;
  /// d v / d theta and d v / d phi at the representative state(theta, phi).
  CVector d_theta(double theta, double phi) const;
  CVector d_phi(double theta, double phi) const;
  /// Smooth orthonormal frame (horizontal lifts), positively oriented, also
  /// defined at the poles: e_theta = 2 d_theta, e_phi = -i e_theta.
  CVector unit_theta(double theta, double phi) const;
  CVector unit_phi(double theta, double phi) const;

  /// Pullback of the chart metric via the analytic embedding jacobian.
  Eigen::Matrix2d induced_metric(double theta, double phi) const;

 private:
  CVector e_i_;
  CVector e_j_;
  int i_;
  int j_;
  double omega_;
};

}  // namespace qfluid
