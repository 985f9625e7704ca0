#pragma once

// The Schroedinger velocity field X = (-iH)^sharp on (P^n, g_FS) viewed as a
// stationary perfect fluid with pressure p = (1/2)(Delta H)^2.

#include <string>
#include <vector>

#include "qfluid/projective_geometry.hpp"

namespace qfluid {

/// The two independent pressure-gradient routes disagree: metric or
/// normalization bug.
class GradientMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (1/2)(Delta H)^2, cross-checked against (1/2) g_FS(X, X).
double pressure(const HermitianOperator& h, const ProjectivePoint& p);

/// Pressure as a scalar field on chart `chart` (algebraic dispersion).
ScalarField pressure_field(const HermitianOperator& h, int chart, double factor = 0.5);

struct TangentAtPoint {
  ProjectivePoint base;
  /// Horizontal vector at base.representative(); its norm is the g_FS length.
  CVector horizontal;
  int chart = 0;
  Eigen::VectorXd chart_components;
  double norm() const { return horizontal.norm(); }
};

/// (dp)^sharp from finite differences of p, checked against -nabla_X X.
/// Throws GradientMismatch when the routes differ by more than `agreement`.
TangentAtPoint pressure_gradient(const HermitianOperator& h, const ProjectivePoint& p,
                                 const FiniteDifference& fd = {}, double agreement = 1e-5);

struct CriticalPoint {
  enum class Kind { Eigenstate, PairSuperposition };
  Kind kind;
  /// (i) for eigenstates, (i, j) with i > j for pairs.
  std::vector<int> indices;
  ProjectivePoint representative;
  double pressure = 0.0;
  /// Pairs come in U(1) families (e_j + exp(ia) e_i)/sqrt 2; representative has a = 0.
  bool phase_orbit = false;
  double gradient_norm = 0.0;
};

std::string to_string(CriticalPoint::Kind kind);

/// n+1 eigenstates followed by the n(n+1)/2 equal-weight pairs. Requires a
/// nondegenerate spectrum.
std::vector<CriticalPoint> critical_points(const HermitianOperator& h,
                                           const FiniteDifference& fd = {});

struct CriticalSearchReport {
  int grid_points = 0;
  int critical_hits = 0;
  /// Grid points with small gradient that match no enumerated critical orbit.
  int unexplained = 0;
  double smallest_unexplained_gradient = 0.0;
};

/// Dense scan of the (rho_0^2, rho_1^2) simplex of a 3-level system at the
/// given resolution, repeated for a few fixed relative-phase pairs.
CriticalSearchReport critical_grid_search(const HermitianOperator& h, double resolution = 0.01,
                                          double gradient_threshold = 1e-6);

struct VorticitySample {
  double theta;
  double phi;
  double numeric;
  double analytic;
  double abs_err;
};

struct VorticityProfile {
  int upper = 0;
  int lower = 0;
  double omega = 0.0;
  std::vector<VorticitySample> samples;
  double max_abs_error = 0.0;
  /// max_abs_error / (2 |omega|).
  double max_relative_error = 0.0;
};

/// Scalar vorticity w(e_theta, e_phi) of dX^flat on S_ij from the chart calculus.
double scalar_vorticity(const HermitianOperator& h, const GeodesicSphere& sphere, double theta,
                        double phi, const FiniteDifference& fd = {});

/// Samples theta at n_theta points over [0, pi] (poles included) and phi at
/// n_phi points over [0, 2 pi); analytic value 2 omega cos(theta).
VorticityProfile vorticity_on_sphere(const HermitianOperator& h, int i, int j, int n_theta,
                                     int n_phi, const FiniteDifference& fd = {});

/// |grad w~ . (X + eps d_theta)| with w~ = 2 omega cos(theta); the stationary
/// 2d vorticity equation holds when this vanishes.
double vorticity_transport_residual(const HermitianOperator& h, int i, int j, double theta,
                                    double phi, double perturbation = 0.0);

/// |<v| exp(-iHt/N) v>|^(2N).
double zeno_decay(const HermitianOperator& h, const StateVector& v, double t, int measurements);
/// (Delta H)^2 t^2 < 0.1.
bool zeno_quadratic_regime(const HermitianOperator& h, const StateVector& v, double t);

struct TrajectoryReport {
  int chart = 0;
  DiscreteCurve flow;
  DiscreteCurve geodesic;
  /// Max pointwise g_FS distance between the two curves.
  double max_deviation = 0.0;
};

/// Integrates the chart flow of X and the geodesic with the same initial
/// position and velocity, both with RK4 over `steps` steps.
TrajectoryReport schrodinger_trajectory(const HermitianOperator& h, const ProjectivePoint& start,
                                        double total_time, int steps,
                                        const FiniteDifference& fd = {});

/// Max g_FS distance between the chart flow of X and [evolve(h, v, t)].
double flow_evolution_mismatch(const HermitianOperator& h, const ProjectivePoint& start,
                               double total_time, int steps);

}  // namespace qfluid
