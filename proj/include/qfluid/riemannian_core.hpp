#pragma once

// Chart-based numerical Riemannian geometry. Manifolds, fields and forms are
// pure functions of chart coordinates; every derivative is a central finite
// difference with step FiniteDifference::step. Verifiers return residuals;
// pass/fail thresholds belong to the caller.

#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qfluid {

using Point = Eigen::VectorXd;

/// Stencil configuration shared by all derivative operations.
struct FiniteDifference {
  double step = 1e-4;
};

/// A stencil point fell outside the chart domain, or a metric was singular.
class ChartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using MetricFn = std::function<Eigen::MatrixXd(const Point&)>;
using DomainFn = std::function<bool(const Point&)>;

class ChartManifold {
 public:
  ChartManifold(int dim, MetricFn metric, DomainFn domain);

  int dim() const { return dim_; }
  bool contains(const Point& x) const { return domain_(x); }

  /// Metric at x; throws ChartError outside the domain or if g is not SPD.
  Eigen::MatrixXd metric(const Point& x) const;
  /// Metric without the positive-definiteness probe (stencil-internal use).
  Eigen::MatrixXd metric_unchecked(const Point& x) const;

  /// Throws ChartError unless x +- step*e_i are all inside the domain.
  void require_stencil(const Point& x, double step) const;

  double inner(const Point& x, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

  static ChartManifold euclidean(int dim);
  /// Round sphere of radius r in (colatitude, azimuth); domain keeps
  /// colatitude within [margin, pi - margin].
  static ChartManifold round_sphere(double radius, double margin = 1e-3);

 private:
  int dim_;
  MetricFn metric_;
  DomainFn domain_;
};

struct VectorField {
  std::function<Eigen::VectorXd(const Point&)> components;
  Eigen::VectorXd operator()(const Point& x) const { return components(x); }
};

struct OneForm {
  std::function<Eigen::VectorXd(const Point&)> components;
  Eigen::VectorXd operator()(const Point& x) const { return components(x); }
};

/// Antisymmetric coefficient matrix w_ij of a 2-form.
struct TwoForm {
  std::function<Eigen::MatrixXd(const Point&)> components;
  Eigen::MatrixXd operator()(const Point& x) const { return components(x); }
};

struct ScalarField {
  std::function<double(const Point&)> value;
  double operator()(const Point& x) const { return value(x); }
};

/// Gamma^k_{ij} stored as k-major blocks: symbol(k)(i, j).
class Christoffel {
 public:
  explicit Christoffel(int dim);
  double operator()(int k, int i, int j) const { return blocks_[k](i, j); }
  double& operator()(int k, int i, int j) { return blocks_[k](i, j); }
  const Eigen::MatrixXd& symbol(int k) const { return blocks_[k]; }
  int dim() const { return static_cast<int>(blocks_.size()); }

 private:
  std::vector<Eigen::MatrixXd> blocks_;
};

// Generic stencil helpers. Column i of the jacobian is d/dx^i.
Eigen::MatrixXd jacobian(const std::function<Eigen::VectorXd(const Point&)>& f, const Point& x,
                         const FiniteDifference& fd = {});
Eigen::VectorXd gradient(const ScalarField& f, const Point& x, const FiniteDifference& fd = {});

Christoffel christoffel(const ChartManifold& m, const Point& x, const FiniteDifference& fd = {});

/// (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_ij X^i Y^j.
Eigen::VectorXd covariant_derivative(const ChartManifold& m, const VectorField& x_field,
                                     const VectorField& y_field, const Point& x,
                                     const FiniteDifference& fd = {});

/// Killing residual (L_X g)_ij = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k.
Eigen::MatrixXd lie_derivative_metric(const ChartManifold& m, const VectorField& field,
                                      const Point& x, const FiniteDifference& fd = {});

/// (L_X a)_i = X^j d_j a_i + a_j d_i X^j.
Eigen::VectorXd lie_derivative_oneform(const ChartManifold& m, const VectorField& field,
                                       const OneForm& alpha, const Point& x,
                                       const FiniteDifference& fd = {});

/// (L_X w)_ij = X^k d_k w_ij + w_kj d_i X^k + w_ik d_j X^k.
Eigen::MatrixXd lie_derivative_twoform(const ChartManifold& m, const VectorField& field,
                                       const TwoForm& w, const Point& x,
                                       const FiniteDifference& fd = {});

Eigen::VectorXd flat(const ChartManifold& m, const VectorField& field, const Point& x);
Eigen::VectorXd sharp(const ChartManifold& m, const OneForm& alpha, const Point& x);
/// Index lowering as a field: x -> g(x) X(x).
OneForm flat_field(const ChartManifold& m, const VectorField& field);

/// (d a)_ij = d_i a_j - d_j a_i.
Eigen::MatrixXd exterior_derivative_oneform(const ChartManifold& m, const OneForm& alpha,
                                            const Point& x, const FiniteDifference& fd = {});
TwoForm exterior_derivative_field(const ChartManifold& m, const OneForm& alpha,
                                  const FiniteDifference& fd = {});

/// (1/sqrt det g) d_i (sqrt det g X^i).
double divergence(const ChartManifold& m, const VectorField& field, const Point& x,
                  const FiniteDifference& fd = {});

/// (nabla_X X)^flat + dp; vanishes iff the stationary Euler equation holds at x.
Eigen::VectorXd euler_residual(const ChartManifold& m, const VectorField& field,
                               const ScalarField& pressure, const Point& x,
                               const FiniteDifference& fd = {});

/// L_Y Y^flat - (nabla_Y Y)^flat - (1/2) d<Y,Y>; vanishes for every smooth Y.
Eigen::VectorXd identity_3_1_residual(const ChartManifold& m, const VectorField& field,
                                      const Point& x, const FiniteDifference& fd = {});

/// p = (1/2) <X, X>.
ScalarField kinetic_pressure(const ChartManifold& m, const VectorField& field);

struct DiscreteCurve {
  std::vector<double> times;
  std::vector<Point> points;
  std::vector<Eigen::VectorXd> velocities;
  /// Set when integration stopped because the curve left the chart.
  bool exited = false;
};

/// Classical RK4 on x'' + Gamma(x', x') = 0 with fixed step total_time / steps.
DiscreteCurve geodesic_integrate(const ChartManifold& m, const Point& x0,
                                 const Eigen::VectorXd& u0, double total_time, int steps,
                                 const FiniteDifference& fd = {});

/// Classical RK4 integral curve of a vector field.
DiscreteCurve flow_integrate(const ChartManifold& m, const VectorField& field, const Point& x0,
                             double total_time, int steps);

/// Max |<gamma', X> - <gamma'(0), X(gamma(0))>| along the curve.
double clairaut_check(const ChartManifold& m, const DiscreteCurve& curve,
                      const VectorField& field);

/// Surface of revolution around the z-axis in coordinates (z, phi) with
/// g = (1 + rho'^2) dz^2 + rho^2 dphi^2.
struct SurfaceOfRevolution {
  std::function<double(double)> radius;
  std::function<double(double)> radius_derivative;
  double z_min = 0.0;
  double z_max = 0.0;
  ChartManifold manifold;
  /// d/dphi.
  VectorField killing;
  /// (1/2) rho(z)^2 = (1/2) <d/dphi, d/dphi>.
  ScalarField pressure;

  /// Heights in (z_min, z_max) where rho' changes sign; the parallels there
  /// are geodesics. Located by bisection on a uniform bracketing scan.
  std::vector<double> geodesic_parallels(int scan_intervals = 1000) const;
};

/// Throws std::invalid_argument when rho <= 0 at any sampled z in [z_min, z_max].
SurfaceOfRevolution surface_of_revolution(std::function<double(double)> radius,
                                          std::function<double(double)> radius_derivative,
                                          double z_min, double z_max);

}  // namespace qfluid
