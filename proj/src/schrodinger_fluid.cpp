#include "qfluid/schrodinger_fluid.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qfluid {

namespace {

int projective_dim(const HermitianOperator& h) { return static_cast<int>(h.dim()) - 1; }

}  // namespace

double pressure(const HermitianOperator& h, const ProjectivePoint& p) {
  const double algebraic = dispersion_squared(h, p.representative());
  const double metric = dispersion_via_metric(h, p);
  const double scale = std::max(1.0, h.matrix().squaredNorm());
  if (std::abs(algebraic - metric) > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "dispersion routes disagree: algebraic " << algebraic << ", metric " << metric;
    throw GradientMismatch(msg.str());
  }
  return 0.5 * algebraic;
}

ScalarField pressure_field(const HermitianOperator& h, int chart, double factor) {
  const int dim = static_cast<int>(h.dim());
  return ScalarField{[h, chart, dim, factor](const Point& x) {
    return factor * dispersion_squared(h, state_from_chart(x, chart, dim));
  }};
}

TangentAtPoint pressure_gradient(const HermitianOperator& h, const ProjectivePoint& p,
                                 const FiniteDifference& fd, double agreement) {
  if (h.dim() != p.dim()) throw ValidationError("dimension mismatch between operator and point");
  const int k = p.chart_index();
  const ChartManifold m = fubini_study_chart(projective_dim(h));
  const Point x = chart_coordinates(p.representative().amplitudes(), k);
  m.require_stencil(x, fd.step);

  // One Richardson step on the central differences.
  const ScalarField pf = pressure_field(h, k);
  const Eigen::VectorXd dp =
      (4.0 * gradient(pf, x, FiniteDifference{0.5 * fd.step}) - gradient(pf, x, fd)) / 3.0;
  const Eigen::MatrixXd g = m.metric(x);
  const Eigen::VectorXd grad = g.ldlt().solve(dp);

  const VectorField field = fundamental_field(h, k);
  const Eigen::VectorXd accel = covariant_derivative(m, field, field, x, fd);
  const Eigen::VectorXd diff = grad + accel;
  const double mismatch = std::sqrt(std::max(0.0, diff.dot(g * diff)));
  if (mismatch > agreement) {
    std::ostringstream msg;
    msg << "pressure gradient routes disagree by " << mismatch << " (limit " << agreement << ")";
    throw GradientMismatch(msg.str());
  }
  return TangentAtPoint{p, horizontal_lift(x, k, grad, p.representative()), k, grad};
}

std::string to_string(CriticalPoint::Kind kind) {
  return kind == CriticalPoint::Kind::Eigenstate ? "eigenstate" : "pair_superposition";
}

std::vector<CriticalPoint> critical_points(const HermitianOperator& h,
                                           const FiniteDifference& fd) {
  h.require_nondegenerate();
  const int dim = static_cast<int>(h.dim());
  const RVector& lambda = h.eigenvalues();
  std::vector<CriticalPoint> out;
  for (int i = 0; i < dim; ++i) {
    ProjectivePoint point(h.eigenstate(i));
    const double grad = pressure_gradient(h, point, fd).norm();
    out.push_back({CriticalPoint::Kind::Eigenstate, {i}, point, 0.0, false, grad});
  }
  for (int i = 1; i < dim; ++i) {
    for (int j = 0; j < i; ++j) {
      const CVector v = (h.eigenvectors().col(j) + h.eigenvectors().col(i)) / std::sqrt(2.0);
      ProjectivePoint point{StateVector(v)};
      const double gap = lambda(i) - lambda(j);
      const double grad = pressure_gradient(h, point, fd).norm();
      out.push_back({CriticalPoint::Kind::PairSuperposition, {i, j}, point, gap * gap / 8.0,
                     true, grad});
    }
  }
  return out;
}

CriticalSearchReport critical_grid_search(const HermitianOperator& h, double resolution,
                                          double gradient_threshold) {
  if (h.dim() != 3) throw std::invalid_argument("grid search is only certified for n = 2");
  h.require_nondegenerate();
  const int steps = static_cast<int>(std::lround(1.0 / resolution));
  // Pressure depends on the moduli only; a few phase pairs probe that.
  const std::array<std::array<double, 2>, 3> phases{{{0.0, 0.0}, {0.7, 2.1}, {3.0, -1.3}}};
  const CMatrix& basis = h.eigenvectors();

  // Moduli squared of the enumerated critical orbits.
  std::vector<Eigen::Vector3d> known;
  for (int i = 0; i < 3; ++i) known.push_back(Eigen::Vector3d::Unit(i));
  for (int i = 1; i < 3; ++i) {
    for (int j = 0; j < i; ++j) {
      known.push_back(0.5 * (Eigen::Vector3d::Unit(i) + Eigen::Vector3d::Unit(j)));
    }
  }

  CriticalSearchReport report;
  report.smallest_unexplained_gradient = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; a + b <= steps; ++b) {
      const Eigen::Vector3d weights(a * resolution, b * resolution,
                                    std::max(0.0, 1.0 - (a + b) * resolution));
      for (const auto& ph : phases) {
        const CVector v = std::sqrt(weights(0)) * basis.col(0) +
                          std::sqrt(weights(1)) * std::polar(1.0, ph[0]) * basis.col(1) +
                          std::sqrt(weights(2)) * std::polar(1.0, ph[1]) * basis.col(2);
        const ProjectivePoint point{StateVector::normalized(v)};
        const double grad = pressure_gradient(h, point).norm();
        ++report.grid_points;
        if (grad >= gradient_threshold) continue;
        bool matched = false;
        for (const auto& w : known) {
          if ((w - weights).cwiseAbs().maxCoeff() < 1e-9) matched = true;
        }
        if (matched) {
          ++report.critical_hits;
        } else {
          ++report.unexplained;
          report.smallest_unexplained_gradient =
              std::min(report.smallest_unexplained_gradient, grad);
        }
      }
    }
  }
  return report;
}

double scalar_vorticity(const HermitianOperator& h, const GeodesicSphere& sphere, double theta,
                        double phi, const FiniteDifference& fd) {
  const CVector z = sphere.state(theta, phi).amplitudes();
  const int k = best_chart(z);
  const Point x = chart_coordinates(z, k);
  const ChartManifold m = fubini_study_chart(projective_dim(h));
  const OneForm velocity_form = flat_field(m, fundamental_field(h, k));
  const Eigen::MatrixXd w = exterior_derivative_oneform(m, velocity_form, x, fd);
  const Eigen::VectorXd e_theta = chart_pushforward(z, sphere.unit_theta(theta, phi), k);
  const Eigen::VectorXd e_phi = chart_pushforward(z, sphere.unit_phi(theta, phi), k);
  return e_theta.dot(w * e_phi);
}

VorticityProfile vorticity_on_sphere(const HermitianOperator& h, int i, int j, int n_theta,
                                     int n_phi, const FiniteDifference& fd) {
  if (n_theta < 2 || n_phi < 1) throw std::invalid_argument("vorticity grid too small");
  const GeodesicSphere sphere(h, i, j);
  VorticityProfile profile;
  profile.upper = i;
  profile.lower = j;
  profile.omega = sphere.omega();
  for (int a = 0; a < n_theta; ++a) {
    const double theta = std::numbers::pi * a / (n_theta - 1);
    for (int b = 0; b < n_phi; ++b) {
      const double phi = 2.0 * std::numbers::pi * b / n_phi;
      const double numeric = scalar_vorticity(h, sphere, theta, phi, fd);
      const double analytic = 2.0 * sphere.omega() * std::cos(theta);
      const double err = std::abs(numeric - analytic);
      profile.samples.push_back({theta, phi, numeric, analytic, err});
      profile.max_abs_error = std::max(profile.max_abs_error, err);
    }
  }
  const double peak = 2.0 * std::abs(sphere.omega());
  profile.max_relative_error = peak > 0.0 ? profile.max_abs_error / peak : profile.max_abs_error;
  return profile;
}

double vorticity_transport_residual(const HermitianOperator& h, int i, int j, double theta,
                                    double phi, double perturbation) {
  const GeodesicSphere sphere(h, i, j);
  const CVector z = sphere.state(theta, phi).amplitudes();
  const int k = best_chart(z);
  const Point x = chart_coordinates(z, k);
  const Eigen::VectorXd field = fundamental_field(h, k)(x);
  const Eigen::VectorXd e_theta = chart_pushforward(z, sphere.unit_theta(theta, phi), k);
  // d_theta = (1/2) e_theta, so X^theta = 2 g(X, e_theta).
  const double x_theta = 2.0 * field.dot(fubini_study_metric(x) * e_theta) + perturbation;
  const double dw_dtheta = -2.0 * sphere.omega() * std::sin(theta);
  return std::abs(x_theta * dw_dtheta);
}

double zeno_decay(const HermitianOperator& h, const StateVector& v, double t, int measurements) {
  if (measurements < 1) throw std::invalid_argument("at least one measurement is required");
  const StateVector moved = evolve(h, v, t / measurements);
  const double survival = std::norm(v.inner(moved));
  return std::pow(survival, measurements);
}

bool zeno_quadratic_regime(const HermitianOperator& h, const StateVector& v, double t) {
  return dispersion_squared(h, v) * t * t < 0.1;
}

TrajectoryReport schrodinger_trajectory(const HermitianOperator& h, const ProjectivePoint& start,
                                        double total_time, int steps,
                                        const FiniteDifference& fd) {
  const int dim = static_cast<int>(h.dim());
  const int k = start.chart_index();
  const ChartManifold m = fubini_study_chart(dim - 1);
  const VectorField field = fundamental_field(h, k);
  const Point x0 = chart_coordinates(start.representative().amplitudes(), k);

  TrajectoryReport report;
  report.chart = k;
  report.flow = flow_integrate(m, field, x0, total_time, steps);
  report.geodesic = geodesic_integrate(m, x0, field(x0), total_time, steps, fd);
  const std::size_t count = std::min(report.flow.points.size(), report.geodesic.points.size());
  for (std::size_t n = 0; n < count; ++n) {
    const double d = fubini_study_distance(state_from_chart(report.flow.points[n], k, dim),
                                           state_from_chart(report.geodesic.points[n], k, dim));
    report.max_deviation = std::max(report.max_deviation, d);
  }
  return report;
}

double flow_evolution_mismatch(const HermitianOperator& h, const ProjectivePoint& start,
                               double total_time, int steps) {
  const int dim = static_cast<int>(h.dim());
  const int k = start.chart_index();
  const ChartManifold m = fubini_study_chart(dim - 1);
  const Point x0 = chart_coordinates(start.representative().amplitudes(), k);
  const DiscreteCurve flow = flow_integrate(m, fundamental_field(h, k), x0, total_time, steps);
  double worst = 0.0;
  for (std::size_t n = 0; n < flow.points.size(); ++n) {
    const StateVector exact = evolve(h, start.representative(), flow.times[n]);
    worst = std::max(worst, fubini_study_distance(state_from_chart(flow.points[n], k, dim), exact));
  }
  return worst;
}

}  // namespace qfluid
