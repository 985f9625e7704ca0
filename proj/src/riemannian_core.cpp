#include "qfluid/riemannian_core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qfluid {

ChartManifold::ChartManifold(int dim, MetricFn metric, DomainFn domain)
    : dim_(dim), metric_(std::move(metric)), domain_(std::move(domain)) {
  if (dim_ < 1) throw std::invalid_argument("manifold dimension must be positive");
}

Eigen::MatrixXd ChartManifold::metric_unchecked(const Point& x) const {
  if (!domain_(x)) throw ChartError("point outside chart domain");
  return metric_(x);
}

Eigen::MatrixXd ChartManifold::metric(const Point& x) const {
  Eigen::MatrixXd g = metric_unchecked(x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()(0) <= 0.0) {
    std::ostringstream msg;
    msg << "metric not positive definite (smallest eigenvalue " << solver.eigenvalues()(0) << ")";
    throw ChartError(msg.str());
  }
  return g;
}

void ChartManifold::require_stencil(const Point& x, double step) const {
  if (!domain_(x)) throw ChartError("point outside chart domain");
  for (int i = 0; i < dim_; ++i) {
    Point p = x;
    p(i) += step;
    Point q = x;
    q(i) -= step;
    if (!domain_(p) || !domain_(q)) {
      throw ChartError("point too close to the chart boundary for the stencil");
    }
  }
}

double ChartManifold::inner(const Point& x, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& v) const {
  return u.dot(metric_unchecked(x) * v);
}

ChartManifold ChartManifold::euclidean(int dim) {
  return ChartManifold(
      dim, [dim](const Point&) { return Eigen::MatrixXd::Identity(dim, dim); },
      [](const Point& x) { return x.allFinite(); });
}

ChartManifold ChartManifold::round_sphere(double radius, double margin) {
  const double r2 = radius * radius;
  return ChartManifold(
      2,
      [r2](const Point& x) {
        const double s = std::sin(x(0));
        Eigen::Matrix2d g;
        g << r2, 0.0, 0.0, r2 * s * s;
        return Eigen::MatrixXd(g);
      },
      [margin](const Point& x) {
        return x.allFinite() && x(0) >= margin && x(0) <= std::numbers::pi - margin;
      });
}

Christoffel::Christoffel(int dim)
    : blocks_(static_cast<std::size_t>(dim), Eigen::MatrixXd::Zero(dim, dim)) {}

Eigen::MatrixXd jacobian(const std::function<Eigen::VectorXd(const Point&)>& f, const Point& x,
                         const FiniteDifference& fd) {
  const auto d = x.size();
  Eigen::MatrixXd out;
  for (Eigen::Index i = 0; i < d; ++i) {
    Point p = x;
    p(i) += fd.step;
    Point q = x;
    q(i) -= fd.step;
    const Eigen::VectorXd col = (f(p) - f(q)) / (2.0 * fd.step);
    if (i == 0) out.resize(col.size(), d);
    out.col(i) = col;
  }
  return out;
}

Eigen::VectorXd gradient(const ScalarField& f, const Point& x, const FiniteDifference& fd) {
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Point p = x;
    p(i) += fd.step;
    Point q = x;
    q(i) -= fd.step;
    out(i) = (f(p) - f(q)) / (2.0 * fd.step);
  }
  return out;
}

namespace {

// dg[l] = d_l g.
std::vector<Eigen::MatrixXd> metric_derivatives(const ChartManifold& m, const Point& x,
                                                const FiniteDifference& fd) {
  m.require_stencil(x, fd.step);
  std::vector<Eigen::MatrixXd> dg;
  dg.reserve(static_cast<std::size_t>(m.dim()));
  for (int l = 0; l < m.dim(); ++l) {
    Point p = x;
    p(l) += fd.step;
    Point q = x;
    q(l) -= fd.step;
    dg.push_back((m.metric_unchecked(p) - m.metric_unchecked(q)) / (2.0 * fd.step));
  }
  return dg;
}

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& g) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 0.0) {
    throw ChartError("singular metric");
  }
  return ldlt.solve(Eigen::MatrixXd::Identity(g.rows(), g.cols()));
}

Eigen::MatrixXd field_jacobian(const ChartManifold& m,
                               const std::function<Eigen::VectorXd(const Point&)>& f,
                               const Point& x, const FiniteDifference& fd) {
  m.require_stencil(x, fd.step);
  return jacobian(f, x, fd);
}

}  // namespace

Christoffel christoffel(const ChartManifold& m, const Point& x, const FiniteDifference& fd) {
  const int d = m.dim();
  const auto dg = metric_derivatives(m, x, fd);
  const Eigen::MatrixXd ginv = checked_inverse(m.metric(x));
  // Lowered symbols Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij).
  Christoffel out(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      Eigen::VectorXd lowered(d);
      for (int l = 0; l < d; ++l) {
        lowered(l) = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
      }
      const Eigen::VectorXd raised = ginv * lowered;
      for (int k = 0; k < d; ++k) {
        out(k, i, j) = raised(k);
        out(k, j, i) = raised(k);
      }
    }
  }
  return out;
}

Eigen::VectorXd covariant_derivative(const ChartManifold& m, const VectorField& x_field,
                                     const VectorField& y_field, const Point& x,
                                     const FiniteDifference& fd) {
  const Christoffel gamma = christoffel(m, x, fd);
  const Eigen::VectorXd xv = x_field(x);
  const Eigen::VectorXd yv = y_field(x);
  Eigen::VectorXd out = jacobian(y_field.components, x, fd) * xv;
  for (int k = 0; k < m.dim(); ++k) {
    out(k) += xv.dot(gamma.symbol(k) * yv);
  }
  return out;
}

Eigen::MatrixXd lie_derivative_metric(const ChartManifold& m, const VectorField& field,
                                      const Point& x, const FiniteDifference& fd) {
  const auto dg = metric_derivatives(m, x, fd);
  const Eigen::MatrixXd g = m.metric(x);
  const Eigen::VectorXd xv = field(x);
  // dx(k, i) = d_i X^k.
  const Eigen::MatrixXd dx = jacobian(field.components, x, fd);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.dim(), m.dim());
  for (int k = 0; k < m.dim(); ++k) out += xv(k) * dg[static_cast<std::size_t>(k)];
  // g_kj d_i X^k = (dx^T g)_ij ; g_ik d_j X^k = (g dx)_ij.
  out += dx.transpose() * g + g * dx;
  return out;
}

Eigen::VectorXd lie_derivative_oneform(const ChartManifold& m, const VectorField& field,
                                       const OneForm& alpha, const Point& x,
                                       const FiniteDifference& fd) {
  m.require_stencil(x, fd.step);
  const Eigen::VectorXd xv = field(x);
  const Eigen::VectorXd av = alpha(x);
  const Eigen::MatrixXd da = jacobian(alpha.components, x, fd);   // (i, j) = d_j a_i
  const Eigen::MatrixXd dx = jacobian(field.components, x, fd);   // (j, i) = d_i X^j
  return da * xv + dx.transpose() * av;
}

Eigen::MatrixXd lie_derivative_twoform(const ChartManifold& m, const VectorField& field,
                                       const TwoForm& w, const Point& x,
                                       const FiniteDifference& fd) {
  m.require_stencil(x, fd.step);
  const int d = m.dim();
  const Eigen::VectorXd xv = field(x);
  const Eigen::MatrixXd wv = w(x);
  const Eigen::MatrixXd dx = jacobian(field.components, x, fd);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    Point p = x;
    p(k) += fd.step;
    Point q = x;
    q(k) -= fd.step;
    out += xv(k) * (w(p) - w(q)) / (2.0 * fd.step);
  }
  out += dx.transpose() * wv + wv * dx;
  return out;
}

Eigen::VectorXd flat(const ChartManifold& m, const VectorField& field, const Point& x) {
  return m.metric_unchecked(x) * field(x);
}

Eigen::VectorXd sharp(const ChartManifold& m, const OneForm& alpha, const Point& x) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(m.metric(x));
  if (ldlt.info() != Eigen::Success) throw ChartError("singular metric");
  return ldlt.solve(alpha(x));
}

OneForm flat_field(const ChartManifold& m, const VectorField& field) {
  return OneForm{[m, field](const Point& x) -> Eigen::VectorXd { return flat(m, field, x); }};
}

Eigen::MatrixXd exterior_derivative_oneform(const ChartManifold& m, const OneForm& alpha,
                                            const Point& x, const FiniteDifference& fd) {
  const Eigen::MatrixXd da = field_jacobian(m, alpha.components, x, fd);  // (j, i) = d_i a_j
  return da.transpose() - da;
}

TwoForm exterior_derivative_field(const ChartManifold& m, const OneForm& alpha,
                                  const FiniteDifference& fd) {
  return TwoForm{[m, alpha, fd](const Point& x) -> Eigen::MatrixXd {
    return exterior_derivative_oneform(m, alpha, x, fd);
  }};
}

double divergence(const ChartManifold& m, const VectorField& field, const Point& x,
                  const FiniteDifference& fd) {
  m.require_stencil(x, fd.step);
  auto density = [&](const Point& p) { return std::sqrt(m.metric_unchecked(p).determinant()); };
  double flux = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    Point p = x;
    p(i) += fd.step;
    Point q = x;
    q(i) -= fd.step;
    flux += (density(p) * field(p)(i) - density(q) * field(q)(i)) / (2.0 * fd.step);
  }
  const double det = m.metric(x).determinant();
  if (det <= 0.0) throw ChartError("singular metric");
  return flux / std::sqrt(det);
}

ScalarField kinetic_pressure(const ChartManifold& m, const VectorField& field) {
  return ScalarField{[m, field](const Point& x) {
    const Eigen::VectorXd v = field(x);
    return 0.5 * m.inner(x, v, v);
  }};
}

Eigen::VectorXd euler_residual(const ChartManifold& m, const VectorField& field,
                               const ScalarField& pressure, const Point& x,
                               const FiniteDifference& fd) {
  const Eigen::VectorXd accel = covariant_derivative(m, field, field, x, fd);
  return m.metric(x) * accel + gradient(pressure, x, fd);
}

Eigen::VectorXd identity_3_1_residual(const ChartManifold& m, const VectorField& field,
                                      const Point& x, const FiniteDifference& fd) {
  const Eigen::VectorXd lhs = lie_derivative_oneform(m, field, flat_field(m, field), x, fd);
  const Eigen::VectorXd accel = m.metric(x) * covariant_derivative(m, field, field, x, fd);
  return lhs - accel - gradient(kinetic_pressure(m, field), x, fd);
}

namespace {

struct PhaseState {
  Eigen::VectorXd pos;
  Eigen::VectorXd vel;
};

PhaseState geodesic_rhs(const ChartManifold& m, const PhaseState& s, const FiniteDifference& fd) {
  const Christoffel gamma = christoffel(m, s.pos, fd);
  Eigen::VectorXd acc(m.dim());
  for (int k = 0; k < m.dim(); ++k) acc(k) = -s.vel.dot(gamma.symbol(k) * s.vel);
  return {s.vel, acc};
}

}  // namespace

DiscreteCurve geodesic_integrate(const ChartManifold& m, const Point& x0,
                                 const Eigen::VectorXd& u0, double total_time, int steps,
                                 const FiniteDifference& fd) {
  if (steps < 1) throw std::invalid_argument("geodesic_integrate needs at least one step");
  if (x0.size() != m.dim() || u0.size() != m.dim()) {
    throw std::invalid_argument("initial data dimension mismatch");
  }
  const double dt = total_time / steps;
  DiscreteCurve curve;
  PhaseState s{x0, u0};
  curve.times.push_back(0.0);
  curve.points.push_back(s.pos);
  curve.velocities.push_back(s.vel);
  auto add = [](const PhaseState& a, const PhaseState& k, double h) {
    return PhaseState{a.pos + h * k.pos, a.vel + h * k.vel};
  };
  try {
    for (int n = 0; n < steps; ++n) {
      const PhaseState k1 = geodesic_rhs(m, s, fd);
      const PhaseState k2 = geodesic_rhs(m, add(s, k1, 0.5 * dt), fd);
      const PhaseState k3 = geodesic_rhs(m, add(s, k2, 0.5 * dt), fd);
      const PhaseState k4 = geodesic_rhs(m, add(s, k3, dt), fd);
      PhaseState next{s.pos + dt / 6.0 * (k1.pos + 2.0 * k2.pos + 2.0 * k3.pos + k4.pos),
                      s.vel + dt / 6.0 * (k1.vel + 2.0 * k2.vel + 2.0 * k3.vel + k4.vel)};
      m.require_stencil(next.pos, fd.step);
      s = std::move(next);
      curve.times.push_back((n + 1) * dt);
      curve.points.push_back(s.pos);
      curve.velocities.push_back(s.vel);
    }
  } catch (const ChartError&) {
    curve.exited = true;
  }
  return curve;
}

DiscreteCurve flow_integrate(const ChartManifold& m, const VectorField& field, const Point& x0,
                             double total_time, int steps) {
  if (steps < 1) throw std::invalid_argument("flow_integrate needs at least one step");
  const double dt = total_time / steps;
  DiscreteCurve curve;
  Point x = x0;
  curve.times.push_back(0.0);
  curve.points.push_back(x);
  curve.velocities.push_back(field(x));
  for (int n = 0; n < steps; ++n) {
    const Eigen::VectorXd k1 = field(x);
    const Eigen::VectorXd k2 = field(x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = field(x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = field(x + dt * k3);
    Point next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!m.contains(next)) {
      curve.exited = true;
      break;
    }
    x = std::move(next);
    curve.times.push_back((n + 1) * dt);
    curve.points.push_back(x);
    curve.velocities.push_back(field(x));
  }
  return curve;
}

double clairaut_check(const ChartManifold& m, const DiscreteCurve& curve,
                      const VectorField& field) {
  if (curve.points.empty()) return 0.0;
  auto momentum = [&](std::size_t n) {
    return m.inner(curve.points[n], curve.velocities[n], field(curve.points[n]));
  };
  const double initial = momentum(0);
  double worst = 0.0;
  for (std::size_t n = 1; n < curve.points.size(); ++n) {
    worst = std::max(worst, std::abs(momentum(n) - initial));
  }
  return worst;
}

std::vector<double> SurfaceOfRevolution::geodesic_parallels(int scan_intervals) const {
  std::vector<double> out;
  const double dz = (z_max - z_min) / scan_intervals;
  for (int n = 0; n < scan_intervals; ++n) {
    double lo = z_min + n * dz;
    double hi = lo + dz;
    double flo = radius_derivative(lo);
    const double fhi = radius_derivative(hi);
    if (flo == 0.0) {
      if (out.empty() || std::abs(out.back() - lo) > 0.5 * dz) out.push_back(lo);
      continue;
    }
    if (flo * fhi > 0.0) continue;
    if (fhi == 0.0) continue;  // picked up as the next interval's left end
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = radius_derivative(mid);
      if ((fmid < 0.0) == (flo < 0.0) && fmid != 0.0) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

SurfaceOfRevolution surface_of_revolution(std::function<double(double)> radius,
                                          std::function<double(double)> radius_derivative,
                                          double z_min, double z_max) {
  if (!(z_max > z_min)) throw std::invalid_argument("empty z range");
  constexpr int kSamples = 2000;
  for (int n = 0; n <= kSamples; ++n) {
    const double z = z_min + (z_max - z_min) * n / kSamples;
    if (!(radius(z) > 0.0)) {
      std::ostringstream msg;
      msg << "profile radius must be positive; rho(" << z << ") = " << radius(z);
      throw std::invalid_argument(msg.str());
    }
  }
  ChartManifold manifold(
      2,
      [radius, radius_derivative](const Point& x) {
        const double r = radius(x(0));
        const double dr = radius_derivative(x(0));
        Eigen::Matrix2d g;
        g << 1.0 + dr * dr, 0.0, 0.0, r * r;
        return Eigen::MatrixXd(g);
      },
      [z_min, z_max](const Point& x) {
        return x.allFinite() && x(0) >= z_min && x(0) <= z_max;
      });
  VectorField killing{[](const Point&) { return Eigen::VectorXd(Eigen::Vector2d(0.0, 1.0)); }};
  ScalarField pressure{[radius](const Point& x) {
    const double r = radius(x(0));
    return 0.5 * r * r;
  }};
  return SurfaceOfRevolution{std::move(radius), std::move(radius_derivative), z_min, z_max,
                             std::move(manifold), std::move(killing), std::move(pressure)};
}

}  // namespace qfluid
