#include "qfluid/verification.hpp"

#include <cmath>

#include "qfluid/projective_geometry.hpp"
#include "qfluid/random.hpp"
#include "qfluid/schrodinger_fluid.hpp"

namespace qfluid {

double covector_norm(const Eigen::MatrixXd& metric, const Eigen::VectorXd& covector) {
  return std::sqrt(std::max(0.0, covector.dot(metric.ldlt().solve(covector))));
}

std::vector<CheckResult> verify_schrodinger_fluid(const HermitianOperator& h,
                                                  const VerifyOptions& options) {
  const int dim = static_cast<int>(h.dim());
  const ChartManifold m = fubini_study_chart(dim - 1);
  const FiniteDifference& fd = options.fd;
  Rng rng(options.seed);

  double killing = 0.0, divergence_max = 0.0, euler = 0.0, orthogonal = 0.0;
  double dispersion_gap = 0.0, lie_oneform = 0.0, transport = 0.0;
  for (int s = 0; s < options.samples; ++s) {
    const ProjectivePoint point(random_state(rng, dim));
    const int k = point.chart_index();
    const Point x = chart_coordinates(point.representative().amplitudes(), k);
    const VectorField field = fundamental_field(h, k);
    const ScalarField p = pressure_field(h, k);
    const Eigen::MatrixXd g = m.metric(x);

    killing = std::max(killing, lie_derivative_metric(m, field, x, fd).cwiseAbs().maxCoeff());
    divergence_max = std::max(divergence_max, std::abs(divergence(m, field, x, fd)));
    euler = std::max(euler, covector_norm(g, euler_residual(m, field, p, x, fd)));

    const Eigen::VectorXd grad = g.ldlt().solve(gradient(p, x, fd));
    orthogonal = std::max(orthogonal, std::abs(grad.dot(g * field(x))));

    const double via_metric = field(x).dot(g * field(x));
    dispersion_gap = std::max(
        dispersion_gap, std::abs(via_metric - dispersion_squared(h, point.representative())));

    const OneForm velocity_form = flat_field(m, field);
    lie_oneform = std::max(
        lie_oneform, lie_derivative_oneform(m, field, velocity_form, x, fd).cwiseAbs().maxCoeff());
    const TwoForm vorticity = exterior_derivative_field(m, velocity_form, fd);
    transport = std::max(
        transport, lie_derivative_twoform(m, field, vorticity, x, fd).cwiseAbs().maxCoeff());
  }

  auto make = [](std::string name, double value, double threshold) {
    return CheckResult{std::move(name), value, threshold, value < threshold};
  };
  return {
      make("killing_residual", killing, options.tol_killing),
      make("divergence", divergence_max, options.tol_divergence),
      make("euler_residual", euler, options.tol_euler),
      make("pressure_gradient_orthogonality", orthogonal, options.tol_orthogonality),
      make("dispersion_identity", dispersion_gap, options.tol_dispersion),
      make("lie_derivative_velocity_form", lie_oneform, options.tol_lie_oneform),
      make("vorticity_transport", transport, options.tol_vorticity_transport),
  };
}

nlohmann::json to_json(const CheckResult& check) {
  return {{"name", check.name},
          {"value", check.value},
          {"threshold", check.threshold},
          {"passed", check.passed}};
}

CheckResult check_from_json(const nlohmann::json& j) {
  return {j.at("name").get<std::string>(), j.at("value").get<double>(),
          j.at("threshold").get<double>(), j.at("passed").get<bool>()};
}

}  // namespace qfluid
