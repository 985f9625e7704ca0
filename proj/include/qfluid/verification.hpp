#pragma once

// Randomized residual sweeps for the Schroedinger field of a Hamiltonian.
// Thresholds are part of the options, never of the geometry routines.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfluid/linear_core.hpp"
#include "qfluid/riemannian_core.hpp"

namespace qfluid {

struct CheckResult {
  std::string name;
  /// Worst residual over the sweep.
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  int samples = 100;
  std::uint64_t seed = 7;
  double tol_killing = 1e-5;
  double tol_euler = 1e-5;
  double tol_orthogonality = 1e-6;
  double tol_divergence = 1e-6;
  double tol_dispersion = 1e-8;
  double tol_lie_oneform = 1e-5;
  double tol_vorticity_transport = 1e-4;
  FiniteDifference fd;
};

/// Killing, divergence, Euler, orthogonality, dispersion-identity and
/// vorticity-transport residuals at `samples` Haar-random states.
std::vector<CheckResult> verify_schrodinger_fluid(const HermitianOperator& h,
                                                  const VerifyOptions& options);

nlohmann::json to_json(const CheckResult& check);
CheckResult check_from_json(const nlohmann::json& j);

/// Dual-metric norm sqrt(a^T g^{-1} a) of a covector.
double covector_norm(const Eigen::MatrixXd& metric, const Eigen::VectorXd& covector);

}  // namespace qfluid
