#pragma once

// Spin-s wavefunctions as polynomials chi(zeta) of degree <= 2s on the
// Riemann sphere, their Madelung-Bohm velocity form Im d log chi, and
// circulation of that form around closed contours.

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace qfluid::spin {

using Complex = std::complex<double>;

/// A query point or contour came closer to a zero of chi than the exclusion radius.
class NearRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root clustering changes between the fine and the coarse radius.
class DivisorAmbiguity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kRootExclusion = 1e-6;

class SpinWaveFunction {
 public:
  /// coeffs[k] multiplies zeta^k; needs 2s + 1 entries, not all zero.
  SpinWaveFunction(int two_s, std::vector<Complex> coeffs);

  /// leading * prod (zeta - a)^mu; sum of mu must not exceed two_s.
  static SpinWaveFunction from_roots(int two_s, const std::vector<std::pair<Complex, int>>& roots,
                                     Complex leading = 1.0);
  /// Image of a linear operator; unlike the constructor this accepts the
  /// zero polynomial (e.g. S_z applied to chi_s for integer s).
  static SpinWaveFunction operator_image(int two_s, std::vector<Complex> coeffs);
  /// Normalized basis element chi_k = sqrt(binom(2s, k)) zeta^k.
  static SpinWaveFunction basis(int two_s, int k);

  int two_s() const { return two_s_; }
  double spin() const { return 0.5 * two_s_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// Highest k with a non-negligible coefficient.
  int effective_degree() const;
  bool is_zero() const;

  Complex value(Complex zeta) const;
  Complex derivative(Complex zeta) const;

  /// <chi_j, chi_k> = delta_jk / binom(2s, k).
  Complex inner(const SpinWaveFunction& other) const;
  double norm() const;
  SpinWaveFunction normalized() const;

 private:
  struct Unchecked {};
  SpinWaveFunction(Unchecked, int two_s, std::vector<Complex> coeffs);
  int two_s_;
  std::vector<Complex> coeffs_;
};

double binomial(int n, int k);

/// c_k -> (k - s) c_k.
SpinWaveFunction sz_apply(const SpinWaveFunction& chi);

class SU2Element {
 public:
  /// [[a, b], [-conj(b), conj(a)]]; throws unless |a|^2 + |b|^2 = 1 to 1e-12.
  SU2Element(Complex a, Complex b);
  static SU2Element identity() { return {1.0, 0.0}; }
  /// diag(exp(-i alpha/2), exp(i alpha/2)).
  static SU2Element diagonal(double alpha);
  /// Validates unitarity and unit determinant of a general 2x2 matrix.
  static SU2Element from_matrix(const Eigen::Matrix2cd& m);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Eigen::Matrix2cd matrix() const;
  SU2Element inverse() const;
  SU2Element operator*(const SU2Element& other) const;

  /// Image of zeros under the action: zeta -> (conj(a) zeta - conj(b)) / (b zeta + a).
  Complex mobius(Complex zeta) const;

 private:
  Complex a_;
  Complex b_;
};

/// (rho(g) P)(z) = P(g^{-1} z) on homogeneous representatives, dehomogenized
/// at z_0 = 1. On chi_k the diagonal element diag(exp(-ia/2), exp(ia/2)) acts
/// by exp(-i (k - s) a), so d/da rho = -i S_z.
SpinWaveFunction su2_act(const SU2Element& g, const SpinWaveFunction& chi);

/// Components (v_x, v_y) of Im[(chi'/chi)(dx + i dy)] at zeta.
Eigen::Vector2d madelung_velocity(const SpinWaveFunction& chi, Complex zeta,
                                  double exclusion = kRootExclusion);

/// d_x v_y - d_y v_x and d_x v_x + d_y v_y by fourth-order central differences.
double madelung_curl(const SpinWaveFunction& chi, Complex zeta, double step = 1e-4);
double madelung_divergence(const SpinWaveFunction& chi, Complex zeta, double step = 1e-4);

struct CircleContour {
  Complex center;
  double radius;
  int nodes = 256;
};

struct PolygonContour {
  std::vector<Complex> vertices;
  int nodes_per_edge = 32;
};

class Contour {
 public:
  static Contour circle(Complex center, double radius, int nodes = 256,
                        bool counterclockwise = true);
  static Contour polygon(std::vector<Complex> vertices, bool counterclockwise = true);

  bool counterclockwise() const { return counterclockwise_; }
  const std::variant<CircleContour, PolygonContour>& shape() const { return shape_; }
  /// Euclidean distance from zeta to the curve.
  double distance_to(Complex zeta) const;
  /// gamma(tau), tau in [0, 1], gamma(0) = gamma(1).
  Complex at(double tau) const;
  int node_count() const;

 private:
  Contour(std::variant<CircleContour, PolygonContour> shape, bool ccw)
      : shape_(std::move(shape)), counterclockwise_(ccw) {}
  std::variant<CircleContour, PolygonContour> shape_;
  bool counterclockwise_;
};

/// (1/2 pi) Im of the contour integral of chi'/chi. Circles use the
/// trapezoidal rule, polygons 32-point Gauss-Legendre per edge.
double circulation(const SpinWaveFunction& chi, const Contour& contour,
                   double exclusion = kRootExclusion);

struct TotalCirculation {
  double value = 0.0;
  int effective_degree = 0;
  /// 2s - effective degree; that much vorticity sits at infinity.
  int deficit = 0;
  std::string warning;
};

/// Circulation around the origin-centred circle of radius 2 max|root| + 1.
TotalCirculation total_spin_circulation(const SpinWaveFunction& chi, int nodes = 256);

struct DivisorEntry {
  Complex root;
  int multiplicity;
};
using VorticityDivisor = std::vector<DivisorEntry>;

/// Companion-matrix roots, Newton polished, clustered within
/// 1e-6 (1 + max |root|). Sorted by real part, then imaginary part.
VorticityDivisor vorticity_divisor(const SpinWaveFunction& chi);

struct QuantizationCheck {
  double value;
  long nearest;
  double deviation;
  bool integral;
};

std::vector<QuantizationCheck> bohr_sommerfeld_check(const SpinWaveFunction& chi,
                                                     const std::vector<Contour>& contours,
                                                     double tolerance = 1e-8);

/// {"two_s": n, "coeffs_re": [...], "coeffs_im": [...]} or
/// {"roots": [[re, im, mult], ...], "two_s": optional}.
SpinWaveFunction wavefunction_from_json(const nlohmann::json& j);
nlohmann::json wavefunction_to_json(const SpinWaveFunction& chi);
/// {"circle": {"center": [re, im], "radius": r, "nodes": 256}} or
/// {"polygon": {"vertices": [[re, im], ...]}}; optional "clockwise": true.
Contour contour_from_json(const nlohmann::json& j);
nlohmann::json divisor_to_json(const VorticityDivisor& divisor);

}  // namespace qfluid::spin
