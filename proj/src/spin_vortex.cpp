#include "qfluid/spin_vortex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

namespace qfluid::spin {

namespace {

using Poly = std::vector<Complex>;

// Neumaier-compensated complex accumulator; summation order is fixed by the caller.
class CompensatedSum {
 public:
  void add(Complex x) {
    add_part(re_, re_c_, x.real());
    add_part(im_, im_c_, x.imag());
  }
  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

Poly multiply(const Poly& p, const Poly& q) {
  Poly out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  }
  return out;
}

Complex horner(const Poly& p, Complex x) {
  Complex acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex horner_derivative(const Poly& p, Complex x) {
  Complex acc = 0.0;
  for (std::size_t k = p.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * p[k];
  return acc;
}

double max_abs(const std::vector<Complex>& c) {
  double m = 0.0;
  for (const auto& x : c) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

SpinWaveFunction::SpinWaveFunction(int two_s, std::vector<Complex> coeffs)
    : SpinWaveFunction(Unchecked{}, two_s, std::move(coeffs)) {
  if (is_zero()) throw std::invalid_argument("wavefunction is identically zero");
}

SpinWaveFunction SpinWaveFunction::operator_image(int two_s, std::vector<Complex> coeffs) {
  return SpinWaveFunction(Unchecked{}, two_s, std::move(coeffs));
}

bool SpinWaveFunction::is_zero() const { return max_abs(coeffs_) == 0.0; }

SpinWaveFunction::SpinWaveFunction(Unchecked, int two_s, std::vector<Complex> coeffs)
    : two_s_(two_s), coeffs_(std::move(coeffs)) {
  if (two_s_ < 0) throw std::invalid_argument("2s must be non-negative");
  if (static_cast<int>(coeffs_.size()) != two_s_ + 1) {
    throw std::invalid_argument("a spin-s wavefunction needs 2s + 1 coefficients");
  }
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("non-finite coefficient");
    }
  }
}

SpinWaveFunction SpinWaveFunction::from_roots(int two_s,
                                              const std::vector<std::pair<Complex, int>>& roots,
                                              Complex leading) {
  Poly p{leading};
  int degree = 0;
  for (const auto& [root, mult] : roots) {
    if (mult < 1) throw std::invalid_argument("root multiplicity must be positive");
    for (int m = 0; m < mult; ++m) p = multiply(p, Poly{-root, 1.0});
    degree += mult;
  }
  if (degree > two_s) throw std::invalid_argument("more roots than 2s");
  p.resize(static_cast<std::size_t>(two_s) + 1, 0.0);
  return SpinWaveFunction(two_s, std::move(p));
}

SpinWaveFunction SpinWaveFunction::basis(int two_s, int k) {
  if (k < 0 || k > two_s) throw std::invalid_argument("basis index out of range");
  std::vector<Complex> c(static_cast<std::size_t>(two_s) + 1, 0.0);
  c[static_cast<std::size_t>(k)] = std::sqrt(binomial(two_s, k));
  return SpinWaveFunction(two_s, std::move(c));
}

int SpinWaveFunction::effective_degree() const {
  const double cutoff = 1e-14 * max_abs(coeffs_);
  for (int k = two_s_; k >= 0; --k) {
    if (std::abs(coeffs_[static_cast<std::size_t>(k)]) > cutoff) return k;
  }
  return 0;
}

Complex SpinWaveFunction::value(Complex zeta) const { return horner(coeffs_, zeta); }

Complex SpinWaveFunction::derivative(Complex zeta) const {
  return horner_derivative(coeffs_, zeta);
}

Complex SpinWaveFunction::inner(const SpinWaveFunction& other) const {
  if (other.two_s_ != two_s_) throw std::invalid_argument("spin mismatch in inner product");
  Complex acc = 0.0;
  for (int k = 0; k <= two_s_; ++k) {
    const auto i = static_cast<std::size_t>(k);
    acc += std::conj(coeffs_[i]) * other.coeffs_[i] / binomial(two_s_, k);
  }
  return acc;
}

double SpinWaveFunction::norm() const { return std::sqrt(inner(*this).real()); }

SpinWaveFunction SpinWaveFunction::normalized() const {
  if (is_zero()) throw std::invalid_argument("cannot normalize the zero polynomial");
  const double n = norm();
  std::vector<Complex> c = coeffs_;
  for (auto& x : c) x /= n;
  return SpinWaveFunction(two_s_, std::move(c));
}

SpinWaveFunction sz_apply(const SpinWaveFunction& chi) {
  std::vector<Complex> c = chi.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] *= 0.5 * (2.0 * static_cast<double>(k) - chi.two_s());
  }
  return SpinWaveFunction::operator_image(chi.two_s(), std::move(c));
}

SU2Element::SU2Element(Complex a, Complex b) : a_(a), b_(b) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12) {
    throw std::invalid_argument("SU(2) element requires |a|^2 + |b|^2 = 1");
  }
}

SU2Element SU2Element::diagonal(double alpha) {
  return {std::polar(1.0, -0.5 * alpha), 0.0};
}

SU2Element SU2Element::from_matrix(const Eigen::Matrix2cd& m) {
  const double unitarity = (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  const double det = std::abs(m.determinant() - 1.0);
  if (unitarity > 1e-12 || det > 1e-12) {
    throw std::invalid_argument("matrix is not in SU(2)");
  }
  return {m(0, 0), m(0, 1)};
}

Eigen::Matrix2cd SU2Element::matrix() const {
  Eigen::Matrix2cd m;
  m << a_, b_, -std::conj(b_), std::conj(a_);
  return m;
}

SU2Element SU2Element::inverse() const { return {std::conj(a_), -b_}; }

SU2Element SU2Element::operator*(const SU2Element& other) const {
  const Eigen::Matrix2cd m = matrix() * other.matrix();
  // Renormalize to absorb round-off in |a|^2 + |b|^2.
  const double n = std::sqrt(std::norm(m(0, 0)) + std::norm(m(0, 1)));
  return {m(0, 0) / n, m(0, 1) / n};
}

Complex SU2Element::mobius(Complex zeta) const {
  return (std::conj(a_) * zeta - std::conj(b_)) / (b_ * zeta + a_);
}

SpinWaveFunction su2_act(const SU2Element& g, const SpinWaveFunction& chi) {
  // g^{-1} (z0, z1) = (conj(a) z0 - b z1, conj(b) z0 + a z1); at z0 = 1:
  const Poly first{std::conj(g.a()), -g.b()};
  const Poly second{std::conj(g.b()), g.a()};
  const int n = chi.two_s();
  Poly out(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    const Complex c = chi.coeffs()[static_cast<std::size_t>(k)];
    if (c == 0.0) continue;
    Poly term{c};
    for (int m = 0; m < n - k; ++m) term = multiply(term, first);
    for (int m = 0; m < k; ++m) term = multiply(term, second);
    for (std::size_t i = 0; i < term.size(); ++i) out[i] += term[i];
  }
  return SpinWaveFunction::operator_image(n, std::move(out));
}

namespace {

Complex log_derivative(const SpinWaveFunction& chi, Complex zeta, double exclusion) {
  const Complex value = chi.value(zeta);
  const Complex deriv = chi.derivative(zeta);
  // |chi / chi'| approximates the distance to the nearest simple zero.
  if (std::abs(value) <= exclusion * std::abs(deriv) || value == 0.0) {
    std::ostringstream msg;
    msg << "evaluation at " << zeta << " is within the exclusion radius of a zero";
    throw NearRootError(msg.str());
  }
  return deriv / value;
}

Eigen::Vector2d velocity_unchecked(const SpinWaveFunction& chi, Complex zeta) {
  const Complex f = chi.derivative(zeta) / chi.value(zeta);
  return {f.imag(), f.real()};
}

Eigen::Vector2d fourth_order(const SpinWaveFunction& chi, Complex zeta, Complex dir, double h) {
  return (-velocity_unchecked(chi, zeta + 2.0 * h * dir) +
          8.0 * velocity_unchecked(chi, zeta + h * dir) -
          8.0 * velocity_unchecked(chi, zeta - h * dir) +
          velocity_unchecked(chi, zeta - 2.0 * h * dir)) /
         (12.0 * h);
}

}  // namespace

Eigen::Vector2d madelung_velocity(const SpinWaveFunction& chi, Complex zeta, double exclusion) {
  const Complex f = log_derivative(chi, zeta, exclusion);
  // Im[(u + iv)(dx + i dy)] = v dx + u dy.
  return {f.imag(), f.real()};
}

double madelung_curl(const SpinWaveFunction& chi, Complex zeta, double step) {
  madelung_velocity(chi, zeta, 4.0 * step);
  const Eigen::Vector2d dx = fourth_order(chi, zeta, 1.0, step);
  const Eigen::Vector2d dy = fourth_order(chi, zeta, Complex(0.0, 1.0), step);
  return dx(1) - dy(0);
}

double madelung_divergence(const SpinWaveFunction& chi, Complex zeta, double step) {
  madelung_velocity(chi, zeta, 4.0 * step);
  const Eigen::Vector2d dx = fourth_order(chi, zeta, 1.0, step);
  const Eigen::Vector2d dy = fourth_order(chi, zeta, Complex(0.0, 1.0), step);
  return dx(0) + dy(1);
}

Contour Contour::circle(Complex center, double radius, int nodes, bool counterclockwise) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
  if (nodes < 3) throw std::invalid_argument("circle needs at least 3 nodes");
  return Contour(CircleContour{center, radius, nodes}, counterclockwise);
}

Contour Contour::polygon(std::vector<Complex> vertices, bool counterclockwise) {
  if (vertices.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  if (vertices.front() == vertices.back()) vertices.pop_back();
  return Contour(PolygonContour{std::move(vertices), 32}, counterclockwise);
}

double Contour::distance_to(Complex zeta) const {
  if (const auto* c = std::get_if<CircleContour>(&shape_)) {
    return std::abs(std::abs(zeta - c->center) - c->radius);
  }
  const auto& poly = std::get<PolygonContour>(shape_);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < poly.vertices.size(); ++e) {
    const Complex p = poly.vertices[e];
    const Complex q = poly.vertices[(e + 1) % poly.vertices.size()];
    const Complex d = q - p;
    const double t = std::clamp(std::real(std::conj(d) * (zeta - p)) / std::norm(d), 0.0, 1.0);
    best = std::min(best, std::abs(zeta - (p + t * d)));
  }
  return best;
}

Complex Contour::at(double tau) const {
  const double s = counterclockwise_ ? tau : 1.0 - tau;
  if (const auto* c = std::get_if<CircleContour>(&shape_)) {
    return c->center + std::polar(c->radius, 2.0 * std::numbers::pi * s);
  }
  const auto& poly = std::get<PolygonContour>(shape_);
  const double scaled = s * static_cast<double>(poly.vertices.size());
  const auto edge = std::min(static_cast<std::size_t>(scaled), poly.vertices.size() - 1);
  const double frac = scaled - static_cast<double>(edge);
  const Complex p = poly.vertices[edge];
  const Complex q = poly.vertices[(edge + 1) % poly.vertices.size()];
  return p + frac * (q - p);
}

int Contour::node_count() const {
  if (const auto* c = std::get_if<CircleContour>(&shape_)) return c->nodes;
  const auto& poly = std::get<PolygonContour>(shape_);
  return static_cast<int>(poly.vertices.size()) * poly.nodes_per_edge;
}

VorticityDivisor vorticity_divisor(const SpinWaveFunction& chi) {
  if (chi.is_zero()) throw std::invalid_argument("the zero polynomial has no divisor");
  const auto& c = chi.coeffs();
  const int degree = chi.effective_degree();
  const double cutoff = 1e-14 * max_abs(c);
  int low = 0;
  while (low < degree && std::abs(c[static_cast<std::size_t>(low)]) <= cutoff) ++low;

  VorticityDivisor divisor;
  if (low > 0) divisor.push_back({0.0, low});
  const int reduced = degree - low;
  if (reduced == 0) return divisor;

  Poly q(c.begin() + low, c.begin() + degree + 1);
  const Complex lead = q.back();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(reduced, reduced);
  for (int i = 1; i < reduced; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < reduced; ++i) companion(i, reduced - 1) = -q[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigensolver failed");

  std::vector<Complex> roots(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + reduced);
  for (auto& r : roots) {
    for (int it = 0; it < 8; ++it) {
      const Complex d = horner_derivative(q, r);
      if (d == 0.0) break;
      const Complex next = r - horner(q, r) / d;
      if (!(std::abs(horner(q, next)) < std::abs(horner(q, r)))) break;
      r = next;
    }
  }

  double max_mod = 0.0;
  for (const auto& r : roots) max_mod = std::max(max_mod, std::abs(r));
  const double fine = 1e-6 * (1.0 + max_mod);

  // Single-linkage clustering; labels index the cluster of each root.
  auto cluster = [&](double radius) {
    std::vector<int> label(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) label[i] = static_cast<int>(i);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
          if (std::abs(roots[i] - roots[j]) <= radius && label[i] != label[j]) {
            const int lo = std::min(label[i], label[j]);
            const int hi = std::max(label[i], label[j]);
            for (auto& l : label) {
              if (l == hi) l = lo;
            }
            changed = true;
          }
        }
      }
    }
    return label;
  };
  const auto fine_labels = cluster(fine);
  const auto coarse_labels = cluster(100.0 * fine);
  auto count = [](std::vector<int> labels) {
    std::sort(labels.begin(), labels.end());
    return std::unique(labels.begin(), labels.end()) - labels.begin();
  };
  if (count(fine_labels) != count(coarse_labels)) {
    throw DivisorAmbiguity("root clusters merge between radius " + std::to_string(fine) +
                           " and " + std::to_string(100.0 * fine));
  }

  std::vector<int> seen;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const int l = fine_labels[i];
    if (std::find(seen.begin(), seen.end(), l) != seen.end()) continue;
    seen.push_back(l);
    Complex mean = 0.0;
    int mult = 0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (fine_labels[j] == l) {
        mean += roots[j];
        ++mult;
      }
    }
    mean /= static_cast<double>(mult);
    // Multiplicity-aware Newton polish from the cluster centroid.
    for (int it = 0; it < 8; ++it) {
      const Complex d = horner_derivative(q, mean);
      if (d == 0.0) break;
      const Complex next = mean - static_cast<double>(mult) * horner(q, mean) / d;
      if (!(std::abs(horner(q, next)) < std::abs(horner(q, mean)))) break;
      mean = next;
    }
    divisor.push_back({mean, mult});
  }
  std::sort(divisor.begin(), divisor.end(), [](const DivisorEntry& x, const DivisorEntry& y) {
    if (x.root.real() != y.root.real()) return x.root.real() < y.root.real();
    return x.root.imag() < y.root.imag();
  });
  return divisor;
}

namespace {

void require_clear_of_roots(const SpinWaveFunction& chi, const Contour& contour,
                            double exclusion) {
  if (chi.effective_degree() == 0) return;
  for (const auto& entry : vorticity_divisor(chi)) {
    const double d = contour.distance_to(entry.root);
    if (d <= exclusion) {
      std::ostringstream msg;
      msg << "contour passes within " << d << " of the zero " << entry.root;
      throw NearRootError(msg.str());
    }
  }
}

}  // namespace

double circulation(const SpinWaveFunction& chi, const Contour& contour, double exclusion) {
  if (chi.is_zero()) throw NearRootError("the zero polynomial has no velocity form");
  require_clear_of_roots(chi, contour, exclusion);
  CompensatedSum sum;
  if (const auto* c = std::get_if<CircleContour>(&contour.shape())) {
    // Trapezoid on zeta = c + r exp(2 pi i tau): dzeta = 2 pi i (zeta - c) dtau.
    for (int m = 0; m < c->nodes; ++m) {
      const Complex offset = std::polar(c->radius, 2.0 * std::numbers::pi * m / c->nodes);
      const Complex zeta = c->center + offset;
      sum.add(chi.derivative(zeta) / chi.value(zeta) * offset);
    }
    const Complex integral = sum.value() * Complex(0.0, 2.0 * std::numbers::pi) /
                             static_cast<double>(c->nodes);
    const double value = integral.imag() / (2.0 * std::numbers::pi);
    return contour.counterclockwise() ? value : -value;
  }
  const auto& poly = std::get<PolygonContour>(contour.shape());
  using Rule = boost::math::quadrature::gauss<double, 32>;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  const std::size_t nv = poly.vertices.size();
  for (std::size_t e = 0; e < nv; ++e) {
    const Complex p = poly.vertices[e];
    const Complex q = poly.vertices[(e + 1) % nv];
    const Complex half = 0.5 * (q - p);
    const Complex mid = 0.5 * (p + q);
    // Boost stores the non-negative half of the symmetric rule.
    for (std::size_t n = 0; n < abscissa.size(); ++n) {
      const double x = abscissa[n];
      const double w = weights[n];
      const Complex plus = mid + x * half;
      sum.add(w * chi.derivative(plus) / chi.value(plus) * half);
      if (x != 0.0) {
        const Complex minus = mid - x * half;
        sum.add(w * chi.derivative(minus) / chi.value(minus) * half);
      }
    }
  }
  const double value = sum.value().imag() / (2.0 * std::numbers::pi);
  return contour.counterclockwise() ? value : -value;
}

TotalCirculation total_spin_circulation(const SpinWaveFunction& chi, int nodes) {
  TotalCirculation out;
  out.effective_degree = chi.effective_degree();
  out.deficit = chi.two_s() - out.effective_degree;
  double max_mod = 0.0;
  if (out.effective_degree > 0) {
    for (const auto& entry : vorticity_divisor(chi)) {
      max_mod = std::max(max_mod, std::abs(entry.root));
    }
  }
  out.value = circulation(chi, Contour::circle(0.0, 2.0 * max_mod + 1.0, nodes));
  if (out.deficit > 0) {
    out.warning = "degree " + std::to_string(out.effective_degree) + " < 2s = " +
                  std::to_string(chi.two_s()) + ": vorticity " + std::to_string(out.deficit) +
                  " sits at infinity";
  }
  return out;
}

std::vector<QuantizationCheck> bohr_sommerfeld_check(const SpinWaveFunction& chi,
                                                     const std::vector<Contour>& contours,
                                                     double tolerance) {
  std::vector<QuantizationCheck> out;
  out.reserve(contours.size());
  for (const auto& contour : contours) {
    const double value = circulation(chi, contour);
    const long nearest = std::lround(value);
    const double deviation = std::abs(value - static_cast<double>(nearest));
    out.push_back({value, nearest, deviation, deviation <= tolerance});
  }
  return out;
}

namespace {

std::vector<double> number_array(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw std::invalid_argument("missing array field \"" + key + "\"");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < j.at(key).size(); ++i) {
    const auto& x = j.at(key)[i];
    if (!x.is_number()) {
      throw std::invalid_argument(key + "[" + std::to_string(i) + "] is not a number");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

Complex complex_pair(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.size() < 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument(what + " must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

SpinWaveFunction wavefunction_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("wavefunction JSON must be an object");
  if (j.contains("roots")) {
    std::vector<std::pair<Complex, int>> roots;
    int total = 0;
    const auto& arr = j.at("roots");
    if (!arr.is_array()) throw std::invalid_argument("\"roots\" must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& r = arr[i];
      if (!r.is_array() || r.size() != 3 || !r[2].is_number_integer()) {
        throw std::invalid_argument("roots[" + std::to_string(i) + "] must be [re, im, mult]");
      }
      const Complex root = complex_pair(r, "roots[" + std::to_string(i) + "]");
      const int mult = r[2].get<int>();
      roots.emplace_back(root, mult);
      total += mult;
    }
    const int two_s = j.contains("two_s") ? j.at("two_s").get<int>() : total;
    const Complex leading = j.contains("leading") ? complex_pair(j.at("leading"), "leading")
                                                  : Complex(1.0);
    return SpinWaveFunction::from_roots(two_s, roots, leading);
  }
  if (!j.contains("two_s") || !j.at("two_s").is_number_integer()) {
    throw std::invalid_argument("missing integer field \"two_s\"");
  }
  const int two_s = j.at("two_s").get<int>();
  const auto re = number_array(j, "coeffs_re");
  const auto im = j.contains("coeffs_im") ? number_array(j, "coeffs_im")
                                          : std::vector<double>(re.size(), 0.0);
  if (re.size() != static_cast<std::size_t>(two_s) + 1 || im.size() != re.size()) {
    throw std::invalid_argument("coefficient arrays must have 2s + 1 = " +
                                std::to_string(two_s + 1) + " entries");
  }
  std::vector<Complex> c(re.size());
  for (std::size_t k = 0; k < re.size(); ++k) c[k] = {re[k], im[k]};
  return SpinWaveFunction(two_s, std::move(c));
}

nlohmann::json wavefunction_to_json(const SpinWaveFunction& chi) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (const auto& c : chi.coeffs()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"two_s", chi.two_s()}, {"coeffs_re", re}, {"coeffs_im", im}};
}

Contour contour_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("contour JSON must be an object");
  const bool ccw = !(j.contains("clockwise") && j.at("clockwise").get<bool>());
  if (j.contains("circle")) {
    const auto& c = j.at("circle");
    if (!c.contains("center") || !c.contains("radius") || !c.at("radius").is_number()) {
      throw std::invalid_argument("circle needs \"center\" and numeric \"radius\"");
    }
    const int nodes = c.contains("nodes") ? c.at("nodes").get<int>() : 256;
    return Contour::circle(complex_pair(c.at("center"), "circle.center"),
                           c.at("radius").get<double>(), nodes, ccw);
  }
  if (j.contains("polygon")) {
    const auto& p = j.at("polygon");
    if (!p.contains("vertices") || !p.at("vertices").is_array()) {
      throw std::invalid_argument("polygon needs a \"vertices\" array");
    }
    std::vector<Complex> vertices;
    for (std::size_t i = 0; i < p.at("vertices").size(); ++i) {
      vertices.push_back(
          complex_pair(p.at("vertices")[i], "polygon.vertices[" + std::to_string(i) + "]"));
    }
    return Contour::polygon(std::move(vertices), ccw);
  }
  throw std::invalid_argument("contour JSON needs a \"circle\" or \"polygon\" field");
}

nlohmann::json divisor_to_json(const VorticityDivisor& divisor) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : divisor) {
    out.push_back({{"root", {e.root.real(), e.root.imag()}}, {"multiplicity", e.multiplicity}});
  }
  return out;
}

}  // namespace qfluid::spin
