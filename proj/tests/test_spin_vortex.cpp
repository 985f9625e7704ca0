#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "qfluid/spin_vortex.hpp"

using namespace qfluid::spin;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

SpinWaveFunction poly(int two_s, std::vector<Complex> c) { return SpinWaveFunction(two_s, std::move(c)); }

SpinWaveFunction random_full_degree(std::mt19937_64& rng, int two_s) {
  std::normal_distribution<double> n;
  std::vector<Complex> c(static_cast<std::size_t>(two_s) + 1);
  for (auto& x : c) x = {n(rng), n(rng)};
  c.back() += (c.back().real() >= 0 ? 1.0 : -1.0);
  return SpinWaveFunction(two_s, c);
}

SU2Element random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Vector4d q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return {Complex(q(0), q(1)), Complex(q(2), q(3))};
}

double coeff_distance(const SpinWaveFunction& a, const SpinWaveFunction& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) d = std::max(d, std::abs(a.coeffs()[k] - b.coeffs()[k]));
  return d;
}

}  // namespace

TEST_CASE("S_z on polynomial wavefunctions") {
  const auto half = sz_apply(SpinWaveFunction::basis(1, 0));
  CHECK(half.coeffs()[0] == Complex(-0.5, 0.0));
  CHECK(half.coeffs()[1] == Complex(0.0, 0.0));

  const auto zero = sz_apply(SpinWaveFunction::basis(2, 1));
  CHECK(zero.is_zero());

  const auto mixed = sz_apply(poly(2, {1.0, 0.0, 1.0}));
  CHECK(mixed.coeffs()[0] == Complex(-1.0));
  CHECK(mixed.coeffs()[1] == Complex(0.0));
  CHECK(mixed.coeffs()[2] == Complex(1.0));

  for (int two_s = 0; two_s <= 6; ++two_s) {
    for (int k = 0; k <= two_s; ++k) {
      const auto chi = SpinWaveFunction::basis(two_s, k);
      const auto image = sz_apply(chi);
      const double eigen = k - 0.5 * two_s;
      for (int m = 0; m <= two_s; ++m) CHECK(image.coeffs()[m] == eigen * chi.coeffs()[m]);
    }
  }
}

TEST_CASE("wavefunction validation and weighted inner product") {
  CHECK_THROWS(poly(2, {0.0, 0.0, 0.0}));
  CHECK_THROWS(poly(2, {1.0, 0.0}));
  const auto chi = SpinWaveFunction::basis(4, 1);
  CHECK(chi.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(chi.inner(SpinWaveFunction::basis(4, 2))) == 0.0);
  CHECK(poly(3, {1.0, 0.0, 0.0, 2.0}).normalized().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binomial(6, 3) == 20.0);
}

TEST_CASE("SU(2) action") {
  std::mt19937_64 rng(5);
  const auto chi = random_full_degree(rng, 4);
  CHECK(coeff_distance(su2_act(SU2Element::identity(), chi), chi) < 1e-15);

  // diag(e^{-ia/2}, e^{ia/2}) multiplies chi_k by e^{-i(k-s)a}.
  const double alpha = 0.83;
  for (int two_s = 1; two_s <= 6; ++two_s) {
    for (int k = 0; k <= two_s; ++k) {
      const auto basis = SpinWaveFunction::basis(two_s, k);
      const auto image = su2_act(SU2Element::diagonal(alpha), basis);
      const Complex phase = std::exp(-kI * (k - 0.5 * two_s) * alpha);
      for (int m = 0; m <= two_s; ++m) CHECK(std::abs(image.coeffs()[m] - phase * basis.coeffs()[m]) < 1e-14);
    }
  }
}

TEST_CASE("SU(2) action is a unitary representation") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int two_s = 1 + trial % 6;
    const auto g = random_su2(rng), h = random_su2(rng);
    const auto a = random_full_degree(rng, two_s), b = random_full_degree(rng, two_s);
    CHECK(std::abs(su2_act(g, a).inner(su2_act(g, b)) - a.inner(b)) < 1e-10 * (1.0 + std::abs(a.inner(b))));
    const auto lhs = su2_act(g * h, a);
    const auto rhs = su2_act(g, su2_act(h, a));
    CHECK(coeff_distance(lhs, rhs) < 1e-10 * (1.0 + a.norm()));
  }
}

TEST_CASE("S_z generates the diagonal subgroup") {
  std::mt19937_64 rng(8);
  const double eps = 1e-5;
  for (int two_s = 1; two_s <= 6; ++two_s) {
    const auto chi = random_full_degree(rng, two_s);
    const auto plus = su2_act(SU2Element::diagonal(eps), chi);
    const auto minus = su2_act(SU2Element::diagonal(-eps), chi);
    const auto sz = sz_apply(chi);
    for (int k = 0; k <= two_s; ++k) {
      const Complex derivative = (plus.coeffs()[k] - minus.coeffs()[k]) / (2.0 * eps);
      CHECK(std::abs(derivative - (-kI) * sz.coeffs()[k]) < 1e-6);
    }
  }
}

TEST_CASE("SU(2) elements") {
  CHECK_THROWS(SU2Element(1.0, 0.1));
  std::mt19937_64 rng(1);
  const auto g = random_su2(rng);
  const Eigen::Matrix2cd m = g.matrix();
  CHECK((m * m.adjoint() - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
  CHECK(std::abs(m.determinant() - 1.0) < 1e-14);
  CHECK(((g * g.inverse()).matrix() - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
  CHECK((SU2Element::from_matrix(m).matrix() - m).norm() == 0.0);
  Eigen::Matrix2cd bad = m;
  bad(0, 0) *= 2.0;
  CHECK_THROWS(SU2Element::from_matrix(bad));
}

TEST_CASE("Moebius images carry the zeros") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_su2(rng);
    const Complex root(0.4, -0.7);
    const auto chi = SpinWaveFunction::from_roots(3, {{root, 1}, {Complex(-1.0, 0.2), 2}});
    const auto image = su2_act(g, chi);
    CHECK(std::abs(image.value(g.mobius(root))) < 1e-10);
  }
}

TEST_CASE("Madelung velocity examples") {
  const auto z = poly(1, {0.0, 1.0});
  const Complex p(0.6, -0.8);
  const Eigen::Vector2d v = madelung_velocity(z, p);
  CHECK(v(0) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(v(1) == doctest::Approx(0.6).epsilon(1e-14));

  CHECK(madelung_velocity(poly(0, {2.0}), Complex(0.3, 4.0)).norm() == 0.0);

  const Eigen::Vector2d w = madelung_velocity(poly(2, {0.0, 0.0, 1.0}), 1.0);
  CHECK(std::abs(w(0)) < 1e-15);
  CHECK(w(1) == doctest::Approx(2.0).epsilon(1e-15));

  CHECK_THROWS_AS(madelung_velocity(z, Complex(1e-8, 0.0)), NearRootError);
}

TEST_CASE("velocity form is closed and co-closed away from the zeros") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto chi = random_full_degree(rng, 2 + trial % 4);
    const auto divisor = vorticity_divisor(chi);
    int tested = 0;
    while (tested < 20) {
      const Complex zeta(u(rng), u(rng));
      double nearest = 1e300;
      for (const auto& e : divisor) nearest = std::min(nearest, std::abs(zeta - e.root));
      if (nearest < 0.1) continue;
      ++tested;
      CHECK(std::abs(madelung_curl(chi, zeta)) < 1e-6);
      CHECK(std::abs(madelung_divergence(chi, zeta)) < 1e-6);
    }
  }
}

TEST_CASE("circulation examples") {
  const auto cubic = poly(3, {-1.0, 0.0, 0.0, 1.0});
  CHECK(circulation(cubic, Contour::circle(0.0, 2.0)) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(circulation(cubic, Contour::circle(0.0, 2.0, 256, false)) == doctest::Approx(-3.0).epsilon(1e-12));

  const auto factored = SpinWaveFunction::from_roots(3, {{1.0, 2}, {-1.0, 1}});
  CHECK(circulation(factored, Contour::circle(1.0, 0.5)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(circulation(poly(2, {3.0, 0.0, 0.0}), Contour::circle(Complex(0.2, 0.1), 4.0))) < 1e-14);

  CHECK_THROWS_AS(circulation(cubic, Contour::circle(0.0, 1.0)), NearRootError);
}

TEST_CASE("total circulation") {
  const auto chi = SpinWaveFunction::from_roots(2, {{2.0, 1}, {Complex(0.0, -3.0), 1}});
  const auto total = total_spin_circulation(chi);
  CHECK(total.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(total.deficit == 0);
  CHECK(total.warning.empty());

  CHECK(total_spin_circulation(poly(4, {0, 0, 0, 0, 1.0})).value == doctest::Approx(4.0).epsilon(1e-12));

  const auto deficient = total_spin_circulation(poly(2, {0.0, 1.0, 0.0}));
  CHECK(deficient.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(deficient.effective_degree == 1);
  CHECK(deficient.deficit == 1);
  CHECK_FALSE(deficient.warning.empty());
}

TEST_CASE("vorticity divisor examples") {
  const auto d = vorticity_divisor(SpinWaveFunction::from_roots(3, {{1.0, 2}, {-1.0, 1}}));
  REQUIRE(d.size() == 2);
  CHECK(std::abs(d[0].root - Complex(-1.0)) < 1e-10);
  CHECK(d[0].multiplicity == 1);
  CHECK(std::abs(d[1].root - Complex(1.0)) < 1e-7);
  CHECK(d[1].multiplicity == 2);

  for (int two_s = 1; two_s <= 6; ++two_s) {
    std::vector<Complex> c(static_cast<std::size_t>(two_s) + 1, 0.0);
    c.back() = 1.0;
    const auto m = vorticity_divisor(poly(two_s, c));
    REQUIRE(m.size() == 1);
    CHECK(m[0].root == Complex(0.0));
    CHECK(m[0].multiplicity == two_s);
  }

  const auto q = vorticity_divisor(poly(2, {1.0, 0.0, 1.0}));
  REQUIRE(q.size() == 2);
  CHECK(std::abs(q[0].root - Complex(0.0, -1.0)) < 1e-12);
  CHECK(std::abs(q[1].root - Complex(0.0, 1.0)) < 1e-12);

  CHECK(vorticity_divisor(poly(2, {5.0, 0.0, 0.0})).empty());
}

TEST_CASE("divisor multiplicities sum to the effective degree") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const int two_s = 1 + trial % 6;
    const auto chi = random_full_degree(rng, two_s);
    int total = 0;
    for (const auto& e : vorticity_divisor(chi)) total += e.multiplicity;
    CHECK(total == chi.effective_degree());
  }
}

TEST_CASE("Bohr-Sommerfeld integrality on random circles") {
  std::mt19937_64 rng(2024);
  const auto chi = random_full_degree(rng, 4);
  const auto divisor = vorticity_divisor(chi);
  std::uniform_real_distribution<double> c(-3.0, 3.0), r(0.2, 3.0);
  std::vector<Contour> contours;
  while (contours.size() < 20) {
    const double radius = r(rng);
    const auto circle = Contour::circle(Complex(c(rng), c(rng)), radius);
    bool clear = true;
    for (const auto& e : divisor) clear = clear && circle.distance_to(e.root) > 0.2 * radius;
    if (clear) contours.push_back(circle);
  }
  for (const auto& q : bohr_sommerfeld_check(chi, contours)) {
    CHECK(q.integral);
    CHECK(q.deviation < 1e-8);
  }
  const auto empty = bohr_sommerfeld_check(chi, {Contour::circle(Complex(50.0, 50.0), 1.0)});
  CHECK(empty[0].nearest == 0);
}

TEST_CASE("circulation is additive over a figure eight") {
  const auto chi = SpinWaveFunction::from_roots(3, {{Complex(-1.0, 0.0), 2}, {Complex(1.0, 0.3), 1}});
  // Two squares sharing the segment x = 0; the outer rectangle is their union.
  const auto left = Contour::polygon({{-2.0, -1.0}, {0.0, -1.0}, {0.0, 1.0}, {-2.0, 1.0}});
  const auto right = Contour::polygon({{0.0, -1.0}, {2.0, -1.0}, {2.0, 1.0}, {0.0, 1.0}});
  const auto outer = Contour::polygon({{-2.0, -1.0}, {2.0, -1.0}, {2.0, 1.0}, {-2.0, 1.0}});
  const double l = circulation(chi, left), r = circulation(chi, right), o = circulation(chi, outer);
  CHECK(l == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(o - (l + r)) < 1e-8);
}

TEST_CASE("circulation is invariant under rotations with transported contours") {
  std::mt19937_64 rng(91);
  int checked = 0;
  while (checked < 10) {
    const auto g = random_su2(rng);
    const auto chi = random_full_degree(rng, 3);
    const Contour circle = Contour::circle(Complex(0.3, -0.2), 1.3);
    const auto divisor = vorticity_divisor(chi);
    bool clear = true;
    for (const auto& e : divisor) clear = clear && circle.distance_to(e.root) > 0.05;
    // The pole of the Moebius map must stay off the disc so the image is a circle, not a line.
    const Complex pole = -g.a() / g.b();
    if (!clear || std::abs(pole - Complex(0.3, -0.2)) < 1.5) continue;
    // Circumcircle of three image points.
    const Complex p1 = g.mobius(circle.at(0.0)), p2 = g.mobius(circle.at(1.0 / 3)), p3 = g.mobius(circle.at(2.0 / 3));
    const Complex w = (p3 - p1) / (p2 - p1);
    const Complex center = (p2 - p1) * (w - std::norm(w)) / (2.0 * kI * w.imag()) + p1;
    const double radius = std::abs(p1 - center);
    const bool ccw = (std::conj(p2 - p1) * (p3 - p1)).imag() > 0;
    const auto image_contour = Contour::circle(center, radius, 512, ccw);
    const auto image = su2_act(g, chi);
    bool image_clear = true;
    for (const auto& e : vorticity_divisor(image)) image_clear = image_clear && image_contour.distance_to(e.root) > 0.05;
    if (!image_clear) continue;
    const double before = circulation(chi, circle, 1e-6);
    const double after = circulation(image, image_contour, 1e-6);
    CHECK(std::abs(before - after) < 1e-6);
    ++checked;
  }
}

TEST_CASE("trapezoidal circulation converges spectrally") {
  const auto chi = SpinWaveFunction::from_roots(3, {{Complex(0.5, 0.5), 1}, {Complex(-0.4, 0.1), 2}});
  double previous = 1.0;
  for (int nodes = 8; nodes <= 512; nodes *= 2) {
    const double dev = std::abs(circulation(chi, Contour::circle(0.0, 1.0, nodes)) - 3.0);
    if (previous > 1e-12) CHECK((dev < 1e-12 || dev * 10.0 <= previous));
    previous = dev;
  }
  CHECK(previous < 1e-12);
}

TEST_CASE("JSON round trips") {
  const auto j = nlohmann::json::parse(R"({"two_s": 3, "coeffs_re": [-1, 0, 0, 1], "coeffs_im": [0, 0, 0, 0]})");
  const auto chi = wavefunction_from_json(j);
  CHECK(chi.two_s() == 3);
  CHECK(coeff_distance(wavefunction_from_json(wavefunction_to_json(chi)), chi) == 0.0);

  const auto roots = wavefunction_from_json(nlohmann::json::parse(R"({"roots": [[1, 0, 2], [-1, 0, 1]]})"));
  CHECK(roots.two_s() == 3);
  CHECK(std::abs(roots.value(1.0)) == 0.0);

  const auto c = contour_from_json(nlohmann::json::parse(R"({"circle": {"center": [0, 0], "radius": 2, "nodes": 128}})"));
  CHECK(c.node_count() == 128);
  CHECK(circulation(chi, c) == doctest::Approx(3.0).epsilon(1e-12));
  const auto p = contour_from_json(nlohmann::json::parse(R"({"polygon": {"vertices": [[-2,-2],[2,-2],[2,2],[-2,2]]}, "clockwise": true})"));
  CHECK(circulation(chi, p) == doctest::Approx(-3.0).epsilon(1e-10));

  const auto d = divisor_to_json(vorticity_divisor(roots));
  CHECK(d.size() == 2);
  CHECK_THROWS(wavefunction_from_json(nlohmann::json::parse(R"({"two_s": 1, "coeffs_re": [1]})")));
  CHECK_THROWS(contour_from_json(nlohmann::json::parse(R"({"square": 1})")));
}
