#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qfluid/linear_core.hpp"
#include "qfluid/random.hpp"

using namespace qfluid;

namespace {

StateVector superposition(int dim, int a, int b) {
  CVector v = CVector::Zero(dim);
  v(a) = 1.0 / std::sqrt(2.0);
  v(b) = 1.0 / std::sqrt(2.0);
  return StateVector(v);
}

}  // namespace

TEST_CASE("expectation on a two-level system") {
  const auto h = HermitianOperator::diagonal(Eigen::Vector2d(0.0, 1.0));
  CHECK(expectation(h, StateVector::basis(2, 0)) == doctest::Approx(0.0));
  CHECK(expectation(h, superposition(2, 0, 1)) == doctest::Approx(0.5).epsilon(1e-15));
  Rng rng(3);
  const auto v = random_state(rng, 5);
  CHECK(expectation(HermitianOperator::identity(5), v) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("expectation rejects bad input") {
  const auto h = HermitianOperator::diagonal(Eigen::Vector3d(0.0, 1.0, 2.0));
  CHECK_THROWS_AS(expectation(h, StateVector::basis(2, 0)), ValidationError);
  CHECK_THROWS_AS(expectation(h, StateVector(CVector::Constant(3, 1.0))), ValidationError);
}

TEST_CASE("dispersion_squared examples") {
  const auto h2 = HermitianOperator::diagonal(Eigen::Vector2d(0.0, 1.0));
  CHECK(dispersion_squared(h2, StateVector::basis(2, 1)) == 0.0);
  // <H^2> - <H>^2 = 1/2 - 1/4.
  CHECK(dispersion_squared(h2, superposition(2, 0, 1)) == doctest::Approx(0.25).epsilon(1e-15));
  const auto h3 = HermitianOperator::diagonal(Eigen::Vector3d(1.0, 2.0, 3.0));
  CHECK(dispersion_squared(h3, superposition(3, 0, 2)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("dispersion vanishes on eigenvectors and is shift and phase invariant") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 7;
    const auto h = random_hermitian(rng, dim);
    for (int k = 0; k < dim; ++k) {
      CHECK(dispersion_squared(h, h.eigenstate(k)) < 1e-12);
    }
    const auto v = random_state(rng, dim);
    const double base = dispersion_squared(h, v);
    CHECK(std::abs(dispersion_squared(h, v.with_phase(1.234)) - base) < 1e-12);
    CHECK(std::abs(dispersion_squared(h.shifted(3.7), v) - base) < 1e-11);
  }
}

TEST_CASE("evolve examples") {
  const auto h = HermitianOperator::diagonal(Eigen::Vector2d(0.0, 1.0));
  const auto plus = superposition(2, 0, 1);
  CHECK(evolve(h, plus, 0.0).same_amplitudes(plus, 1e-15));
  CHECK(evolve(h, StateVector::basis(2, 0), 2.7).same_amplitudes(StateVector::basis(2, 0), 1e-15));
  CVector minus(2);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  CHECK(evolve(h, plus, std::numbers::pi).same_amplitudes(StateVector(minus), 1e-14));
}

TEST_CASE("evolve preserves the norm") {
  Rng rng(5);
  std::uniform_real_distribution<double> time(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 8;
    const auto h = random_hermitian(rng, dim);
    const auto v = random_state(rng, dim);
    CHECK(std::abs(evolve(h, v, time(rng)).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("survival probability is quadratic in t with the dispersion as coefficient") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 2 + trial % 5;
    const auto h = random_hermitian(rng, dim);
    const auto v = random_state(rng, dim);
    const double t = 1e-2;
    const double survival = std::norm(v.inner(evolve(h, v, t)));
    const double fitted = (1.0 - survival) / (t * t);
    const double expected = dispersion_squared(h, v);
    CHECK(std::abs(fitted - expected) < 1e-2 * expected);
  }
}

TEST_CASE("hermiticity and degeneracy validation") {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(HermitianOperator{m}, ValidationError);
  const auto degenerate = HermitianOperator::diagonal(Eigen::Vector3d(1.0, 1.0, 2.0));
  CHECK_FALSE(degenerate.is_nondegenerate());
  CHECK_THROWS_AS(degenerate.require_nondegenerate(), ValidationError);
  CHECK(HermitianOperator::diagonal(Eigen::Vector2d(0.0, 1.0)).is_nondegenerate());
}

TEST_CASE("projector axioms and ray equality") {
  Rng rng(2);
  const auto v = random_state(rng, 4);
  CHECK(Projector(v).axiom_residual() < 1e-14);
  CHECK(Projector(StateVector(v.amplitudes() * 3.0)).axiom_residual() < 1e-14);
  CHECK(v.same_ray(v.with_phase(0.8)));
  CHECK_FALSE(v.same_amplitudes(v.with_phase(0.8)));
}

TEST_CASE("Hamiltonian JSON parsing reports the offending entry") {
  const auto good = nlohmann::json::parse(R"({"dim": 2, "re": [[0, 1], [1, 2]], "im": [[0, -0.5], [0.5, 0]]})");
  const auto h = hermitian_from_json(good);
  CHECK(h.matrix()(0, 1) == Complex(1.0, -0.5));
  CHECK(hermitian_from_json(hermitian_to_json(h)).matrix().isApprox(h.matrix()));

  const auto bad = nlohmann::json::parse(R"({"dim": 2, "re": [[0, 1], [3, 2]]})");
  try {
    hermitian_from_json(bad);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("[1][0]") != std::string::npos);
  }
  const auto not_number = nlohmann::json::parse(R"({"dim": 2, "re": [[0, "x"], [1, 2]]})");
  try {
    hermitian_from_json(not_number);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("re[0][1]") != std::string::npos);
  }
  CHECK_THROWS_AS(hermitian_from_json(nlohmann::json::parse(R"({"re": [[1]]})")), ValidationError);
}
