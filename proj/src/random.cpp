#include "qfluid/random.hpp"

namespace qfluid {

Complex random_gaussian_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

HermitianOperator random_hermitian(Rng& rng, int dim, double scale) {
  CMatrix a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = random_gaussian_complex(rng);
  }
  return HermitianOperator(scale * 0.5 * (a + a.adjoint()));
}

StateVector random_state(Rng& rng, int dim) {
  CVector v(dim);
  for (int k = 0; k < dim; ++k) v(k) = random_gaussian_complex(rng);
  return StateVector::normalized(v);
}

CMatrix random_unitary(Rng& rng, int dim) {
  CMatrix a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = random_gaussian_complex(rng);
  }
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  const CMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int k = 0; k < dim; ++k) {
    const Complex d = rmat(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

}  // namespace qfluid
