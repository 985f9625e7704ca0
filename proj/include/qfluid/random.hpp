#pragma once

// Seeded generators for randomized checks. Same seed, same sequence.

#include <random>

#include "qfluid/linear_core.hpp"

namespace qfluid {

using Rng = std::mt19937_64;

Complex random_gaussian_complex(Rng& rng);

/// GUE-like Hermitian matrix (n+1 = dim), entries scaled by `scale`.
HermitianOperator random_hermitian(Rng& rng, int dim, double scale = 1.0);

/// Haar-random normalized state.
StateVector random_state(Rng& rng, int dim);

/// Haar-random unitary via QR of a complex Gaussian matrix.
CMatrix random_unitary(Rng& rng, int dim);

}  // namespace qfluid
