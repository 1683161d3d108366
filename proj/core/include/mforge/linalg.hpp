#pragma once

#include "mforge/tensor.hpp"

namespace mforge {

/// Solves A X = B by Gaussian elimination with partial pivoting.
/// A must be square and non-singular (pivot magnitudes >= 1e-12, else
/// SingularMatrix); B must have as many rows as A.
Tensor solve_linear(const Tensor& a, const Tensor& b);

/// Dominant eigenvalue magnitude of an entrywise non-negative square matrix,
/// by power iteration from the all-ones vector. Stops when the relative
/// change drops below 1e-10; throws NonConvergence if after 10000 iterations
/// the relative change still exceeds 1e-6.
double spectral_radius(const Tensor& a);

}  // namespace mforge
