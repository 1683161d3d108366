#pragma once

#include <vector>

#include <mforge/brain_network.hpp>
#include <mforge/feature_maps.hpp>
#include <mforge/prng.hpp>
#include <mforge/tensor.hpp>

namespace testsupport {

/// Largest |eigenvalue| of a symmetric matrix by cyclic Jacobi rotations.
/// Independent of the library's power iteration.
double jacobi_spectral_radius(mforge::Tensor a, double tol = 1e-13);

/// Quadruple-loop realization of the inter-layer convolution with 1-based
/// offset semantics and zero padding. Deliberately naive.
mforge::Tensor conv_quadruple_loop(const mforge::Tensor& s, const mforge::Tensor& t);

mforge::Tensor random_matrix(std::size_t rows, std::size_t cols, mforge::Prng& rng,
                             double lo = -1.0, double hi = 1.0);

/// Symmetric matrix with entries in [lo, hi].
mforge::Tensor random_symmetric(std::size_t n, mforge::Prng& rng, double lo = -1.0,
                                double hi = 1.0);

/// Valid network: symmetric, zero diagonal, entries in [0, 1].
mforge::BrainNetwork random_network(std::size_t n, mforge::Prng& rng);

mforge::EdgeFeatureMap random_edge_map(std::size_t n, std::size_t channels, mforge::Prng& rng);
mforge::NodeFeatureMap random_node_map(std::size_t n, std::size_t channels, mforge::Prng& rng);

}  // namespace testsupport
