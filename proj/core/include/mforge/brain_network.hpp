#pragma once

#include <string>

#include "mforge/tensor.hpp"

namespace mforge {

/// One subject's connectivity network for a single view: a symmetric weighted
/// adjacency matrix over n regions with zero diagonal and entries normalized
/// to [0, 1].
struct BrainNetwork {
  std::size_t n = 0;
  Tensor weights;  // {n, n}
  std::string view_label;

  BrainNetwork() = default;
  BrainNetwork(Tensor w, std::string label = {});

  /// Throws DomainError unless the matrix is square, finite, symmetric within
  /// sym_tol, zero on the diagonal, and inside [0, 1].
  void validate(double sym_tol = 1e-12) const;
};

/// Symmetrizes, zeroes the diagonal, and validates in one step.
BrainNetwork make_network(const Tensor& weights, std::string view_label = {});

}  // namespace mforge
