#pragma once

#include <cstddef>
#include <vector>

#include "mforge/tensor.hpp"

namespace mforge {

/// Infinite feature selection over a samples-by-features matrix.
///
/// A feature-affinity matrix A mixes per-feature spread and pairwise
/// independence:
///   A(i,j) = alpha * max(sigma_i, sigma_j) / max_k sigma_k
///          + (1 - alpha) * (1 - |spearman(i, j)|)
/// with sigma the per-feature sample standard deviation. The energy of all
/// walks through A, S = (I - rA)^-1 - I with r = r_frac / spectral_radius(A),
/// is row-summed into per-feature scores; features rank by descending score,
/// ties by ascending index.
struct IfsConfig {
  double alpha = 0.5;
  double r_frac = 0.9;
  std::vector<std::size_t> nf_values = {310, 320, 330, 340, 350};

  void validate() const;
};

struct IfsResult {
  std::vector<double> scores;
  std::vector<std::size_t> order;  // feature indices, best first
};

/// The affinity matrix A above. Throws DegenerateInput when every feature is
/// constant. A feature pair where either side has constant ranks contributes
/// correlation 0 (full independence credit).
Tensor ifs_affinity(const Tensor& x, double alpha);

IfsResult ifs_rank(const Tensor& x, const IfsConfig& cfg);

/// Spearman rank correlation with average ranks for ties; 0 if either side
/// has zero rank variance.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace mforge
