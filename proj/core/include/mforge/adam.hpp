#pragma once

#include <cstdint>
#include <vector>

#include "mforge/tensor.hpp"

namespace mforge {

/// First/second moment estimates per parameter tensor, aligned with the
/// model's parameter registry order.
struct AdamState {
  std::vector<Tensor> m;
  std::vector<Tensor> v;
  std::uint64_t t = 0;

  static AdamState for_params(const std::vector<Tensor*>& params);
};

/// One Adam update with bias correction:
///   t += 1
///   m = b1*m + (1-b1)*g,  v = b2*v + (1-b2)*g^2
///   theta -= lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
void adam_step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads,
               AdamState& state, double lr, double beta1, double beta2, double eps);

}  // namespace mforge
