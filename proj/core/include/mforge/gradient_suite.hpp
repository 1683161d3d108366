#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mforge {

struct GradientCheckItem {
  std::string name;
  double max_rel_err = 0.0;
};

/// Finite-difference verification sweep over every layer family (conv and
/// deconv directions, node aggregation/expansion, dense head, activations)
/// and both full models, at the given node count, over `seeds` random
/// instances each. Reports the worst relative error per item.
std::vector<GradientCheckItem> gradient_suite(std::size_t n, std::uint64_t base_seed,
                                              std::size_t seeds);

}  // namespace mforge
