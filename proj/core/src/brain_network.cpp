#include "mforge/brain_network.hpp"

#include <cmath>

#include "mforge/feature_maps.hpp"

namespace mforge {

BrainNetwork::BrainNetwork(Tensor w, std::string label)
    : n(w.rank() == 2 ? w.dim(0) : 0), weights(std::move(w)), view_label(std::move(label)) {
  require_square(weights, "BrainNetwork");
}

void BrainNetwork::validate(double sym_tol) const {
  require_square(weights, "BrainNetwork::validate");
  if (!weights.all_finite()) throw DomainError("network contains non-finite values");
  for (std::size_t i = 0; i < n; ++i) {
    if (weights(i, i) != 0.0) throw DomainError("network diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = weights(i, j);
      if (v < 0.0 || v > 1.0) throw DomainError("network entries must lie in [0, 1]");
      if (std::abs(v - weights(j, i)) > sym_tol) {
        throw DomainError("network must be symmetric");
      }
    }
  }
}

BrainNetwork make_network(const Tensor& weights, std::string view_label) {
  Tensor w = symmetrized(weights);
  zero_diagonal(w);
  BrainNetwork net(std::move(w), std::move(view_label));
  net.validate();
  return net;
}

}  // namespace mforge
