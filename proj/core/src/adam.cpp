#include "mforge/adam.hpp"

#include <cmath>

namespace mforge {

AdamState AdamState::for_params(const std::vector<Tensor*>& params) {
  AdamState s;
  s.m.reserve(params.size());
  s.v.reserve(params.size());
  for (const Tensor* p : params) {
    s.m.emplace_back(p->shape());
    s.v.emplace_back(p->shape());
  }
  return s;
}

void adam_step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads,
               AdamState& state, double lr, double beta1, double beta2, double eps) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw ShapeMismatch("adam_step: parameter/gradient/state counts differ");
  }
  state.t += 1;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));

  for (std::size_t p = 0; p < params.size(); ++p) {
    Tensor& theta = *params[p];
    const Tensor& g = *grads[p];
    if (!theta.same_shape(g)) throw ShapeMismatch("adam_step: gradient shape mismatch");
    Tensor& m = state.m[p];
    Tensor& v = state.v[p];
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
      v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      theta[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

}  // namespace mforge
