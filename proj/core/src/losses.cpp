#include "mforge/losses.hpp"

#include <cmath>

namespace mforge {

double discriminator_loss(double p_real, double p_fake) {
  return -std::log(clamp_prob(p_real)) - std::log(1.0 - clamp_prob(p_fake));
}

double generator_loss_minimax(double p_fake) { return std::log(1.0 - clamp_prob(p_fake)); }

double generator_loss_nonsaturating(double p_fake) { return -std::log(clamp_prob(p_fake)); }

namespace {

bool clamped(double p) { return p < kProbClamp || p > 1.0 - kProbClamp; }

}  // namespace

double d_discriminator_loss_dreal(double p_real) {
  if (clamped(p_real)) return 0.0;
  return -1.0 / p_real;
}

double d_discriminator_loss_dfake(double p_fake) {
  if (clamped(p_fake)) return 0.0;
  return 1.0 / (1.0 - p_fake);
}

double d_generator_loss_minimax(double p_fake) {
  if (clamped(p_fake)) return 0.0;
  return -1.0 / (1.0 - p_fake);
}

double d_generator_loss_nonsaturating(double p_fake) {
  if (clamped(p_fake)) return 0.0;
  return -1.0 / p_fake;
}

double l1_edge_loss(const Tensor& real, const Tensor& fake) {
  require_square(real, "l1_edge_loss");
  if (!real.same_shape(fake)) throw ShapeMismatch("l1_edge_loss: shapes differ");
  const std::size_t n = real.dim(0);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) acc += std::abs(real(i, j) - fake(i, j));
  }
  return acc;
}

Tensor l1_edge_loss_grad(const Tensor& real, const Tensor& fake) {
  require_square(real, "l1_edge_loss_grad");
  if (!real.same_shape(fake)) throw ShapeMismatch("l1_edge_loss_grad: shapes differ");
  const std::size_t n = real.dim(0);
  Tensor g({n, n}, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = fake(i, j) - real(i, j);
      g(i, j) = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    }
  }
  return g;
}

}  // namespace mforge
