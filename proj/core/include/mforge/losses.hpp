#pragma once

#include "mforge/tensor.hpp"

namespace mforge {

/// Discriminator and translator scores are clamped into
/// [kProbClamp, 1 - kProbClamp] before any log, which keeps the adversarial
/// objective finite (it is unbounded below otherwise).
inline constexpr double kProbClamp = 1e-7;

inline double clamp_prob(double p) {
  if (p < kProbClamp) return kProbClamp;
  if (p > 1.0 - kProbClamp) return 1.0 - kProbClamp;
  return p;
}

/// -log D(real|cond) - log(1 - D(fake|cond)) for one pair of scores.
double discriminator_loss(double p_real, double p_fake);

/// Translator adversarial term for one fake score:
/// log(1 - D(fake|cond)) in minimax form, -log D(fake|cond) in
/// non-saturating form.
double generator_loss_minimax(double p_fake);
double generator_loss_nonsaturating(double p_fake);

/// d(loss)/d(p) for the clamped losses above; zero where the clamp is active.
double d_discriminator_loss_dreal(double p_real);
double d_discriminator_loss_dfake(double p_fake);
double d_generator_loss_minimax(double p_fake);
double d_generator_loss_nonsaturating(double p_fake);

/// Sum of |real - fake| over the strict upper triangle (each undirected edge
/// counted once).
double l1_edge_loss(const Tensor& real, const Tensor& fake);

/// Gradient of l1_edge_loss with respect to `fake`: sign(fake - real) on the
/// strict upper triangle, zero elsewhere.
Tensor l1_edge_loss_grad(const Tensor& real, const Tensor& fake);

}  // namespace mforge
