#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mforge/brain_network.hpp"
#include "mforge/layers.hpp"

namespace mforge {

/// Conditional discriminator scoring (condition, candidate) network pairs:
/// the two matrices are stacked as a 2-channel edge map and pushed through
/// two edge-to-edge convolutions, one edge-to-node convolution, and a dense
/// head squashed to (0, 1). A binary softmax over tied logits reduces to this
/// single-logit sigmoid.
struct DiscriminatorConfig {
  std::size_t n = 35;
  std::size_t c1 = 8;
  std::size_t c2 = 16;
  std::size_t node_dim = 32;
  Activation hidden_activation = Activation::kRelu;

  void validate() const;
};

struct DiscriminatorModel {
  DiscriminatorConfig config;
  E2EParams e2e1;  // 2 -> c1
  E2EParams e2e2;  // c1 -> c2
  E2NParams e2n;   // c2 -> node_dim
  DenseParams head;  // n*node_dim -> 1

  static DiscriminatorModel init(const DiscriminatorConfig& cfg, Prng& rng);

  std::vector<std::pair<std::string, Tensor*>> parameters();
  std::vector<std::pair<std::string, const Tensor*>> parameters() const;
};

struct DiscriminatorForward {
  EdgeFeatureMap x0;
  EdgeFeatureMap z1, a1, z2, a2;
  NodeFeatureMap zn, hn;
  double logit = 0.0;
  double prob = 0.5;
  bool valid = false;
};

struct DiscriminatorGrads {
  E2EGrads e2e1, e2e2;
  E2NGrads e2n;
  DenseGrads head;
  explicit DiscriminatorGrads(const DiscriminatorModel& m)
      : e2e1(m.e2e1), e2e2(m.e2e2), e2n(m.e2n), head(m.head) {}

  std::vector<Tensor*> tensors();
};

/// Raw forward pass over unvalidated matrices.
DiscriminatorForward discriminator_forward(const DiscriminatorModel& model,
                                           const Tensor& condition, const Tensor& candidate);

/// Gradients of the two stacked inputs.
struct DiscriminatorInputGrads {
  Tensor d_condition;  // {n, n}
  Tensor d_candidate;  // {n, n}
};

/// Backpropagates d(loss)/d(prob); accumulates parameter gradients and
/// returns input gradients (the candidate path carries the adversarial
/// signal back into the translator).
DiscriminatorInputGrads discriminator_backward(const DiscriminatorModel& model,
                                               const DiscriminatorForward& cache,
                                               double d_prob, DiscriminatorGrads& grads);

/// Validated scoring of a (condition, candidate) pair; returns P(real).
double discriminate(const DiscriminatorModel& model, const BrainNetwork& condition,
                    const BrainNetwork& candidate);

}  // namespace mforge
