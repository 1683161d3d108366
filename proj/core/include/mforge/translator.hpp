#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mforge/brain_network.hpp"
#include "mforge/layers.hpp"

namespace mforge {

/// Architecture of the source-to-target network translator: a three-layer
/// graph encoder (two edge-to-edge convolutions, one edge-to-node
/// convolution), Gaussian noise concatenated at the node bottleneck, and a
/// three-layer decoder (node-to-edge deconvolution, two edge-to-edge
/// deconvolutions) with U-Net style skip connections from both encoder edge
/// stages.
struct TranslatorConfig {
  std::size_t n = 35;
  std::size_t enc_c1 = 8;
  std::size_t enc_c2 = 16;
  std::size_t node_dim = 32;
  std::size_t noise_dim = 8;
  Activation hidden_activation = Activation::kRelu;
  Activation output_activation = Activation::kSigmoid;
  bool symmetrize_output = true;

  void validate() const;
};

struct TranslatorModel {
  TranslatorConfig config;
  E2EParams enc1;   // 1 -> c1
  E2EParams enc2;   // c1 -> c2
  E2NParams enc3;   // c2 -> node_dim
  N2EParams dec1;   // node_dim + noise_dim -> c2
  E2EParams dec2;   // 2*c2 -> c1 (skip concat)
  E2EParams dec3;   // 2*c1 -> 1  (skip concat)

  static TranslatorModel init(const TranslatorConfig& cfg, Prng& rng);

  /// Stable, unique parameter registry used by the optimizer and checkpoints.
  std::vector<std::pair<std::string, Tensor*>> parameters();
  std::vector<std::pair<std::string, const Tensor*>> parameters() const;
};

/// Every intermediate needed by the backward pass.
struct TranslatorForward {
  EdgeFeatureMap x0;
  EdgeFeatureMap z1, a1;      // encoder stage 1 (pre/post activation)
  EdgeFeatureMap z2, a2;      // encoder stage 2
  NodeFeatureMap zn, hn;      // bottleneck nodes
  NodeFeatureMap noise;       // as injected
  NodeFeatureMap hcat;        // [hn | noise]
  EdgeFeatureMap zd0, d0;     // decoder stage 1
  EdgeFeatureMap cat1;        // [d0 | a2]
  EdgeFeatureMap zd1, d1;     // decoder stage 2
  EdgeFeatureMap cat2;        // [d1 | a1]
  EdgeFeatureMap zd2, ysig;   // decoder output stage (1 channel)
  Tensor output;              // n-by-n, symmetrized, zero diagonal

  bool empty() const { return output.size() == 0; }
};

/// Raw forward pass. `source` is the n-by-n matrix; no input validation.
TranslatorForward translator_forward(const TranslatorModel& model, const Tensor& source,
                                     const NodeFeatureMap& noise);

/// Draws an n-by-noise_dim standard-normal noise map.
NodeFeatureMap sample_noise(const TranslatorConfig& cfg, Prng& rng);

struct TranslatorGrads {
  E2EGrads enc1, enc2;
  E2NGrads enc3;
  N2EGrads dec1;
  E2EGrads dec2, dec3;
  explicit TranslatorGrads(const TranslatorModel& m)
      : enc1(m.enc1), enc2(m.enc2), enc3(m.enc3), dec1(m.dec1), dec2(m.dec2), dec3(m.dec3) {}

  /// Same order as TranslatorModel::parameters().
  std::vector<Tensor*> tensors();
};

/// Backpropagates d(loss)/d(output) through symmetrization, skips, and all
/// six layers; accumulates into `grads` and returns d(loss)/d(source).
Tensor translator_backward(const TranslatorModel& model, const TranslatorForward& cache,
                           const Tensor& d_output, TranslatorGrads& grads);

/// Full prediction for one subject.
struct TranslateOutput {
  BrainNetwork predicted;
  Tensor tap_pre_relu;   // channel mean of the final encoder edge stage, pre-activation, symmetrized
  Tensor tap_post_relu;  // same, post-activation
};

/// Validates the source (symmetric, zero diagonal, entries in [0, 1]), runs
/// the forward pass with the given noise, and packages the prediction.
TranslateOutput translate(const TranslatorModel& model, const BrainNetwork& source,
                          const NodeFeatureMap& noise);

/// Same, drawing fresh noise from `rng`.
TranslateOutput translate(const TranslatorModel& model, const BrainNetwork& source, Prng& rng);

}  // namespace mforge
