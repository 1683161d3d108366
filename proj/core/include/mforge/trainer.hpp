#pragma once

#include <cstdint>
#include <vector>

#include "mforge/discriminator.hpp"
#include "mforge/translator.hpp"

namespace mforge {

/// One training subject: normalized source and target matrices.
struct TrainingPair {
  Tensor source;
  Tensor target;
};

enum class GeneratorLossKind : std::uint8_t {
  kMinimax,        // translator minimizes log(1 - D(fake|cond))
  kNonSaturating,  // translator minimizes -log D(fake|cond)
};

/// Which layer conditions the discriminator on fake pairs. Real pairs are
/// always (source, real target); fake pairs default to (source, fake) and can
/// be switched to (real target, fake).
enum class FakeConditioning : std::uint8_t { kSource, kTarget };

struct TrainConfig {
  std::size_t epochs = 300;
  std::size_t batch_size = 10;
  double lr_t = 5e-4;
  double lr_d = 5e-4;
  double beta1 = 0.5;  // GAN-style momentum
  double beta2 = 0.999;
  double eps = 1e-8;
  double lambda_l1 = 1.0;
  /// Discriminator updates per translator update. Zero disables the
  /// adversarial path entirely: the discriminator is left untouched and the
  /// translator trains on the L1 term alone.
  std::size_t d_steps_per_g_step = 1;
  GeneratorLossKind generator_loss = GeneratorLossKind::kMinimax;
  FakeConditioning fake_conditioning = FakeConditioning::kSource;
  std::uint64_t seed = 0;

  void validate() const;
};

struct EpochLosses {
  double loss_d = 0.0;
  double loss_t_adv = 0.0;
  double loss_l1 = 0.0;
};

struct TrainResult {
  TranslatorModel translator;
  DiscriminatorModel discriminator;
  std::vector<EpochLosses> trace;  // one row per epoch
};

/// Alternating adversarial training.
///
/// Per epoch the subject order is reshuffled from the seed and split into
/// batches of batch_size (the last short batch is kept). Each batch runs
/// d_steps_per_g_step discriminator updates, then one translator update on
/// the adversarial term plus lambda_l1 times the edge-wise L1 term. Noise is
/// drawn from a dedicated stream, one map per translator forward, in
/// iteration order. Everything is deterministic given the seed.
TrainResult train(const std::vector<TrainingPair>& subjects, const TranslatorConfig& tcfg,
                  const DiscriminatorConfig& dcfg, const TrainConfig& cfg);

}  // namespace mforge
