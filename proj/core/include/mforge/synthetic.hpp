#pragma once

#include <cstdint>

#include "mforge/dataset.hpp"

namespace mforge {

/// Desk-scale multi-view connectome generator.
///
/// Source networks are smooth random fields: a per-subject low-rank factor
/// product plus Gaussian edge noise, shifted to mid-range, clipped into
/// [0, 1]. Targets apply a fixed nonlinear map to the source - an elementwise
/// square mixed with a fixed random node-relabeled copy, so a bias-only model
/// cannot fit it - plus independent noise. Each class gets an additive offset
/// of +/- delta/2 on a fixed edge subset of the source and on a second subset
/// of the target, which plants a recoverable class signal in both intra
/// layers. Everything is deterministic from the seed.
struct SynthConfig {
  std::size_t subjects = 120;
  std::size_t n = 35;
  double class_balance = 0.5;  // fraction of +1 subjects
  std::size_t base_rank = 3;
  double base_scale = 0.3;
  double map_strength = 0.6;  // 0 leaves the target equal to the source
  double target_mix = 0.5;    // squared term vs relabeled copy
  std::size_t signal_edges = 6;
  double delta = 0.3;
  double noise_source = 0.06;
  double noise_target = 0.03;
  std::uint64_t seed = 0;

  void validate() const;
};

Dataset generate_synthetic(const SynthConfig& cfg);

}  // namespace mforge
