#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mforge/tensor.hpp"

namespace mforge {

/// Linear soft-margin SVM trained by deterministic full-batch projected
/// subgradient descent with the 1/(lambda t) step schedule, where
/// lambda = 1/(C N). This minimizes the usual objective
///   (1/2) ||w||^2 + C * sum_i hinge(1 - y_i (w.x_i + b))
/// up to a positive rescaling. Features are z-scored with training-set
/// statistics when `standardize` is on.
struct SvmConfig {
  double C = 1.0;
  std::size_t iterations = 2000;
  std::uint64_t seed = 0;
  bool standardize = true;

  void validate() const;
};

struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;  // 1 where the training std was zero
  bool standardize = true;

  double decision(std::span<const double> x) const;
  int predict(std::span<const double> x) const { return decision(x) >= 0.0 ? +1 : -1; }
};

struct SvmTrainResult {
  SvmModel model;
  double train_accuracy = 0.0;
  double objective = 0.0;  // final scaled objective (lambda/2)||w||^2 + mean hinge
};

/// x is samples-by-features; y entries are +1/-1 and both classes must be
/// present (SingleClass otherwise).
SvmTrainResult svm_train(const Tensor& x, const std::vector<int>& y, const SvmConfig& cfg);

}  // namespace mforge
