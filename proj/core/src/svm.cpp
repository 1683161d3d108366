#include "mforge/svm.hpp"

#include <cmath>

namespace mforge {

void SvmConfig::validate() const {
  if (C <= 0.0) throw ConfigError("svm: C must be positive");
  if (iterations < 1) throw ConfigError("svm: iterations must be positive");
}

double SvmModel::decision(std::span<const double> x) const {
  if (x.size() != weights.size()) throw ShapeMismatch("svm: feature count mismatch");
  double acc = bias;
  if (standardize) {
    for (std::size_t f = 0; f < x.size(); ++f) {
      acc += weights[f] * (x[f] - feature_mean[f]) / feature_scale[f];
    }
  } else {
    for (std::size_t f = 0; f < x.size(); ++f) acc += weights[f] * x[f];
  }
  return acc;
}

SvmTrainResult svm_train(const Tensor& x, const std::vector<int>& y, const SvmConfig& cfg) {
  cfg.validate();
  if (x.rank() != 2) throw ShapeMismatch("svm_train: expected samples-by-features matrix");
  const std::size_t rows = x.dim(0), cols = x.dim(1);
  if (rows != y.size()) throw ShapeMismatch("svm_train: label count mismatch");
  if (rows < 2) throw ShapeMismatch("svm_train: need at least two samples");

  bool pos = false, neg = false;
  for (int label : y) {
    if (label == +1) pos = true;
    else if (label == -1) neg = true;
    else throw DomainError("svm_train: labels must be +1 or -1");
  }
  if (!pos || !neg) throw SingleClass("svm_train: both classes must be present");

  SvmModel model;
  model.standardize = cfg.standardize;
  model.feature_mean.assign(cols, 0.0);
  model.feature_scale.assign(cols, 1.0);
  if (cfg.standardize) {
    for (std::size_t f = 0; f < cols; ++f) {
      double mean = 0.0;
      for (std::size_t s = 0; s < rows; ++s) mean += x(s, f);
      mean /= static_cast<double>(rows);
      double var = 0.0;
      for (std::size_t s = 0; s < rows; ++s) {
        const double d = x(s, f) - mean;
        var += d * d;
      }
      const double sd = std::sqrt(var / static_cast<double>(rows));
      model.feature_mean[f] = mean;
      model.feature_scale[f] = sd > 0.0 ? sd : 1.0;
    }
  }

  // Pre-scaled copy of the data.
  Tensor z({rows, cols});
  for (std::size_t s = 0; s < rows; ++s) {
    for (std::size_t f = 0; f < cols; ++f) {
      z(s, f) = (x(s, f) - model.feature_mean[f]) / model.feature_scale[f];
    }
  }

  const double lambda = 1.0 / (cfg.C * static_cast<double>(rows));
  const double radius = 1.0 / std::sqrt(lambda);
  std::vector<double> w(cols, 0.0);
  double b = 0.0;
  std::vector<double> gw(cols, 0.0);

  for (std::size_t t = 1; t <= cfg.iterations; ++t) {
    const double eta = 1.0 / (lambda * static_cast<double>(t));
    for (std::size_t f = 0; f < cols; ++f) gw[f] = lambda * w[f];
    double gb = 0.0;
    const double inv_rows = 1.0 / static_cast<double>(rows);
    for (std::size_t s = 0; s < rows; ++s) {
      const double* row = z.data() + s * cols;
      double margin = b;
      for (std::size_t f = 0; f < cols; ++f) margin += w[f] * row[f];
      margin *= y[s];
      if (margin < 1.0) {
        const double scale = y[s] * inv_rows;
        for (std::size_t f = 0; f < cols; ++f) gw[f] -= scale * row[f];
        gb -= scale;
      }
    }
    double norm2 = 0.0;
    for (std::size_t f = 0; f < cols; ++f) {
      w[f] -= eta * gw[f];
      norm2 += w[f] * w[f];
    }
    b -= eta * gb;
    // Pegasos projection onto the ball of radius 1/sqrt(lambda).
    const double norm = std::sqrt(norm2);
    if (norm > radius) {
      const double shrink = radius / norm;
      for (std::size_t f = 0; f < cols; ++f) w[f] *= shrink;
    }
  }

  model.weights = std::move(w);
  model.bias = b;

  SvmTrainResult result;
  double hinge_sum = 0.0;
  std::size_t correct = 0;
  for (std::size_t s = 0; s < rows; ++s) {
    const double* row = z.data() + s * cols;
    double margin = model.bias;
    for (std::size_t f = 0; f < cols; ++f) margin += model.weights[f] * row[f];
    if ((margin >= 0.0 ? +1 : -1) == y[s]) ++correct;
    hinge_sum += std::max(0.0, 1.0 - y[s] * margin);
  }
  double wnorm2 = 0.0;
  for (double v : model.weights) wnorm2 += v * v;
  result.train_accuracy = static_cast<double>(correct) / static_cast<double>(rows);
  result.objective = 0.5 * lambda * wnorm2 + hinge_sum / static_cast<double>(rows);
  result.model = std::move(model);
  return result;
}

}  // namespace mforge
