#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "mforge/errors.hpp"

namespace mforge {

/// Dense row-major tensor of doubles. The library only ever needs rank 1..3,
/// but storage is rank-agnostic. All numerics are 64-bit.
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0)
      : shape_(std::move(shape)), data_(count(shape_), fill) {}

  static Tensor from_data(std::vector<std::size_t> shape, std::vector<double> data) {
    if (count(shape) != data.size()) {
      throw ShapeMismatch("tensor data length does not match shape");
    }
    Tensor t;
    t.shape_ = std::move(shape);
    t.data_ = std::move(data);
    return t;
  }

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t dim(std::size_t i) const { return shape_.at(i); }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  std::vector<double>& values() noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * shape_[1] + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * shape_[1] + j];
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }

  bool same_shape(const Tensor& other) const noexcept { return shape_ == other.shape_; }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

  bool all_finite() const noexcept {
    for (double v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  Tensor& operator+=(const Tensor& other) {
    if (!same_shape(other)) throw ShapeMismatch("tensor += shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  Tensor& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

 private:
  static std::size_t count(const std::vector<std::size_t>& shape) {
    std::size_t c = 1;
    for (std::size_t d : shape) c *= d;
    return shape.empty() ? 0 : c;
  }

  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

/// n-by-n square matrix check.
inline void require_square(const Tensor& a, const char* what) {
  if (a.rank() != 2 || a.dim(0) != a.dim(1)) {
    throw ShapeMismatch(std::string(what) + ": expected a square matrix");
  }
}

}  // namespace mforge
