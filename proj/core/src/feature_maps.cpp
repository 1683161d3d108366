#include "mforge/feature_maps.hpp"

namespace mforge {

Tensor EdgeFeatureMap::channel_mean() const {
  Tensor m({n, n}, 0.0);
  if (channels == 0) return m;
  for (std::size_t c = 0; c < channels; ++c) {
    const double* src = values.data() + c * n * n;
    for (std::size_t i = 0; i < n * n; ++i) m[i] += src[i];
  }
  const double inv = 1.0 / static_cast<double>(channels);
  for (std::size_t i = 0; i < n * n; ++i) m[i] *= inv;
  return m;
}

EdgeFeatureMap channel_concat(const EdgeFeatureMap& a, const EdgeFeatureMap& b) {
  if (b.channels == 0) return a;
  if (a.channels == 0) return b;
  if (a.n != b.n) throw ShapeMismatch("channel_concat: node counts differ");
  EdgeFeatureMap out(a.n, a.channels + b.channels);
  const std::size_t plane = a.n * a.n;
  std::copy(a.values.data(), a.values.data() + a.channels * plane, out.values.data());
  std::copy(b.values.data(), b.values.data() + b.channels * plane,
            out.values.data() + a.channels * plane);
  return out;
}

void channel_split(const EdgeFeatureMap& joint, EdgeFeatureMap& a, EdgeFeatureMap& b,
                   std::size_t a_channels) {
  if (a_channels > joint.channels) throw ShapeMismatch("channel_split: split point too large");
  const std::size_t plane = joint.n * joint.n;
  a = EdgeFeatureMap(joint.n, a_channels);
  b = EdgeFeatureMap(joint.n, joint.channels - a_channels);
  std::copy(joint.values.data(), joint.values.data() + a_channels * plane, a.values.data());
  std::copy(joint.values.data() + a_channels * plane,
            joint.values.data() + joint.channels * plane, b.values.data());
}

NodeFeatureMap channel_concat(const NodeFeatureMap& a, const NodeFeatureMap& b) {
  if (b.channels == 0) return a;
  if (a.channels == 0) return b;
  if (a.n != b.n) throw ShapeMismatch("channel_concat: node counts differ");
  NodeFeatureMap out(a.n, a.channels + b.channels);
  for (std::size_t i = 0; i < a.n; ++i) {
    for (std::size_t c = 0; c < a.channels; ++c) out.at(i, c) = a.at(i, c);
    for (std::size_t c = 0; c < b.channels; ++c) out.at(i, a.channels + c) = b.at(i, c);
  }
  return out;
}

void channel_split(const NodeFeatureMap& joint, NodeFeatureMap& a, NodeFeatureMap& b,
                   std::size_t a_channels) {
  if (a_channels > joint.channels) throw ShapeMismatch("channel_split: split point too large");
  a = NodeFeatureMap(joint.n, a_channels);
  b = NodeFeatureMap(joint.n, joint.channels - a_channels);
  for (std::size_t i = 0; i < joint.n; ++i) {
    for (std::size_t c = 0; c < a_channels; ++c) a.at(i, c) = joint.at(i, c);
    for (std::size_t c = 0; c < b.channels; ++c) b.at(i, c) = joint.at(i, a_channels + c);
  }
}

Tensor symmetrized(const Tensor& m) {
  require_square(m, "symmetrized");
  const std::size_t n = m.dim(0);
  Tensor out({n, n});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = 0.5 * (m(i, j) + m(j, i));
  }
  return out;
}

void zero_diagonal(Tensor& m) {
  require_square(m, "zero_diagonal");
  const std::size_t n = m.dim(0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 0.0;
}

}  // namespace mforge
