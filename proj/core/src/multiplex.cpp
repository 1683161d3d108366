#include "mforge/multiplex.hpp"

#include <cmath>

#include "mforge/feature_maps.hpp"

namespace mforge {

Tensor min_max_normalized(const Tensor& m) {
  double lo = m[0], hi = m[0];
  for (std::size_t i = 0; i < m.size(); ++i) {
    lo = std::min(lo, m[i]);
    hi = std::max(hi, m[i]);
  }
  Tensor out(m.shape(), 0.0);
  const double range = hi - lo;
  if (range <= 0.0) return out;  // constant map
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = (m[i] - lo) / range;
  return out;
}

Tensor inter_layer_conv(const Tensor& source, const Tensor& target, bool normalize) {
  require_square(source, "inter_layer_conv");
  require_square(target, "inter_layer_conv");
  if (!source.same_shape(target)) {
    throw ShapeMismatch("inter_layer_conv: intra-layers must share n");
  }
  const std::size_t n = source.dim(0);
  Tensor out({n, n}, 0.0);
  // With the +1 offset, only p <= a and q <= b land inside the target.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      double acc = 0.0;
      for (std::size_t p = 0; p <= a; ++p) {
        const double* srow = source.data() + p * n;
        const double* trow = target.data() + (a - p) * n;
        for (std::size_t q = 0; q <= b; ++q) acc += srow[q] * trow[b - q];
      }
      out(a, b) = acc;
    }
  }
  return normalize ? min_max_normalized(out) : out;
}

std::string to_string(InterKind k) {
  switch (k) {
    case InterKind::kConv: return "conv";
    case InterKind::kLearnedPreRelu: return "learned_pre_relu";
    case InterKind::kLearnedPostRelu: return "learned_post_relu";
  }
  return "unknown";
}

Multiplex build_multiplex(const BrainNetwork& source, const BrainNetwork& target,
                          InterKind kind, const std::optional<Tensor>& tap,
                          bool normalize_inter) {
  if (source.n != target.n) throw ShapeMismatch("build_multiplex: layer sizes differ");
  Multiplex m;
  m.source = source;
  m.target = target;
  m.inter_kind = kind;
  if (kind == InterKind::kConv) {
    m.inter = inter_layer_conv(source.weights, target.weights, normalize_inter);
  } else {
    if (!tap.has_value()) throw MissingTap("build_multiplex: learned inter-layer needs a tap");
    if (tap->rank() != 2 || tap->dim(0) != source.n || tap->dim(1) != source.n) {
      throw ShapeMismatch("build_multiplex: tap must be n-by-n");
    }
    m.inter = min_max_normalized(*tap);
  }
  return m;
}

std::size_t feature_count(std::size_t n, std::size_t layers) {
  return layers * n * (n - 1) / 2;
}

std::size_t feature_position(const FeatureIndex& idx, std::size_t n) {
  const std::size_t per_layer = n * (n - 1) / 2;
  // Row-major strict upper triangle: offset of row i plus the column gap.
  const std::size_t row_off = idx.i * n - idx.i * (idx.i + 1) / 2;
  return idx.layer * per_layer + row_off + (idx.j - idx.i - 1);
}

FeatureIndex feature_index(std::size_t position, std::size_t n, std::size_t layers) {
  const std::size_t per_layer = n * (n - 1) / 2;
  if (position >= layers * per_layer) {
    throw DomainError("feature_index: position out of range");
  }
  FeatureIndex idx;
  idx.layer = position / per_layer;
  std::size_t rem = position % per_layer;
  std::size_t i = 0;
  while (rem >= n - 1 - i) {
    rem -= n - 1 - i;
    ++i;
  }
  idx.i = i;
  idx.j = i + 1 + rem;
  return idx;
}

namespace {

void append_upper(const Tensor& m, std::vector<double>& out) {
  const std::size_t n = m.dim(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(m(i, j));
  }
}

Tensor from_upper(const double* v, std::size_t n) {
  Tensor m({n, n}, 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = v[k];
      m(j, i) = v[k];
      ++k;
    }
  }
  return m;
}

}  // namespace

FeatureVector vectorize(const BrainNetwork& net) {
  FeatureVector v;
  v.n = net.n;
  v.layers = 1;
  v.values.reserve(feature_count(net.n, 1));
  append_upper(net.weights, v.values);
  return v;
}

FeatureVector vectorize(const Multiplex& m) {
  if (m.source.n != m.target.n || m.inter.dim(0) != m.source.n) {
    throw ShapeMismatch("vectorize: inconsistent multiplex layers");
  }
  FeatureVector v;
  v.n = m.source.n;
  v.layers = 3;
  v.values.reserve(feature_count(v.n, 3));
  append_upper(m.source.weights, v.values);
  append_upper(m.inter, v.values);
  append_upper(m.target.weights, v.values);
  return v;
}

BrainNetwork devectorize_network(const FeatureVector& v) {
  if (v.layers != 1 || v.values.size() != feature_count(v.n, 1)) {
    throw ShapeMismatch("devectorize_network: not a single-network vector");
  }
  return BrainNetwork(from_upper(v.values.data(), v.n));
}

Multiplex devectorize_multiplex(const FeatureVector& v) {
  if (v.layers != 3 || v.values.size() != feature_count(v.n, 3)) {
    throw ShapeMismatch("devectorize_multiplex: not a multiplex vector");
  }
  const std::size_t per_layer = feature_count(v.n, 1);
  Multiplex m;
  m.source = BrainNetwork(from_upper(v.values.data(), v.n));
  m.inter = from_upper(v.values.data() + per_layer, v.n);
  m.target = BrainNetwork(from_upper(v.values.data() + 2 * per_layer, v.n));
  return m;
}

double mae(const Tensor& predicted, const Tensor& truth) {
  require_square(predicted, "mae");
  if (!predicted.same_shape(truth)) throw ShapeMismatch("mae: sizes differ");
  const std::size_t n = predicted.dim(0);
  if (n < 2) throw ShapeMismatch("mae: need at least two nodes");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) acc += std::abs(predicted(i, j) - truth(i, j));
  }
  return acc / static_cast<double>(n * (n - 1) / 2);
}

double mae(const BrainNetwork& predicted, const BrainNetwork& truth) {
  return mae(predicted.weights, truth.weights);
}

}  // namespace mforge
