#pragma once

#include <cstdint>
#include <string>

#include "mforge/feature_maps.hpp"
#include "mforge/prng.hpp"
#include "mforge/tensor.hpp"

namespace mforge {

// ---------------------------------------------------------------------------
// Layer parameter families
//
// Edge-to-edge layers use a cross-shaped filter: the output at edge (i, j)
// mixes row i and column j of the input, with one learned weight per node
// index. Edge-to-node layers aggregate each node's incident-edge row.
// Node-to-edge layers expand endpoint node features back to edge space.
// The deconvolution direction reuses the edge-to-edge family with its own
// independent parameters.
// ---------------------------------------------------------------------------

struct E2EParams {
  std::size_t n = 0, c_in = 0, c_out = 0;
  Tensor row_weights;  // {c_out, c_in, n}
  Tensor col_weights;  // {c_out, c_in, n}
  Tensor bias;         // {c_out}
};

struct E2NParams {
  std::size_t n = 0, c_in = 0, c_out = 0;
  Tensor node_weights;  // {c_out, c_in, n}
  Tensor bias;          // {c_out}
};

struct N2EParams {
  std::size_t c_in = 0, c_out = 0;
  Tensor p_weights;  // {c_out, c_in}, applied to the row endpoint
  Tensor q_weights;  // {c_out, c_in}, applied to the column endpoint
  Tensor bias;       // {c_out}
};

struct DenseParams {
  std::size_t in = 0, out = 0;
  Tensor weights;  // {out, in}
  Tensor bias;     // {out}
};

// Gradient accumulators mirror the parameter tensors; backward passes add
// into them so batches can accumulate.
struct E2EGrads {
  Tensor row_weights, col_weights, bias;
  explicit E2EGrads(const E2EParams& p)
      : row_weights(p.row_weights.shape()), col_weights(p.col_weights.shape()), bias(p.bias.shape()) {}
};

struct E2NGrads {
  Tensor node_weights, bias;
  explicit E2NGrads(const E2NParams& p) : node_weights(p.node_weights.shape()), bias(p.bias.shape()) {}
};

struct N2EGrads {
  Tensor p_weights, q_weights, bias;
  explicit N2EGrads(const N2EParams& p)
      : p_weights(p.p_weights.shape()), q_weights(p.q_weights.shape()), bias(p.bias.shape()) {}
};

struct DenseGrads {
  Tensor weights, bias;
  explicit DenseGrads(const DenseParams& p) : weights(p.weights.shape()), bias(p.bias.shape()) {}
};

// ---------------------------------------------------------------------------
// Forward passes (pre-activation, linear in the input)
// ---------------------------------------------------------------------------

/// Y(o,i,j) = bias(o) + sum_c sum_k [ row_w(o,c,k) X(c,i,k) + col_w(o,c,k) X(c,k,j) ]
EdgeFeatureMap e2e_forward(const EdgeFeatureMap& x, const E2EParams& p);

/// H(i,o) = bias(o) + sum_c sum_k node_w(o,c,k) X(c,i,k)   (row aggregation)
NodeFeatureMap e2n_forward(const EdgeFeatureMap& x, const E2NParams& p);

/// Y(o,i,j) = bias(o) + sum_c [ P(o,c) H(i,c) + Q(o,c) H(j,c) ]
EdgeFeatureMap n2e_forward(const NodeFeatureMap& h, const N2EParams& p);

/// y(o) = bias(o) + sum_i sum_c W(o, i*C+c) H(i,c)
Tensor dense_forward(const NodeFeatureMap& h, const DenseParams& p);

// ---------------------------------------------------------------------------
// Backward passes. Each returns the input gradient and accumulates parameter
// gradients into the given accumulator. Verified by finite differences.
// ---------------------------------------------------------------------------

EdgeFeatureMap e2e_backward(const EdgeFeatureMap& x, const E2EParams& p,
                            const EdgeFeatureMap& dy, E2EGrads& grads);

EdgeFeatureMap e2n_backward(const EdgeFeatureMap& x, const E2NParams& p,
                            const NodeFeatureMap& dh, E2NGrads& grads);

NodeFeatureMap n2e_backward(const NodeFeatureMap& h, const N2EParams& p,
                            const EdgeFeatureMap& dy, N2EGrads& grads);

NodeFeatureMap dense_backward(const NodeFeatureMap& h, const DenseParams& p,
                              const Tensor& dy, DenseGrads& grads);

// ---------------------------------------------------------------------------
// Activations
// ---------------------------------------------------------------------------

enum class Activation : std::uint8_t { kRelu, kSigmoid, kTanh, kIdentity };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

double apply_activation(double x, Activation kind);

/// Elementwise activation over any tensor.
Tensor activation(const Tensor& x, Activation kind);

/// Upstream gradient times the elementwise derivative, expressed through the
/// forward *output* y (relu'(0) is taken as 0).
Tensor activation_backward(const Tensor& y, const Tensor& dy, Activation kind);

// ---------------------------------------------------------------------------
// Initialization: uniform in [-s, s] with s = sqrt(6 / (fan_in + fan_out)),
// fans counted per layer family; biases start at zero.
// ---------------------------------------------------------------------------

E2EParams init_e2e(std::size_t n, std::size_t c_in, std::size_t c_out, Prng& rng);
E2NParams init_e2n(std::size_t n, std::size_t c_in, std::size_t c_out, Prng& rng);
N2EParams init_n2e(std::size_t n, std::size_t c_in, std::size_t c_out, Prng& rng);
DenseParams init_dense(std::size_t in, std::size_t out, Prng& rng);

}  // namespace mforge
