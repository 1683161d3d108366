#include "mforge/layers.hpp"

#include <cmath>

namespace mforge {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw ShapeMismatch(msg);
}

// Transposes each channel: out(c,j,k) = x(c,k,j). Keeps column scans contiguous.
Tensor transpose_channels(const EdgeFeatureMap& x) {
  const std::size_t n = x.n, c = x.channels;
  Tensor t({c, n, n});
  for (std::size_t ch = 0; ch < c; ++ch) {
    const double* src = x.values.data() + ch * n * n;
    double* dst = t.data() + ch * n * n;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) dst[j * n + i] = src[i * n + j];
    }
  }
  return t;
}

double stable_sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor uniform_tensor(std::vector<std::size_t> shape, double scale, Prng& rng) {
  Tensor t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-scale, scale);
  return t;
}

double glorot_scale(std::size_t fan_in, std::size_t fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

}  // namespace

// ---------------------------------------------------------------------------
// Edge-to-edge
// ---------------------------------------------------------------------------

EdgeFeatureMap e2e_forward(const EdgeFeatureMap& x, const E2EParams& p) {
  require(x.channels == p.c_in && x.n == p.n, "e2e_forward: input/parameter shapes disagree");
  const std::size_t n = p.n, ci = p.c_in, co = p.c_out;
  const Tensor xt = transpose_channels(x);

  // Row and column aggregates; the output is their broadcast sum.
  Tensor row_acc({n, co}, 0.0), col_acc({n, co}, 0.0);
  for (std::size_t o = 0; o < co; ++o) {
    for (std::size_t c = 0; c < ci; ++c) {
      const double* rw = p.row_weights.data() + (o * ci + c) * n;
      const double* cw = p.col_weights.data() + (o * ci + c) * n;
      const double* xc = x.values.data() + c * n * n;
      const double* xtc = xt.data() + c * n * n;
      for (std::size_t i = 0; i < n; ++i) {
        const double* xrow = xc + i * n;
        const double* xcol = xtc + i * n;
        double r = 0.0, cl = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          r += rw[k] * xrow[k];
          cl += cw[k] * xcol[k];
        }
        row_acc(i, o) += r;
        col_acc(i, o) += cl;
      }
    }
  }

  EdgeFeatureMap y(n, co);
  for (std::size_t o = 0; o < co; ++o) {
    const double b = p.bias[o];
    double* yc = y.values.data() + o * n * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double base = b + row_acc(i, o);
      for (std::size_t j = 0; j < n; ++j) yc[i * n + j] = base + col_acc(j, o);
    }
  }
  return y;
}

EdgeFeatureMap e2e_backward(const EdgeFeatureMap& x, const E2EParams& p,
                            const EdgeFeatureMap& dy, E2EGrads& grads) {
  require(x.channels == p.c_in && x.n == p.n, "e2e_backward: input/parameter shapes disagree");
  require(dy.channels == p.c_out && dy.n == p.n, "e2e_backward: upstream gradient shape");
  const std::size_t n = p.n, ci = p.c_in, co = p.c_out;
  const Tensor xt = transpose_channels(x);

  // Row/column sums of the upstream gradient drive everything below.
  Tensor dyr({n, co}, 0.0), dyc({n, co}, 0.0);
  for (std::size_t o = 0; o < co; ++o) {
    const double* dc = dy.values.data() + o * n * n;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        r += dc[i * n + j];
        dyc(j, o) += dc[i * n + j];
      }
      dyr(i, o) = r;
    }
    double b = 0.0;
    for (std::size_t i = 0; i < n; ++i) b += dyr(i, o);
    grads.bias[o] += b;
  }

  for (std::size_t o = 0; o < co; ++o) {
    for (std::size_t c = 0; c < ci; ++c) {
      double* drw = grads.row_weights.data() + (o * ci + c) * n;
      double* dcw = grads.col_weights.data() + (o * ci + c) * n;
      const double* xc = x.values.data() + c * n * n;
      const double* xtc = xt.data() + c * n * n;
      for (std::size_t i = 0; i < n; ++i) {
        const double gr = dyr(i, o);
        const double gc = dyc(i, o);
        const double* xrow = xc + i * n;
        const double* xcol = xtc + i * n;
        for (std::size_t k = 0; k < n; ++k) {
          drw[k] += gr * xrow[k];
          dcw[k] += gc * xcol[k];
        }
      }
    }
  }

  EdgeFeatureMap dx(n, ci);
  for (std::size_t c = 0; c < ci; ++c) {
    double* dxc = dx.values.data() + c * n * n;
    for (std::size_t o = 0; o < co; ++o) {
      const double* rw = p.row_weights.data() + (o * ci + c) * n;
      const double* cw = p.col_weights.data() + (o * ci + c) * n;
      for (std::size_t a = 0; a < n; ++a) {
        const double gr = dyr(a, o);
        const double cwa = cw[a];
        double* dxrow = dxc + a * n;
        for (std::size_t b = 0; b < n; ++b) dxrow[b] += gr * rw[b] + cwa * dyc(b, o);
      }
    }
  }
  return dx;
}

// ---------------------------------------------------------------------------
// Edge-to-node
// ---------------------------------------------------------------------------

NodeFeatureMap e2n_forward(const EdgeFeatureMap& x, const E2NParams& p) {
  require(x.channels == p.c_in && x.n == p.n, "e2n_forward: input/parameter shapes disagree");
  const std::size_t n = p.n, ci = p.c_in, co = p.c_out;
  NodeFeatureMap h(n, co);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < co; ++o) {
      double acc = p.bias[o];
      for (std::size_t c = 0; c < ci; ++c) {
        const double* w = p.node_weights.data() + (o * ci + c) * n;
        const double* xrow = x.values.data() + (c * n + i) * n;
        for (std::size_t k = 0; k < n; ++k) acc += w[k] * xrow[k];
      }
      h.at(i, o) = acc;
    }
  }
  return h;
}

EdgeFeatureMap e2n_backward(const EdgeFeatureMap& x, const E2NParams& p,
                            const NodeFeatureMap& dh, E2NGrads& grads) {
  require(x.channels == p.c_in && x.n == p.n, "e2n_backward: input/parameter shapes disagree");
  require(dh.channels == p.c_out && dh.n == p.n, "e2n_backward: upstream gradient shape");
  const std::size_t n = p.n, ci = p.c_in, co = p.c_out;

  for (std::size_t o = 0; o < co; ++o) {
    double b = 0.0;
    for (std::size_t i = 0; i < n; ++i) b += dh.at(i, o);
    grads.bias[o] += b;
  }

  EdgeFeatureMap dx(n, ci);
  for (std::size_t o = 0; o < co; ++o) {
    for (std::size_t c = 0; c < ci; ++c) {
      const double* w = p.node_weights.data() + (o * ci + c) * n;
      double* dw = grads.node_weights.data() + (o * ci + c) * n;
      for (std::size_t i = 0; i < n; ++i) {
        const double g = dh.at(i, o);
        if (g == 0.0) continue;
        const double* xrow = x.values.data() + (c * n + i) * n;
        double* dxrow = dx.values.data() + (c * n + i) * n;
        for (std::size_t k = 0; k < n; ++k) {
          dw[k] += g * xrow[k];
          dxrow[k] += g * w[k];
        }
      }
    }
  }
  return dx;
}

// ---------------------------------------------------------------------------
// Node-to-edge
// ---------------------------------------------------------------------------

EdgeFeatureMap n2e_forward(const NodeFeatureMap& h, const N2EParams& p) {
  require(h.channels == p.c_in, "n2e_forward: input/parameter shapes disagree");
  const std::size_t n = h.n, ci = p.c_in, co = p.c_out;

  Tensor row_acc({n, co}, 0.0), col_acc({n, co}, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < co; ++o) {
      double r = 0.0, cl = 0.0;
      for (std::size_t c = 0; c < ci; ++c) {
        r += p.p_weights(o, c) * h.at(i, c);
        cl += p.q_weights(o, c) * h.at(i, c);
      }
      row_acc(i, o) = r;
      col_acc(i, o) = cl;
    }
  }

  EdgeFeatureMap y(n, co);
  for (std::size_t o = 0; o < co; ++o) {
    const double b = p.bias[o];
    double* yc = y.values.data() + o * n * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double base = b + row_acc(i, o);
      for (std::size_t j = 0; j < n; ++j) yc[i * n + j] = base + col_acc(j, o);
    }
  }
  return y;
}

NodeFeatureMap n2e_backward(const NodeFeatureMap& h, const N2EParams& p,
                            const EdgeFeatureMap& dy, N2EGrads& grads) {
  require(h.channels == p.c_in, "n2e_backward: input/parameter shapes disagree");
  require(dy.channels == p.c_out && dy.n == h.n, "n2e_backward: upstream gradient shape");
  const std::size_t n = h.n, ci = p.c_in, co = p.c_out;

  Tensor dyr({n, co}, 0.0), dyc({n, co}, 0.0);
  for (std::size_t o = 0; o < co; ++o) {
    const double* dc = dy.values.data() + o * n * n;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        r += dc[i * n + j];
        dyc(j, o) += dc[i * n + j];
      }
      dyr(i, o) = r;
    }
    double b = 0.0;
    for (std::size_t i = 0; i < n; ++i) b += dyr(i, o);
    grads.bias[o] += b;
  }

  NodeFeatureMap dh(n, ci);
  for (std::size_t o = 0; o < co; ++o) {
    for (std::size_t c = 0; c < ci; ++c) {
      const double pw = p.p_weights(o, c);
      const double qw = p.q_weights(o, c);
      double dp = 0.0, dq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dp += dyr(i, o) * h.at(i, c);
        dq += dyc(i, o) * h.at(i, c);
        dh.at(i, c) += pw * dyr(i, o) + qw * dyc(i, o);
      }
      grads.p_weights(o, c) += dp;
      grads.q_weights(o, c) += dq;
    }
  }
  return dh;
}

// ---------------------------------------------------------------------------
// Dense head
// ---------------------------------------------------------------------------

Tensor dense_forward(const NodeFeatureMap& h, const DenseParams& p) {
  require(h.n * h.channels == p.in, "dense_forward: flattened input size mismatch");
  Tensor y({p.out});
  const double* flat = h.values.data();
  for (std::size_t o = 0; o < p.out; ++o) {
    const double* w = p.weights.data() + o * p.in;
    double acc = p.bias[o];
    for (std::size_t f = 0; f < p.in; ++f) acc += w[f] * flat[f];
    y[o] = acc;
  }
  return y;
}

NodeFeatureMap dense_backward(const NodeFeatureMap& h, const DenseParams& p,
                              const Tensor& dy, DenseGrads& grads) {
  require(h.n * h.channels == p.in, "dense_backward: flattened input size mismatch");
  require(dy.size() == p.out, "dense_backward: upstream gradient size");
  NodeFeatureMap dh(h.n, h.channels);
  const double* flat = h.values.data();
  double* dflat = dh.values.data();
  for (std::size_t o = 0; o < p.out; ++o) {
    const double g = dy[o];
    grads.bias[o] += g;
    const double* w = p.weights.data() + o * p.in;
    double* dw = grads.weights.data() + o * p.in;
    for (std::size_t f = 0; f < p.in; ++f) {
      dw[f] += g * flat[f];
      dflat[f] += g * w[f];
    }
  }
  return dh;
}

// ---------------------------------------------------------------------------
// Activations
// ---------------------------------------------------------------------------

std::string to_string(Activation a) {
  switch (a) {
    case Activation::kRelu: return "relu";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kTanh: return "tanh";
    case Activation::kIdentity: return "identity";
  }
  return "unknown";
}

Activation activation_from_string(const std::string& s) {
  if (s == "relu") return Activation::kRelu;
  if (s == "sigmoid") return Activation::kSigmoid;
  if (s == "tanh") return Activation::kTanh;
  if (s == "identity") return Activation::kIdentity;
  throw ConfigError("unknown activation: " + s);
}

double apply_activation(double x, Activation kind) {
  switch (kind) {
    case Activation::kRelu: return x > 0.0 ? x : 0.0;
    case Activation::kSigmoid: return stable_sigmoid(x);
    case Activation::kTanh: return std::tanh(x);
    case Activation::kIdentity: return x;
  }
  return x;
}

Tensor activation(const Tensor& x, Activation kind) {
  Tensor y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = apply_activation(y[i], kind);
  return y;
}

Tensor activation_backward(const Tensor& y, const Tensor& dy, Activation kind) {
  if (!y.same_shape(dy)) throw ShapeMismatch("activation_backward: shape mismatch");
  Tensor dx = dy;
  switch (kind) {
    case Activation::kRelu:
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = y[i] > 0.0 ? dx[i] : 0.0;
      break;
    case Activation::kSigmoid:
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] *= y[i] * (1.0 - y[i]);
      break;
    case Activation::kTanh:
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] *= 1.0 - y[i] * y[i];
      break;
    case Activation::kIdentity:
      break;
  }
  return dx;
}

// ---------------------------------------------------------------------------
// Initialization
// ---------------------------------------------------------------------------

E2EParams init_e2e(std::size_t n, std::size_t c_in, std::size_t c_out, Prng& rng) {
  E2EParams p;
  p.n = n;
  p.c_in = c_in;
  p.c_out = c_out;
  const double s = glorot_scale(2 * n * c_in, 2 * n * c_out);
  p.row_weights = uniform_tensor({c_out, c_in, n}, s, rng);
  p.col_weights = uniform_tensor({c_out, c_in, n}, s, rng);
  p.bias = Tensor({c_out}, 0.0);
  return p;
}

E2NParams init_e2n(std::size_t n, std::size_t c_in, std::size_t c_out, Prng& rng) {
  E2NParams p;
  p.n = n;
  p.c_in = c_in;
  p.c_out = c_out;
  const double s = glorot_scale(n * c_in, c_out);
  p.node_weights = uniform_tensor({c_out, c_in, n}, s, rng);
  p.bias = Tensor({c_out}, 0.0);
  return p;
}

N2EParams init_n2e(std::size_t n, std::size_t c_in, std::size_t c_out, Prng& rng) {
  N2EParams p;
  p.c_in = c_in;
  p.c_out = c_out;
  const double s = glorot_scale(2 * c_in, 2 * n * c_out);
  p.p_weights = uniform_tensor({c_out, c_in}, s, rng);
  p.q_weights = uniform_tensor({c_out, c_in}, s, rng);
  p.bias = Tensor({c_out}, 0.0);
  return p;
}

DenseParams init_dense(std::size_t in, std::size_t out, Prng& rng) {
  DenseParams p;
  p.in = in;
  p.out = out;
  const double s = glorot_scale(in, out);
  p.weights = uniform_tensor({out, in}, s, rng);
  p.bias = Tensor({out}, 0.0);
  return p;
}

}  // namespace mforge
