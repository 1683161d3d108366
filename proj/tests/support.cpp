#include "support.hpp"

#include <cmath>

namespace testsupport {

using mforge::BrainNetwork;
using mforge::EdgeFeatureMap;
using mforge::NodeFeatureMap;
using mforge::Prng;
using mforge::Tensor;

double jacobi_spectral_radius(Tensor a, double tol) {
  const std::size_t n = a.dim(0);
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) < tol) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(a(i, i)));
  return radius;
}

Tensor conv_quadruple_loop(const Tensor& s, const Tensor& t) {
  const std::size_t n = s.dim(0);
  Tensor out({n, n}, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      double acc = 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
          // 1-based: T(a - p + 1, b - q + 1); zero outside [1, n]^2.
          const long ti = static_cast<long>(a) - static_cast<long>(p);
          const long tj = static_cast<long>(b) - static_cast<long>(q);
          if (ti < 0 || tj < 0 || ti >= static_cast<long>(n) || tj >= static_cast<long>(n)) {
            continue;
          }
          acc += s(p, q) * t(static_cast<std::size_t>(ti), static_cast<std::size_t>(tj));
        }
      }
      out(a, b) = acc;
    }
  }
  return out;
}

Tensor random_matrix(std::size_t rows, std::size_t cols, Prng& rng, double lo, double hi) {
  Tensor m({rows, cols});
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = rng.uniform(lo, hi);
  return m;
}

Tensor random_symmetric(std::size_t n, Prng& rng, double lo, double hi) {
  Tensor m({n, n}, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = rng.uniform(lo, hi);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

BrainNetwork random_network(std::size_t n, Prng& rng) {
  Tensor m({n, n}, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.uniform();
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return BrainNetwork(std::move(m), "test_view");
}

EdgeFeatureMap random_edge_map(std::size_t n, std::size_t channels, Prng& rng) {
  EdgeFeatureMap x(n, channels);
  for (std::size_t i = 0; i < x.values.size(); ++i) x.values[i] = rng.uniform(-1.0, 1.0);
  return x;
}

NodeFeatureMap random_node_map(std::size_t n, std::size_t channels, Prng& rng) {
  NodeFeatureMap x(n, channels);
  for (std::size_t i = 0; i < x.values.size(); ++i) x.values[i] = rng.uniform(-1.0, 1.0);
  return x;
}

}  // namespace testsupport
