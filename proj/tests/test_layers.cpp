#include <cmath>

#include <doctest.h>
#include <mforge/gradcheck.hpp>
#include <mforge/layers.hpp>

#include "support.hpp"

using namespace mforge;

TEST_SUITE_BEGIN("layers");

namespace {

std::vector<double> flatten(std::initializer_list<const Tensor*> tensors) {
  std::vector<double> out;
  for (const Tensor* t : tensors) {
    out.insert(out.end(), t->values().begin(), t->values().end());
  }
  return out;
}

void unflatten(const std::vector<double>& theta, std::initializer_list<Tensor*> tensors) {
  std::size_t off = 0;
  for (Tensor* t : tensors) {
    std::copy(theta.begin() + static_cast<std::ptrdiff_t>(off),
              theta.begin() + static_cast<std::ptrdiff_t>(off + t->size()), t->data());
    off += t->size();
  }
}

double weighted_sum(const Tensor& y, const Tensor& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += y[i] * w[i];
  return acc;
}

}  // namespace

TEST_CASE("e2e_forward: zero input broadcasts the bias") {
  Prng rng(3);
  E2EParams p = init_e2e(4, 2, 3, rng);
  p.bias = Tensor::from_data({3}, {0.5, -1.0, 2.0});
  EdgeFeatureMap x(4, 2);  // zeros
  EdgeFeatureMap y = e2e_forward(x, p);
  for (std::size_t o = 0; o < 3; ++o) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) REQUIRE(y.at(o, i, j) == p.bias[o]);
    }
  }
}

TEST_CASE("e2e_forward: unit first row weight selects the first column") {
  E2EParams p;
  p.n = 2;
  p.c_in = 1;
  p.c_out = 1;
  p.row_weights = Tensor::from_data({1, 1, 2}, {1.0, 0.0});
  p.col_weights = Tensor::from_data({1, 1, 2}, {0.0, 0.0});
  p.bias = Tensor({1}, 0.0);
  EdgeFeatureMap x(2, 1);
  x.at(0, 0, 0) = 1.0;
  x.at(0, 0, 1) = 2.0;
  x.at(0, 1, 0) = 3.0;
  x.at(0, 1, 1) = 4.0;
  EdgeFeatureMap y = e2e_forward(x, p);
  CHECK(y.at(0, 0, 0) == 1.0);
  CHECK(y.at(0, 0, 1) == 1.0);
  CHECK(y.at(0, 1, 0) == 3.0);
  CHECK(y.at(0, 1, 1) == 3.0);
}

TEST_CASE("e2e_forward: tied weights preserve symmetry") {
  Prng rng(5);
  E2EParams p = init_e2e(6, 2, 3, rng);
  p.col_weights = p.row_weights;
  EdgeFeatureMap x(6, 2);
  for (std::size_t c = 0; c < 2; ++c) {
    Tensor sym = testsupport::random_symmetric(6, rng);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) x.at(c, i, j) = sym(i, j);
    }
  }
  EdgeFeatureMap y = e2e_forward(x, p);
  for (std::size_t o = 0; o < 3; ++o) {
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        REQUIRE(std::abs(y.at(o, i, j) - y.at(o, j, i)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("e2n_forward: row aggregation on a hand example") {
  E2NParams p;
  p.n = 2;
  p.c_in = 1;
  p.c_out = 1;
  p.node_weights = Tensor({1, 1, 2}, 1.0);
  p.bias = Tensor({1}, 0.0);
  EdgeFeatureMap x(2, 1);
  x.at(0, 0, 0) = 1.0;
  x.at(0, 0, 1) = 2.0;
  x.at(0, 1, 0) = 3.0;
  x.at(0, 1, 1) = 4.0;
  NodeFeatureMap h = e2n_forward(x, p);
  CHECK(h.at(0, 0) == 3.0);
  CHECK(h.at(1, 0) == 7.0);
}

TEST_CASE("e2n_forward: linear in the input") {
  Prng rng(7);
  E2NParams p = init_e2n(5, 2, 3, rng);
  p.bias = Tensor::from_data({3}, {0.3, -0.2, 1.1});
  EdgeFeatureMap x = testsupport::random_edge_map(5, 2, rng);
  NodeFeatureMap h1 = e2n_forward(x, p);
  EdgeFeatureMap x2 = x;
  x2.values *= 2.5;
  NodeFeatureMap h2 = e2n_forward(x2, p);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t o = 0; o < 3; ++o) {
      CHECK(h2.at(i, o) - p.bias[o] ==
            doctest::Approx(2.5 * (h1.at(i, o) - p.bias[o])).epsilon(1e-12));
    }
  }
}

TEST_CASE("n2e_forward: hand example and symmetry") {
  N2EParams p;
  p.c_in = 1;
  p.c_out = 1;
  p.p_weights = Tensor({1, 1}, 1.0);
  p.q_weights = Tensor({1, 1}, 2.0);
  p.bias = Tensor({1}, 0.0);
  NodeFeatureMap h(2, 1);
  h.at(0, 0) = 1.0;
  h.at(1, 0) = 3.0;
  EdgeFeatureMap y = n2e_forward(h, p);
  CHECK(y.at(0, 0, 0) == 3.0);
  CHECK(y.at(0, 0, 1) == 7.0);
  CHECK(y.at(0, 1, 0) == 5.0);
  CHECK(y.at(0, 1, 1) == 9.0);

  // P = Q makes the output symmetric for any node features.
  Prng rng(11);
  N2EParams tied = init_n2e(6, 3, 2, rng);
  tied.q_weights = tied.p_weights;
  NodeFeatureMap hr = testsupport::random_node_map(6, 3, rng);
  EdgeFeatureMap ys = n2e_forward(hr, tied);
  for (std::size_t o = 0; o < 2; ++o) {
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        REQUIRE(std::abs(ys.at(o, i, j) - ys.at(o, j, i)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("backward passes: zero upstream gradient produces zero gradients") {
  Prng rng(13);
  EdgeFeatureMap x = testsupport::random_edge_map(4, 2, rng);
  E2EParams p = init_e2e(4, 2, 3, rng);
  E2EGrads g(p);
  EdgeFeatureMap dy(4, 3);  // zeros
  EdgeFeatureMap dx = e2e_backward(x, p, dy, g);
  CHECK(dx.values.max_abs() == 0.0);
  CHECK(g.row_weights.max_abs() == 0.0);
  CHECK(g.col_weights.max_abs() == 0.0);
  CHECK(g.bias.max_abs() == 0.0);
}

TEST_CASE("e2e_backward: bias gradient is the sum of the upstream gradient") {
  Prng rng(17);
  EdgeFeatureMap x = testsupport::random_edge_map(5, 2, rng);
  E2EParams p = init_e2e(5, 2, 2, rng);
  E2EGrads g(p);
  EdgeFeatureMap dy = testsupport::random_edge_map(5, 2, rng);
  e2e_backward(x, p, dy, g);
  for (std::size_t o = 0; o < 2; ++o) {
    double expected = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) expected += dy.at(o, i, j);
    }
    CHECK(g.bias[o] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("e2e gradients agree with finite differences") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Prng rng(100 + seed);
    const std::size_t n = 2 + rng.below(7);   // up to 8
    const std::size_t ci = 1 + rng.below(3);  // up to 3
    const std::size_t co = 1 + rng.below(3);
    EdgeFeatureMap x = testsupport::random_edge_map(n, ci, rng);
    E2EParams p = init_e2e(n, ci, co, rng);
    EdgeFeatureMap lw = testsupport::random_edge_map(n, co, rng);  // fixed loss weights

    std::vector<double> theta =
        flatten({&x.values, &p.row_weights, &p.col_weights, &p.bias});
    auto f = [&](const std::vector<double>& v) {
      EdgeFeatureMap xv = x;
      E2EParams pv = p;
      unflatten(v, {&xv.values, &pv.row_weights, &pv.col_weights, &pv.bias});
      return weighted_sum(e2e_forward(xv, pv).values, lw.values);
    };
    E2EGrads g(p);
    EdgeFeatureMap dx = e2e_backward(x, p, lw, g);
    std::vector<double> analytic =
        flatten({&dx.values, &g.row_weights, &g.col_weights, &g.bias});
    REQUIRE(grad_check(f, analytic, theta) < 1e-6);
  }
}

TEST_CASE("e2n gradients agree with finite differences") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Prng rng(200 + seed);
    const std::size_t n = 2 + rng.below(7);
    const std::size_t ci = 1 + rng.below(3);
    const std::size_t co = 1 + rng.below(3);
    EdgeFeatureMap x = testsupport::random_edge_map(n, ci, rng);
    E2NParams p = init_e2n(n, ci, co, rng);
    NodeFeatureMap lw = testsupport::random_node_map(n, co, rng);

    std::vector<double> theta = flatten({&x.values, &p.node_weights, &p.bias});
    auto f = [&](const std::vector<double>& v) {
      EdgeFeatureMap xv = x;
      E2NParams pv = p;
      unflatten(v, {&xv.values, &pv.node_weights, &pv.bias});
      return weighted_sum(e2n_forward(xv, pv).values, lw.values);
    };
    E2NGrads g(p);
    EdgeFeatureMap dx = e2n_backward(x, p, lw, g);
    std::vector<double> analytic = flatten({&dx.values, &g.node_weights, &g.bias});
    REQUIRE(grad_check(f, analytic, theta) < 1e-6);
  }
}

TEST_CASE("n2e gradients agree with finite differences") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Prng rng(300 + seed);
    const std::size_t n = 2 + rng.below(7);
    const std::size_t ci = 1 + rng.below(3);
    const std::size_t co = 1 + rng.below(3);
    NodeFeatureMap h = testsupport::random_node_map(n, ci, rng);
    N2EParams p = init_n2e(n, ci, co, rng);
    EdgeFeatureMap lw = testsupport::random_edge_map(n, co, rng);

    std::vector<double> theta = flatten({&h.values, &p.p_weights, &p.q_weights, &p.bias});
    auto f = [&](const std::vector<double>& v) {
      NodeFeatureMap hv = h;
      N2EParams pv = p;
      unflatten(v, {&hv.values, &pv.p_weights, &pv.q_weights, &pv.bias});
      return weighted_sum(n2e_forward(hv, pv).values, lw.values);
    };
    N2EGrads g(p);
    NodeFeatureMap dh = n2e_backward(h, p, lw, g);
    std::vector<double> analytic = flatten({&dh.values, &g.p_weights, &g.q_weights, &g.bias});
    REQUIRE(grad_check(f, analytic, theta) < 1e-6);
  }
}

TEST_CASE("dense gradients agree with finite differences") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Prng rng(400 + seed);
    const std::size_t n = 2 + rng.below(5);
    const std::size_t c = 1 + rng.below(3);
    NodeFeatureMap h = testsupport::random_node_map(n, c, rng);
    DenseParams p = init_dense(n * c, 1, rng);

    std::vector<double> theta = flatten({&h.values, &p.weights, &p.bias});
    auto f = [&](const std::vector<double>& v) {
      NodeFeatureMap hv = h;
      DenseParams pv = p;
      unflatten(v, {&hv.values, &pv.weights, &pv.bias});
      return dense_forward(hv, pv)[0];
    };
    DenseGrads g(p);
    Tensor dy({1}, 1.0);
    NodeFeatureMap dh = dense_backward(h, p, dy, g);
    std::vector<double> analytic = flatten({&dh.values, &g.weights, &g.bias});
    REQUIRE(grad_check(f, analytic, theta) < 1e-6);
  }
}

TEST_CASE("pre-activation layers are linear up to the bias") {
  Prng rng(31);
  E2EParams p = init_e2e(5, 2, 2, rng);
  p.bias = Tensor::from_data({2}, {0.7, -0.4});
  EdgeFeatureMap x1 = testsupport::random_edge_map(5, 2, rng);
  EdgeFeatureMap x2 = testsupport::random_edge_map(5, 2, rng);
  const double a = 1.7, b = -0.6;

  EdgeFeatureMap combo(5, 2);
  for (std::size_t i = 0; i < combo.values.size(); ++i) {
    combo.values[i] = a * x1.values[i] + b * x2.values[i];
  }
  EdgeFeatureMap zero(5, 2);

  EdgeFeatureMap y_combo = e2e_forward(combo, p);
  EdgeFeatureMap y1 = e2e_forward(x1, p);
  EdgeFeatureMap y2 = e2e_forward(x2, p);
  EdgeFeatureMap y0 = e2e_forward(zero, p);
  for (std::size_t i = 0; i < y_combo.values.size(); ++i) {
    const double expected = a * y1.values[i] + b * y2.values[i] - (a + b - 1.0) * y0.values[i];
    REQUIRE(std::abs(y_combo.values[i] - expected) <= 1e-10);
  }
}

TEST_CASE("forward passes are deterministic") {
  Prng rng(37);
  EdgeFeatureMap x = testsupport::random_edge_map(6, 2, rng);
  E2EParams p = init_e2e(6, 2, 3, rng);
  EdgeFeatureMap y1 = e2e_forward(x, p);
  EdgeFeatureMap y2 = e2e_forward(x, p);
  CHECK(y1.values.values() == y2.values.values());
}

TEST_CASE("activation: relu, sigmoid values") {
  Tensor x = Tensor::from_data({3}, {-1.0, 0.0, 2.0});
  Tensor r = activation(x, Activation::kRelu);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 0.0);
  CHECK(r[2] == 2.0);
  Tensor s = activation(Tensor({1}, 0.0), Activation::kSigmoid);
  CHECK(s[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("activation gradients agree with finite differences") {
  Prng rng(41);
  for (Activation kind : {Activation::kRelu, Activation::kSigmoid, Activation::kTanh,
                          Activation::kIdentity}) {
    Tensor x({20});
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = rng.uniform(-2.0, 2.0);
      if (kind == Activation::kRelu && std::abs(x[i]) < 1e-3) x[i] = 0.5;  // keep off the kink
    }
    Tensor lw({20});
    for (std::size_t i = 0; i < lw.size(); ++i) lw[i] = rng.uniform(-1.0, 1.0);

    auto f = [&](const std::vector<double>& v) {
      Tensor xv = Tensor::from_data({20}, v);
      Tensor y = activation(xv, kind);
      double acc = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) acc += y[i] * lw[i];
      return acc;
    };
    Tensor y = activation(x, kind);
    Tensor dx = activation_backward(y, lw, kind);
    CHECK(grad_check(f, dx.values(), x.values()) < 1e-7);
  }
}

TEST_CASE("shape contracts are enforced") {
  Prng rng(43);
  E2EParams p = init_e2e(4, 2, 2, rng);
  EdgeFeatureMap wrong_channels(4, 3);
  CHECK_THROWS_AS(e2e_forward(wrong_channels, p), ShapeMismatch);
  EdgeFeatureMap wrong_n(5, 2);
  CHECK_THROWS_AS(e2e_forward(wrong_n, p), ShapeMismatch);
}

TEST_SUITE_END();
