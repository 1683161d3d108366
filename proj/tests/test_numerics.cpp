#include <cmath>

#include <doctest.h>
#include <mforge/gradcheck.hpp>
#include <mforge/linalg.hpp>
#include <mforge/prng.hpp>
#include <mforge/tensor.hpp>

#include "support.hpp"

using namespace mforge;

TEST_SUITE_BEGIN("numerics");

namespace {

Tensor identity(std::size_t n) {
  Tensor m({n, n}, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

// Diagonally dominant => comfortably non-singular.
Tensor random_well_conditioned(std::size_t n, Prng& rng) {
  Tensor a = testsupport::random_matrix(n, n, rng);
  for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
  return a;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  const std::size_t n = a.dim(0), k = a.dim(1), m = b.dim(1);
  Tensor c({n, m}, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t j = 0; j < m; ++j) c(i, j) += a(i, l) * b(l, j);
    }
  }
  return c;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("solve_linear: identity returns the right-hand side") {
  Prng rng(1);
  Tensor b = testsupport::random_matrix(3, 4, rng);
  Tensor x = solve_linear(identity(3), b);
  CHECK(max_abs_diff(x, b) == 0.0);
}

TEST_CASE("solve_linear: diagonal system") {
  Tensor a = Tensor::from_data({2, 2}, {2.0, 0.0, 0.0, 4.0});
  Tensor b = Tensor::from_data({2, 1}, {2.0, 8.0});
  Tensor x = solve_linear(a, b);
  CHECK(x(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x(1, 0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("solve_linear: recovers a known solution of a 20x20 system") {
  Prng rng(7);
  Tensor a = random_well_conditioned(20, rng);
  Tensor x_true = testsupport::random_matrix(20, 3, rng);
  Tensor b = matmul(a, x_true);
  Tensor x = solve_linear(a, b);
  CHECK(max_abs_diff(x, x_true) < 1e-8);
}

TEST_CASE("solve_linear: residual bound over 100 random systems") {
  Prng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(15);
    Tensor a = random_well_conditioned(n, rng);
    Tensor b = testsupport::random_matrix(n, 2, rng, -5.0, 5.0);
    Tensor x = solve_linear(a, b);
    Tensor residual = matmul(a, x);
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= b[i];
    CHECK(residual.max_abs() <= 1e-8 * (1.0 + b.max_abs()));
  }
}

TEST_CASE("solve_linear: singular matrix is rejected") {
  Tensor a = Tensor::from_data({2, 2}, {1.0, 2.0, 2.0, 4.0});
  Tensor b = Tensor({2, 1}, 1.0);
  CHECK_THROWS_AS(solve_linear(a, b), SingularMatrix);
}

TEST_CASE("solve_linear: shape contract") {
  Tensor a = Tensor({2, 3}, 1.0);
  CHECK_THROWS_AS(solve_linear(a, Tensor({2, 1}, 1.0)), ShapeMismatch);
  CHECK_THROWS_AS(solve_linear(identity(2), Tensor({3, 1}, 1.0)), ShapeMismatch);
}

TEST_CASE("spectral_radius: identity") {
  CHECK(spectral_radius(identity(4)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectral_radius: symmetric 2x2 with eigenvalues +/-2") {
  Tensor a = Tensor::from_data({2, 2}, {0.0, 2.0, 2.0, 0.0});
  CHECK(spectral_radius(a) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("spectral_radius: matches a dense Jacobi eigensolver") {
  Prng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Tensor a = testsupport::random_symmetric(10, rng, 0.0, 1.0);
    const double expected = testsupport::jacobi_spectral_radius(a);
    const double got = spectral_radius(a);
    CHECK(std::abs(got - expected) / expected < 1e-6);
  }
}

TEST_CASE("spectral_radius: positive homogeneity") {
  Prng rng(17);
  Tensor a = testsupport::random_symmetric(8, rng, 0.0, 1.0);
  const double base = spectral_radius(a);
  for (double alpha : {0.25, 3.0, 17.5}) {
    Tensor scaled = a;
    scaled *= alpha;
    CHECK(std::abs(spectral_radius(scaled) - alpha * base) < 1e-8 * std::max(1.0, alpha * base));
  }
}

TEST_CASE("spectral_radius: rejects negative entries") {
  Tensor a = Tensor::from_data({2, 2}, {1.0, -0.5, 0.5, 1.0});
  CHECK_THROWS_AS(spectral_radius(a), DomainError);
}

TEST_CASE("spectral_radius: a periodic matrix defeats power iteration") {
  // Eigenvalues +-1; the iterate from the ones vector cycles with period 2
  // and the estimate never settles.
  Tensor a = Tensor::from_data({2, 2}, {0.0, 2.0, 0.5, 0.0});
  CHECK_THROWS_AS(spectral_radius(a), NonConvergence);
}

TEST_CASE("grad_check: quadratic") {
  auto f = [](const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc;
  };
  std::vector<double> point = {1.0, 2.0};
  std::vector<double> grad = {2.0, 4.0};
  CHECK(grad_check(f, grad, point) < 1e-9);
}

TEST_CASE("grad_check: sum of sigmoids") {
  auto sigmoid = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  auto f = [&](const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x) acc += sigmoid(v);
    return acc;
  };
  Prng rng(23);
  std::vector<double> point(10);
  for (double& v : point) v = rng.uniform(-2.0, 2.0);
  std::vector<double> grad(10);
  for (std::size_t i = 0; i < 10; ++i) {
    const double s = sigmoid(point[i]);
    grad[i] = s * (1.0 - s);
  }
  CHECK(grad_check(f, grad, point) < 1e-7);
}

TEST_CASE("grad_check: flags a deliberately wrong gradient") {
  auto f = [](const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc;
  };
  std::vector<double> point = {1.0, 2.0};
  std::vector<double> wrong = {2.1, 4.2};  // 2.1x instead of 2x
  CHECK(grad_check(f, wrong, point) > 1e-2);
}

TEST_CASE("prng: equal seeds give identical million-draw streams") {
  Prng a(42), b(42);
  for (int i = 0; i < 1000000; ++i) {
    REQUIRE(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("prng: labeled splits are stable and independent of consumption") {
  Prng parent(99);
  Prng fresh(99);
  parent.next_u64();  // consume some of the parent stream
  parent.next_u64();
  CHECK(parent.split("noise").next_u64() == fresh.split("noise").next_u64());
  CHECK(parent.split("noise").next_u64() != fresh.split("shuffle").next_u64());
  CHECK(parent.split("a", 0).next_u64() != fresh.split("a", 1).next_u64());
}

TEST_CASE("prng: uniform stays in [0,1) and normal is finite") {
  Prng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  for (int i = 0; i < 10000; ++i) {
    REQUIRE(std::isfinite(rng.normal()));
  }
}

TEST_SUITE_END();
