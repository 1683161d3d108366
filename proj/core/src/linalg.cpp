#include "mforge/linalg.hpp"

#include <cmath>
#include <vector>

namespace mforge {

Tensor solve_linear(const Tensor& a, const Tensor& b) {
  require_square(a, "solve_linear");
  if (b.rank() != 2 || b.dim(0) != a.dim(0)) {
    throw ShapeMismatch("solve_linear: B row count must match A");
  }
  const std::size_t n = a.dim(0);
  const std::size_t m = b.dim(1);

  // Working copies; rows are swapped in place during elimination.
  Tensor lu = a;
  Tensor x = b;
  double* lp = lu.data();
  double* xp = x.data();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lp[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(lp[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best < 1e-12) {
      throw SingularMatrix("solve_linear: pivot below 1e-12");
    }
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(lp[col * n + k], lp[pivot * n + k]);
      for (std::size_t k = 0; k < m; ++k) std::swap(xp[col * m + k], xp[pivot * m + k]);
    }
    const double inv = 1.0 / lp[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = lp[r * n + col] * inv;
      if (f == 0.0) continue;
      lp[r * n + col] = 0.0;
      for (std::size_t k = col + 1; k < n; ++k) lp[r * n + k] -= f * lp[col * n + k];
      for (std::size_t k = 0; k < m; ++k) xp[r * m + k] -= f * xp[col * m + k];
    }
  }

  // Back substitution.
  for (std::size_t ri = n; ri-- > 0;) {
    const double inv = 1.0 / lp[ri * n + ri];
    for (std::size_t k = 0; k < m; ++k) {
      double acc = xp[ri * m + k];
      for (std::size_t c = ri + 1; c < n; ++c) acc -= lp[ri * n + c] * xp[c * m + k];
      xp[ri * m + k] = acc * inv;
    }
  }
  return x;
}

double spectral_radius(const Tensor& a) {
  require_square(a, "spectral_radius");
  const std::size_t n = a.dim(0);
  const double* ap = a.data();
  for (std::size_t i = 0; i < n * n; ++i) {
    if (ap[i] < 0.0) throw DomainError("spectral_radius: matrix must be entrywise non-negative");
  }

  std::vector<double> v(n, 1.0), w(n, 0.0);
  double lambda = 0.0;
  double prev = 0.0;
  constexpr int kMaxIter = 10000;
  double rel_change = 1.0;

  for (int it = 0; it < kMaxIter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      const double* row = ap + i * n;
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * v[j];
      w[i] = acc;
    }
    double norm = 0.0;
    for (double x : w) norm = std::max(norm, std::abs(x));
    if (norm == 0.0) return 0.0;  // nilpotent-like action on the ones vector
    lambda = norm;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    rel_change = std::abs(lambda - prev) / std::max(1e-300, std::abs(lambda));
    if (it > 0 && rel_change < 1e-10) return lambda;
    prev = lambda;
  }
  if (rel_change > 1e-6) {
    throw NonConvergence("spectral_radius: power iteration did not converge");
  }
  return lambda;
}

}  // namespace mforge
