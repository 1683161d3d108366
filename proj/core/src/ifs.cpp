#include "mforge/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mforge/linalg.hpp"
#include "mforge/parallel.hpp"

namespace mforge {

void IfsConfig::validate() const {
  if (alpha < 0.0 || alpha > 1.0) throw ConfigError("ifs: alpha must lie in [0, 1]");
  if (r_frac <= 0.0 || r_frac >= 1.0) throw ConfigError("ifs: r_frac must lie in (0, 1)");
  if (nf_values.empty()) throw ConfigError("ifs: nf_values must be non-empty");
}

namespace {

/// Average ranks (1-based, ties averaged), then centered to zero mean.
std::vector<double> centered_ranks(const double* col, std::size_t rows, std::size_t stride) {
  std::vector<std::size_t> idx(rows);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return col[a * stride] < col[b * stride]; });
  std::vector<double> ranks(rows, 0.0);
  std::size_t s = 0;
  while (s < rows) {
    std::size_t e = s;
    while (e + 1 < rows && col[idx[e + 1] * stride] == col[idx[s] * stride]) ++e;
    const double avg = 0.5 * static_cast<double>(s + e) + 1.0;
    for (std::size_t t = s; t <= e; ++t) ranks[idx[t]] = avg;
    s = e + 1;
  }
  const double mean = 0.5 * static_cast<double>(rows + 1);
  for (double& r : ranks) r -= mean;
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ShapeMismatch("spearman: vectors must share a length of at least 2");
  }
  std::vector<double> ra = centered_ranks(a.data(), a.size(), 1);
  std::vector<double> rb = centered_ranks(b.data(), b.size(), 1);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    saa += ra[i] * ra[i];
    sbb += rb[i] * rb[i];
    sab += ra[i] * rb[i];
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

Tensor ifs_affinity(const Tensor& x, double alpha) {
  if (x.rank() != 2) throw ShapeMismatch("ifs_affinity: expected samples-by-features matrix");
  const std::size_t rows = x.dim(0), cols = x.dim(1);
  if (rows < 2 || cols < 2) {
    throw ShapeMismatch("ifs_affinity: need at least 2 samples and 2 features");
  }

  // Per-feature sample standard deviation.
  std::vector<double> sigma(cols, 0.0);
  for (std::size_t f = 0; f < cols; ++f) {
    double mean = 0.0;
    for (std::size_t s = 0; s < rows; ++s) mean += x(s, f);
    mean /= static_cast<double>(rows);
    double acc = 0.0;
    for (std::size_t s = 0; s < rows; ++s) {
      const double d = x(s, f) - mean;
      acc += d * d;
    }
    sigma[f] = std::sqrt(acc / static_cast<double>(rows - 1));
  }
  const double sigma_max = *std::max_element(sigma.begin(), sigma.end());
  if (sigma_max <= 0.0) throw DegenerateInput("ifs_affinity: every feature is constant");

  // Rank-transformed, centered, unit-norm columns; Spearman becomes a dot
  // product. Constant columns get a zero vector (correlation 0).
  Tensor z({cols, rows}, 0.0);
  parallel_for(cols, [&](std::size_t f) {
    std::vector<double> r = centered_ranks(x.data() + f, rows, cols);
    double norm = 0.0;
    for (double v : r) norm += v * v;
    if (norm > 0.0) {
      const double inv = 1.0 / std::sqrt(norm);
      for (std::size_t s = 0; s < rows; ++s) z(f, s) = r[s] * inv;
    }
  });

  Tensor a({cols, cols}, 0.0);
  parallel_for(cols, [&](std::size_t i) {
    const double* zi = z.data() + i * rows;
    for (std::size_t j = i; j < cols; ++j) {
      const double* zj = z.data() + j * rows;
      double rho = 0.0;
      for (std::size_t s = 0; s < rows; ++s) rho += zi[s] * zj[s];
      rho = std::clamp(rho, -1.0, 1.0);
      const double spread = std::max(sigma[i], sigma[j]) / sigma_max;
      const double v = alpha * spread + (1.0 - alpha) * (1.0 - std::abs(rho));
      a(i, j) = v;
      a(j, i) = v;
    }
  });
  return a;
}

IfsResult ifs_rank(const Tensor& x, const IfsConfig& cfg) {
  cfg.validate();
  Tensor a = ifs_affinity(x, cfg.alpha);
  const std::size_t f = a.dim(0);

  IfsResult result;
  result.scores.assign(f, 0.0);

  const double rho = spectral_radius(a);
  if (rho > 0.0) {
    const double r = cfg.r_frac / rho;
    // Row sums of (I - rA)^-1 - I come from a single solve against the ones
    // vector: (I - rA) s = 1, scores = s - 1.
    Tensor system({f, f}, 0.0);
    for (std::size_t i = 0; i < f; ++i) {
      for (std::size_t j = 0; j < f; ++j) system(i, j) = (i == j ? 1.0 : 0.0) - r * a(i, j);
    }
    Tensor ones({f, 1}, 1.0);
    Tensor s = solve_linear(system, ones);
    for (std::size_t i = 0; i < f; ++i) result.scores[i] = s(i, 0) - 1.0;
  }

  result.order.resize(f);
  std::iota(result.order.begin(), result.order.end(), 0);
  std::stable_sort(result.order.begin(), result.order.end(), [&](std::size_t i, std::size_t j) {
    if (result.scores[i] != result.scores[j]) return result.scores[i] > result.scores[j];
    return i < j;
  });
  return result;
}

}  // namespace mforge
