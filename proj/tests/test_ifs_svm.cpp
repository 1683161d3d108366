#include <algorithm>
#include <cmath>
#include <numeric>

#include <doctest.h>
#include <mforge/classify.hpp>
#include <mforge/ifs.hpp>
#include <mforge/linalg.hpp>
#include <mforge/svm.hpp>

#include "support.hpp"

using namespace mforge;

TEST_SUITE_BEGIN("feature_selection");

namespace {

/// 50-term truncated walk-energy series: sum_{l=1..50} (rA)^l applied to the
/// ones vector. Tails decay geometrically with ratio r_frac, so r_frac = 0.5
/// keeps the truncation error near 1e-15, far below the comparison tolerance.
std::vector<double> series_scores(const Tensor& a, double r_frac, int terms = 50) {
  const std::size_t f = a.dim(0);
  const double r = r_frac / spectral_radius(a);
  std::vector<double> v(f, 1.0), next(f, 0.0), acc(f, 0.0);
  for (int l = 0; l < terms; ++l) {
    for (std::size_t i = 0; i < f; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < f; ++j) s += a(i, j) * v[j];
      next[i] = r * s;
    }
    for (std::size_t i = 0; i < f; ++i) {
      acc[i] += next[i];
      v[i] = next[i];
    }
  }
  return acc;
}

double max_rel_err(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
  }
  return worst;
}

}  // namespace

TEST_CASE("ifs: duplicated feature pair gets zero independence credit; scores stay finite") {
  Prng rng(1);
  const std::size_t samples = 50;
  Tensor x({samples, 3});
  for (std::size_t s = 0; s < samples; ++s) {
    const double a = rng.uniform(-1.0, 1.0);
    x(s, 0) = a;
    x(s, 1) = a;  // exact duplicate
    x(s, 2) = rng.uniform(-2.0, 2.0);
  }
  Tensor aff = ifs_affinity(x, 0.5);
  // Identical columns have |spearman| = 1, so the independence term vanishes
  // and A(0,1) reduces to the pure spread term, same as the diagonal.
  CHECK(aff(0, 1) == doctest::Approx(aff(0, 0)).epsilon(1e-12));

  IfsConfig cfg;
  cfg.r_frac = 0.5;
  IfsResult r1 = ifs_rank(x, cfg);
  IfsResult r2 = ifs_rank(x, cfg);
  for (double s : r1.scores) REQUIRE(std::isfinite(s));
  CHECK(r1.order == r2.order);

  CHECK(max_rel_err(r1.scores, series_scores(aff, cfg.r_frac)) < 1e-8);
}

TEST_CASE("ifs: closed form matches the truncated series on a random instance") {
  Prng rng(2);
  const std::size_t samples = 40, features = 30;
  Tensor x = testsupport::random_matrix(samples, features, rng);
  IfsConfig cfg;
  cfg.r_frac = 0.5;
  IfsResult result = ifs_rank(x, cfg);
  Tensor aff = ifs_affinity(x, cfg.alpha);
  CHECK(max_rel_err(result.scores, series_scores(aff, cfg.r_frac)) < 1e-8);
}

TEST_CASE("ifs: feature permutation permutes scores and rankings correspondingly") {
  Prng rng(3);
  const std::size_t samples = 30, features = 12;
  Tensor x = testsupport::random_matrix(samples, features, rng);
  IfsConfig cfg;
  IfsResult base = ifs_rank(x, cfg);

  std::vector<std::size_t> perm(features);
  std::iota(perm.begin(), perm.end(), 0);
  Prng perm_rng(4);
  perm_rng.shuffle(perm);
  Tensor shuffled({samples, features});
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t f = 0; f < features; ++f) shuffled(s, f) = x(s, perm[f]);
  }
  IfsResult permuted = ifs_rank(shuffled, cfg);

  for (std::size_t f = 0; f < features; ++f) {
    REQUIRE(permuted.scores[f] == doctest::Approx(base.scores[perm[f]]).epsilon(1e-9));
  }
  // Exact rank correspondence: position p in the permuted ranking names the
  // same underlying feature as position p in the base ranking.
  for (std::size_t p = 0; p < features; ++p) {
    REQUIRE(perm[permuted.order[p]] == base.order[p]);
  }
}

TEST_CASE("ifs: with alpha=1 the top feature is the one with the largest spread") {
  // Mutually independent columns with increasing standard deviation.
  Prng rng(5);
  const std::size_t samples = 60;
  Tensor x({samples, 3});
  for (std::size_t s = 0; s < samples; ++s) {
    x(s, 0) = 0.1 * rng.normal();
    x(s, 1) = 0.5 * rng.normal();
    x(s, 2) = 2.0 * rng.normal();
  }
  IfsConfig cfg;
  cfg.alpha = 1.0;
  IfsResult r = ifs_rank(x, cfg);
  CHECK(r.order[0] == 2);
  CHECK(r.scores[2] > r.scores[1]);
  CHECK(r.scores[1] > r.scores[0]);
}

TEST_CASE("ifs: all-constant input is rejected") {
  Tensor x({10, 4}, 3.0);
  CHECK_THROWS_AS(ifs_rank(x, IfsConfig{}), DegenerateInput);
}

TEST_CASE("spearman: monotone agreement and sign") {
  std::vector<double> a = {1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> up = {10.0, 20.0, 25.0, 30.0, 100.0};
  std::vector<double> down = {5.0, 4.0, 3.0, 2.0, 1.0};
  CHECK(spearman(a, up) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spearman(a, down) == doctest::Approx(-1.0).epsilon(1e-12));
  std::vector<double> constant(5, 7.0);
  CHECK(spearman(a, constant) == 0.0);
}

TEST_CASE("svm: two separable points") {
  Tensor x = Tensor::from_data({2, 1}, {-1.0, 1.0});
  std::vector<int> y = {-1, +1};
  SvmConfig cfg;
  cfg.standardize = false;
  SvmTrainResult r = svm_train(x, y, cfg);
  CHECK(r.train_accuracy == 1.0);
  CHECK(r.model.weights[0] > 0.0);
}

TEST_CASE("svm: duplicating the training set leaves the decision function in place") {
  Prng rng(6);
  // Comfortably separated 2-D blobs.
  const std::size_t per_class = 5;
  Tensor x({2 * per_class, 2});
  std::vector<int> y;
  for (std::size_t i = 0; i < per_class; ++i) {
    x(i, 0) = 2.0 + rng.uniform(-0.3, 0.3);
    x(i, 1) = rng.uniform(-1.0, 1.0);
    y.push_back(+1);
  }
  for (std::size_t i = 0; i < per_class; ++i) {
    x(per_class + i, 0) = -2.0 + rng.uniform(-0.3, 0.3);
    x(per_class + i, 1) = rng.uniform(-1.0, 1.0);
    y.push_back(-1);
  }

  Tensor x2({4 * per_class, 2});
  std::vector<int> y2;
  for (int copy = 0; copy < 2; ++copy) {
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
      x2(copy * 2 * per_class + i, 0) = x(i, 0);
      x2(copy * 2 * per_class + i, 1) = x(i, 1);
      y2.push_back(y[i]);
    }
  }

  SvmConfig cfg;
  cfg.iterations = 200000;
  SvmTrainResult single = svm_train(x, y, cfg);
  SvmTrainResult doubled = svm_train(x2, y2, cfg);
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    std::vector<double> probe = {x(i, 0), x(i, 1)};
    REQUIRE(std::abs(single.model.decision(probe) - doubled.model.decision(probe)) <= 1e-3);
  }
}

TEST_CASE("svm: separable random blobs reach full training accuracy") {
  Prng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t per_class = 4 + rng.below(8);
    Tensor x({2 * per_class, 2});
    std::vector<int> y;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
      const bool pos = i < per_class;
      x(i, 0) = (pos ? 3.0 : -3.0) + rng.uniform(-1.0, 1.0);
      x(i, 1) = rng.uniform(-2.0, 2.0);
      y.push_back(pos ? +1 : -1);
    }
    SvmConfig cfg;
    cfg.iterations = 5000;
    SvmTrainResult r = svm_train(x, y, cfg);
    REQUIRE(r.train_accuracy == 1.0);
  }
}

TEST_CASE("svm: deterministic and rejects single-class input") {
  Prng rng(8);
  Tensor x = testsupport::random_matrix(10, 4, rng);
  std::vector<int> y = {+1, -1, +1, -1, +1, -1, +1, -1, +1, -1};
  SvmTrainResult a = svm_train(x, y, SvmConfig{});
  SvmTrainResult b = svm_train(x, y, SvmConfig{});
  CHECK(a.model.weights == b.model.weights);
  CHECK(a.model.bias == b.model.bias);

  std::vector<int> ones(10, +1);
  CHECK_THROWS_AS(svm_train(x, ones, SvmConfig{}), SingleClass);
}

TEST_CASE("svm: feature permutation with a matching probe permutation is inert") {
  Prng rng(9);
  Tensor x = testsupport::random_matrix(12, 5, rng);
  std::vector<int> y = {+1, -1, +1, -1, +1, -1, +1, -1, +1, -1, +1, -1};
  SvmConfig cfg;
  SvmTrainResult base = svm_train(x, y, cfg);

  std::vector<std::size_t> perm = {3, 0, 4, 1, 2};
  Tensor xp({12, 5});
  for (std::size_t s = 0; s < 12; ++s) {
    for (std::size_t f = 0; f < 5; ++f) xp(s, f) = x(s, perm[f]);
  }
  SvmTrainResult permuted = svm_train(xp, y, cfg);
  for (std::size_t s = 0; s < 12; ++s) {
    std::vector<double> probe(5), probe_p(5);
    for (std::size_t f = 0; f < 5; ++f) {
      probe[f] = x(s, f);
      probe_p[f] = xp(s, f);
    }
    REQUIRE(std::abs(base.model.decision(probe) - permuted.model.decision(probe_p)) <= 1e-9);
  }
}

TEST_CASE("score_markers: closed-form extremes") {
  // Feature 4 ranked first in both folds of a 20-feature space.
  std::vector<std::vector<std::size_t>> folds(2);
  for (std::size_t f = 0; f < 2; ++f) {
    folds[f].resize(20);
    std::iota(folds[f].begin(), folds[f].end(), 0);
    std::swap(folds[f][0], folds[f][4]);
  }
  MarkerReport report = score_markers(folds, 10, 5, 2);
  REQUIRE(!report.ranked.empty());
  CHECK(report.ranked[0].feature == 4);
  CHECK(report.ranked[0].score == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report.ranked[0].folds_present == 2);
  // Features outside every top set never appear.
  for (const MarkerEntry& e : report.ranked) REQUIRE(e.folds_present > 0);
}

TEST_CASE("score_markers: matches the direct formula on random rankings") {
  Prng rng(10);
  const std::size_t features = 30, n_f = 8;
  std::vector<std::vector<std::size_t>> folds(3);
  for (auto& order : folds) {
    order.resize(features);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
  }
  MarkerReport report = score_markers(folds, n_f, 6, 2);

  std::vector<double> expected(features, 0.0);
  for (const auto& order : folds) {
    for (std::size_t rank = 1; rank <= n_f; ++rank) {
      expected[order[rank - 1]] +=
          static_cast<double>(n_f - rank + 1) / static_cast<double>(n_f);
    }
  }
  for (const MarkerEntry& e : report.ranked) {
    REQUIRE(e.score == doctest::Approx(expected[e.feature]).epsilon(1e-12));
  }
  for (std::size_t i = 0; i + 1 < report.ranked.size(); ++i) {
    REQUIRE(report.ranked[i].score >= report.ranked[i + 1].score);
  }
}

TEST_SUITE_END();
