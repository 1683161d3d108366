#include <algorithm>
#include <cmath>

#include <doctest.h>
#include <mforge/knn.hpp>
#include <mforge/multiplex.hpp>

#include "support.hpp"

using namespace mforge;

TEST_SUITE_BEGIN("knn");

namespace {

std::vector<KnnPair> random_pairs(std::size_t count, std::size_t n, Prng& rng) {
  std::vector<KnnPair> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    pairs.push_back({testsupport::random_network(n, rng), testsupport::random_network(n, rng)});
  }
  return pairs;
}

/// Naive reference: compute every distance, sort the whole list, average the
/// first K targets.
BrainNetwork brute_force_predict(const std::vector<KnnPair>& train,
                                 const BrainNetwork& test_source, std::size_t k) {
  const std::size_t n = test_source.n;
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t t = 0; t < train.size(); ++t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = train[t].source.weights(i, j) - test_source.weights(i, j);
        acc += d * d;
      }
    }
    dist.push_back({std::sqrt(acc), t});
  }
  std::sort(dist.begin(), dist.end());
  Tensor mean({n, n}, 0.0);
  for (std::size_t r = 0; r < k; ++r) mean += train[dist[r].second].target.weights;
  mean *= 1.0 / static_cast<double>(k);
  return BrainNetwork(std::move(mean));
}

}  // namespace

TEST_CASE("knn_predict: zero-distance retrieval returns the matching target bitwise") {
  Prng rng(1);
  std::vector<KnnPair> train = random_pairs(10, 6, rng);
  for (std::size_t probe = 0; probe < train.size(); ++probe) {
    BrainNetwork pred = knn_predict(train, train[probe].source, 1);
    REQUIRE(pred.weights.values() == train[probe].target.weights.values());
  }
}

TEST_CASE("knn_predict: K equal to the training size averages every target") {
  Prng rng(2);
  std::vector<KnnPair> train = random_pairs(7, 5, rng);
  BrainNetwork query = testsupport::random_network(5, rng);
  BrainNetwork pred = knn_predict(train, query, train.size());
  Tensor mean({5, 5}, 0.0);
  for (const KnnPair& p : train) mean += p.target.weights;
  mean *= 1.0 / static_cast<double>(train.size());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    REQUIRE(pred.weights[i] == doctest::Approx(mean[i]).epsilon(1e-15));
  }
}

TEST_CASE("knn_predict: matches the brute-force sort oracle on random instances") {
  Prng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng.below(6);
    std::vector<KnnPair> train = random_pairs(6 + rng.below(10), n, rng);
    BrainNetwork query = testsupport::random_network(n, rng);
    const std::size_t k = 1 + rng.below(train.size());
    BrainNetwork fast = knn_predict(train, query, k);
    BrainNetwork slow = brute_force_predict(train, query, k);
    REQUIRE(fast.weights.values() == slow.weights.values());
  }
}

TEST_CASE("knn_predict: invariant under training-set permutation on tie-free data") {
  Prng rng(4);
  std::vector<KnnPair> train = random_pairs(9, 6, rng);
  BrainNetwork query = testsupport::random_network(6, rng);
  BrainNetwork base = knn_predict(train, query, 4);
  std::vector<KnnPair> shuffled = train;
  std::reverse(shuffled.begin(), shuffled.end());
  BrainNetwork perm = knn_predict(shuffled, query, 4);
  for (std::size_t i = 0; i < base.weights.size(); ++i) {
    REQUIRE(perm.weights[i] == doctest::Approx(base.weights[i]).epsilon(1e-15));
  }
}

TEST_CASE("knn_predict: prediction keeps symmetry and the zero diagonal") {
  Prng rng(5);
  std::vector<KnnPair> train = random_pairs(8, 7, rng);
  BrainNetwork pred = knn_predict(train, testsupport::random_network(7, rng), 3);
  pred.validate();
}

TEST_CASE("knn_predict: K bounds") {
  Prng rng(6);
  std::vector<KnnPair> train = random_pairs(4, 5, rng);
  BrainNetwork query = testsupport::random_network(5, rng);
  CHECK_THROWS_AS(knn_predict(train, query, 0), KTooLarge);
  CHECK_THROWS_AS(knn_predict(train, query, 5), KTooLarge);
  CHECK_THROWS_AS(knn_predict({}, query, 1), EmptyDataset);
}

TEST_CASE("knn_average_mae: zero on train=test with K=1") {
  Prng rng(7);
  std::vector<KnnPair> train = random_pairs(6, 6, rng);
  KnnConfig cfg;
  cfg.k_values = {1};
  CHECK(knn_average_mae(train, train, cfg) == 0.0);
}

TEST_CASE("knn_average_mae: single K equals the direct computation") {
  Prng rng(8);
  std::vector<KnnPair> train = random_pairs(8, 6, rng);
  std::vector<KnnPair> test = random_pairs(5, 6, rng);
  KnnConfig cfg;
  cfg.k_values = {3};
  CHECK(knn_average_mae(train, test, cfg) == doctest::Approx(knn_mae(train, test, 3)));
}

TEST_CASE("knn_average_mae: equals an independent two-loop recomputation") {
  Prng rng(9);
  std::vector<KnnPair> train = random_pairs(9, 5, rng);
  std::vector<KnnPair> test = random_pairs(6, 5, rng);
  KnnConfig cfg;
  cfg.k_values = {2, 3, 5};

  double expected = 0.0;
  for (std::size_t k : cfg.k_values) {
    double per_k = 0.0;
    for (const KnnPair& probe : test) {
      per_k += mae(brute_force_predict(train, probe.source, k), probe.target);
    }
    expected += per_k / static_cast<double>(test.size());
  }
  expected /= static_cast<double>(cfg.k_values.size());

  CHECK(knn_average_mae(train, test, cfg) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_SUITE_END();
