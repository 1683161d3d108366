#include <benchmark/benchmark.h>

#include <mforge/discriminator.hpp>
#include <mforge/translator.hpp>

using namespace mforge;

namespace {

EdgeFeatureMap random_map(std::size_t n, std::size_t channels, Prng& rng) {
  EdgeFeatureMap x(n, channels);
  for (std::size_t i = 0; i < x.values.size(); ++i) x.values[i] = rng.uniform(-1.0, 1.0);
  return x;
}

Tensor random_square(std::size_t n, Prng& rng) {
  Tensor m({n, n}, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.uniform();
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

}  // namespace

static void E2EForward(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Prng rng(1);
  E2EParams p = init_e2e(n, 8, 16, rng);
  EdgeFeatureMap x = random_map(n, 8, rng);
  for (auto _ : state) {
    EdgeFeatureMap y = e2e_forward(x, p);
    benchmark::DoNotOptimize(y.values.data());
  }
}
BENCHMARK(E2EForward)->Arg(16)->Arg(35)->Arg(64);

static void E2EBackward(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Prng rng(2);
  E2EParams p = init_e2e(n, 8, 16, rng);
  EdgeFeatureMap x = random_map(n, 8, rng);
  EdgeFeatureMap dy = random_map(n, 16, rng);
  for (auto _ : state) {
    E2EGrads g(p);
    EdgeFeatureMap dx = e2e_backward(x, p, dy, g);
    benchmark::DoNotOptimize(dx.values.data());
  }
}
BENCHMARK(E2EBackward)->Arg(16)->Arg(35)->Arg(64);

static void TranslatorForwardPass(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  TranslatorConfig cfg;
  cfg.n = n;
  Prng rng(3);
  TranslatorModel model = TranslatorModel::init(cfg, rng);
  Tensor source = random_square(n, rng);
  NodeFeatureMap noise = sample_noise(cfg, rng);
  for (auto _ : state) {
    TranslatorForward f = translator_forward(model, source, noise);
    benchmark::DoNotOptimize(f.output.data());
  }
}
BENCHMARK(TranslatorForwardPass)->Arg(35)->Arg(64);

static void TranslatorBackwardPass(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  TranslatorConfig cfg;
  cfg.n = n;
  Prng rng(4);
  TranslatorModel model = TranslatorModel::init(cfg, rng);
  Tensor source = random_square(n, rng);
  NodeFeatureMap noise = sample_noise(cfg, rng);
  TranslatorForward f = translator_forward(model, source, noise);
  Tensor upstream({n, n}, 0.5);
  for (auto _ : state) {
    TranslatorGrads grads(model);
    Tensor dx = translator_backward(model, f, upstream, grads);
    benchmark::DoNotOptimize(dx.data());
  }
}
BENCHMARK(TranslatorBackwardPass)->Arg(35)->Arg(64);

static void DiscriminatorScore(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  DiscriminatorConfig cfg;
  cfg.n = n;
  Prng rng(5);
  DiscriminatorModel model = DiscriminatorModel::init(cfg, rng);
  Tensor cond = random_square(n, rng);
  Tensor cand = random_square(n, rng);
  for (auto _ : state) {
    DiscriminatorForward f = discriminator_forward(model, cond, cand);
    benchmark::DoNotOptimize(f.prob);
  }
}
BENCHMARK(DiscriminatorScore)->Arg(35)->Arg(64);
