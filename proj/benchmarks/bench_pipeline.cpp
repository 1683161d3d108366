#include <benchmark/benchmark.h>

#include <mforge/ifs.hpp>
#include <mforge/knn.hpp>
#include <mforge/multiplex.hpp>
#include <mforge/synthetic.hpp>

using namespace mforge;

namespace {

Dataset bench_dataset(std::size_t subjects, std::size_t n) {
  SynthConfig cfg;
  cfg.subjects = subjects;
  cfg.n = n;
  cfg.signal_edges = std::min<std::size_t>(6, n * (n - 1) / 2);
  cfg.seed = 9;
  return generate_synthetic(cfg);
}

}  // namespace

static void InterLayerConv(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Dataset ds = bench_dataset(4, n);
  for (auto _ : state) {
    Tensor inter =
        inter_layer_conv(ds.subjects[0].source.weights, ds.subjects[0].target->weights, false);
    benchmark::DoNotOptimize(inter.data());
  }
}
BENCHMARK(InterLayerConv)->Arg(16)->Arg(35)->Arg(64);

static void MultiplexVectorize(benchmark::State& state) {
  Dataset ds = bench_dataset(4, 35);
  Multiplex m =
      build_multiplex(ds.subjects[0].source, *ds.subjects[0].target, InterKind::kConv);
  for (auto _ : state) {
    FeatureVector v = vectorize(m);
    benchmark::DoNotOptimize(v.values.data());
  }
}
BENCHMARK(MultiplexVectorize);

static void KnnPredictBench(benchmark::State& state) {
  const std::size_t subjects = static_cast<std::size_t>(state.range(0));
  Dataset ds = bench_dataset(subjects, 35);
  std::vector<KnnPair> pool = knn_pairs(ds);
  BrainNetwork query = pool.back().source;
  pool.pop_back();
  for (auto _ : state) {
    BrainNetwork pred = knn_predict(pool, query, 5);
    benchmark::DoNotOptimize(pred.weights.data());
  }
}
BENCHMARK(KnnPredictBench)->Arg(32)->Arg(128);

static void IfsRankBench(benchmark::State& state) {
  const std::size_t features = static_cast<std::size_t>(state.range(0));
  Prng rng(7);
  Tensor x({40, features});
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform();
  IfsConfig cfg;
  cfg.nf_values = {features / 2};
  for (auto _ : state) {
    IfsResult r = ifs_rank(x, cfg);
    benchmark::DoNotOptimize(r.scores.data());
  }
}
BENCHMARK(IfsRankBench)->Arg(128)->Arg(595);
