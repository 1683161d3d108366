#include "mforge/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mforge/feature_maps.hpp"
#include "mforge/prng.hpp"

namespace mforge {

void SynthConfig::validate() const {
  if (subjects < 4) throw ConfigError("synth: need at least 4 subjects");
  if (n < 2) throw ConfigError("synth: n must be at least 2");
  if (class_balance <= 0.0 || class_balance >= 1.0) {
    throw ConfigError("synth: class_balance must lie strictly inside (0, 1)");
  }
  if (base_rank < 1) throw ConfigError("synth: base_rank must be positive");
  if (delta < 0.0) throw ConfigError("synth: delta must be non-negative");
  if (noise_source < 0.0 || noise_target < 0.0) {
    throw ConfigError("synth: noise levels must be non-negative");
  }
  if (map_strength < 0.0 || map_strength > 1.0) {
    throw ConfigError("synth: map_strength must lie in [0, 1]");
  }
  if (target_mix < 0.0 || target_mix > 1.0) {
    throw ConfigError("synth: target_mix must lie in [0, 1]");
  }
  if (signal_edges > n * (n - 1) / 2) {
    throw ConfigError("synth: signal_edges exceeds the number of edges");
  }
  const std::size_t pos = static_cast<std::size_t>(
      std::lround(class_balance * static_cast<double>(subjects)));
  if (pos < 2 || subjects - pos < 2) {
    throw ConfigError("synth: class balance leaves fewer than 2 subjects in a class");
  }
}

namespace {

/// signal_edges distinct strict-upper-triangle positions.
std::vector<std::size_t> pick_edges(std::size_t n, std::size_t count, Prng rng) {
  std::vector<std::size_t> all(n * (n - 1) / 2);
  std::iota(all.begin(), all.end(), 0);
  rng.shuffle(all);
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

/// Symmetric standard-normal field, zero diagonal.
Tensor symmetric_noise(std::size_t n, Prng& rng) {
  Tensor g({n, n}, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.normal();
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

void add_class_offset(Tensor& m, const std::vector<std::size_t>& edges, double amount,
                      std::size_t n) {
  for (std::size_t pos : edges) {
    // Invert the row-major strict-upper-triangle position.
    std::size_t i = 0, rem = pos;
    while (rem >= n - 1 - i) {
      rem -= n - 1 - i;
      ++i;
    }
    const std::size_t j = i + 1 + rem;
    m(i, j) += amount;
    m(j, i) += amount;
  }
}

void clip_unit(Tensor& m) {
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::clamp(m[i], 0.0, 1.0);
}

}  // namespace

Dataset generate_synthetic(const SynthConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n;
  Prng rng(cfg.seed);

  const std::vector<std::size_t> source_edges =
      pick_edges(n, cfg.signal_edges, rng.split("source_signal_edges"));
  const std::vector<std::size_t> target_edges =
      pick_edges(n, cfg.signal_edges, rng.split("target_signal_edges"));

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  {
    Prng perm_rng = rng.split("relabel");
    perm_rng.shuffle(perm);
  }

  const std::size_t n_pos = static_cast<std::size_t>(
      std::lround(cfg.class_balance * static_cast<double>(cfg.subjects)));

  Dataset ds;
  ds.n = n;
  ds.source_view = "synthetic_view_a";
  ds.target_view = "synthetic_view_b";
  ds.normalization[ds.source_view] = {0.0, 1.0};
  ds.normalization[*ds.target_view] = {0.0, 1.0};

  for (std::size_t k = 0; k < cfg.subjects; ++k) {
    const int label = k < n_pos ? +1 : -1;
    Prng srng = rng.split("subject", k);

    // Smooth low-rank base, entrywise roughly unit variance: a node-strength
    // field (u_i + u_j, the dominant structure in real connectivity matrices)
    // plus a smaller rank-`base_rank` product field.
    std::vector<double> strength(n);
    for (double& v : strength) v = srng.normal();
    Tensor factors({n, cfg.base_rank});
    for (std::size_t i = 0; i < factors.size(); ++i) factors[i] = srng.normal();
    constexpr double kProductWeight = 0.35;
    const double additive_weight = std::sqrt(1.0 - kProductWeight * kProductWeight);
    Tensor base({n, n}, 0.0);
    const double rank_scale = kProductWeight / std::sqrt(static_cast<double>(cfg.base_rank));
    const double strength_scale = additive_weight / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t r = 0; r < cfg.base_rank; ++r) acc += factors(i, r) * factors(j, r);
        const double v = strength_scale * (strength[i] + strength[j]) + acc * rank_scale;
        base(i, j) = v;
        base(j, i) = v;
      }
    }

    Tensor source({n, n}, 0.0);
    Tensor gs = symmetric_noise(n, srng);
    for (std::size_t i = 0; i < source.size(); ++i) {
      source[i] = 0.5 + cfg.base_scale * base[i] + cfg.noise_source * gs[i];
    }
    add_class_offset(source, source_edges, label * cfg.delta / 2.0, n);
    clip_unit(source);
    zero_diagonal(source);

    Tensor target({n, n}, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double s = source(i, j);
        const double mapped = cfg.target_mix * s * s +
                              (1.0 - cfg.target_mix) * source(perm[i], perm[j]);
        target(i, j) = (1.0 - cfg.map_strength) * s + cfg.map_strength * mapped;
      }
    }
    Tensor gt = symmetric_noise(n, srng);
    for (std::size_t i = 0; i < target.size(); ++i) target[i] += cfg.noise_target * gt[i];
    add_class_offset(target, target_edges, label * cfg.delta / 2.0, n);
    Tensor tsym = symmetrized(target);
    clip_unit(tsym);
    zero_diagonal(tsym);

    SubjectRecord rec;
    char id[16];
    std::snprintf(id, sizeof(id), "sub-%04zu", k);
    rec.id = id;
    rec.label = label;
    rec.source = BrainNetwork(std::move(source), ds.source_view);
    rec.source.validate();
    rec.target = BrainNetwork(std::move(tsym), *ds.target_view);
    rec.target->validate();
    ds.subjects.push_back(std::move(rec));
  }
  return ds;
}

}  // namespace mforge
