#include "mforge/discriminator.hpp"

#include <cmath>

namespace mforge {

namespace {

double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

void DiscriminatorConfig::validate() const {
  if (n < 2) throw ConfigError("discriminator: n must be at least 2");
  if (c1 < 1 || c2 < 1 || node_dim < 1) {
    throw ConfigError("discriminator: channel dimensions must be positive");
  }
}

DiscriminatorModel DiscriminatorModel::init(const DiscriminatorConfig& cfg, Prng& rng) {
  cfg.validate();
  DiscriminatorModel m;
  m.config = cfg;
  Prng r1 = rng.split("e2e1"), r2 = rng.split("e2e2"), r3 = rng.split("e2n"),
       r4 = rng.split("head");
  m.e2e1 = init_e2e(cfg.n, 2, cfg.c1, r1);
  m.e2e2 = init_e2e(cfg.n, cfg.c1, cfg.c2, r2);
  m.e2n = init_e2n(cfg.n, cfg.c2, cfg.node_dim, r3);
  m.head = init_dense(cfg.n * cfg.node_dim, 1, r4);
  return m;
}

std::vector<std::pair<std::string, Tensor*>> DiscriminatorModel::parameters() {
  return {
      {"e2e1.row_weights", &e2e1.row_weights}, {"e2e1.col_weights", &e2e1.col_weights},
      {"e2e1.bias", &e2e1.bias},
      {"e2e2.row_weights", &e2e2.row_weights}, {"e2e2.col_weights", &e2e2.col_weights},
      {"e2e2.bias", &e2e2.bias},
      {"e2n.node_weights", &e2n.node_weights}, {"e2n.bias", &e2n.bias},
      {"head.weights", &head.weights}, {"head.bias", &head.bias},
  };
}

std::vector<std::pair<std::string, const Tensor*>> DiscriminatorModel::parameters() const {
  auto mut = const_cast<DiscriminatorModel*>(this)->parameters();
  std::vector<std::pair<std::string, const Tensor*>> out;
  out.reserve(mut.size());
  for (auto& [name, t] : mut) out.emplace_back(name, t);
  return out;
}

std::vector<Tensor*> DiscriminatorGrads::tensors() {
  return {
      &e2e1.row_weights, &e2e1.col_weights, &e2e1.bias,
      &e2e2.row_weights, &e2e2.col_weights, &e2e2.bias,
      &e2n.node_weights, &e2n.bias,
      &head.weights, &head.bias,
  };
}

DiscriminatorForward discriminator_forward(const DiscriminatorModel& model,
                                           const Tensor& condition, const Tensor& candidate) {
  const DiscriminatorConfig& cfg = model.config;
  require_square(condition, "discriminator_forward");
  require_square(candidate, "discriminator_forward");
  if (condition.dim(0) != cfg.n || candidate.dim(0) != cfg.n) {
    throw ShapeMismatch("discriminator_forward: inputs must be n-by-n");
  }
  const Activation ha = cfg.hidden_activation;

  DiscriminatorForward f;
  f.x0 = EdgeFeatureMap(cfg.n, 2);
  std::copy(condition.data(), condition.data() + cfg.n * cfg.n, f.x0.values.data());
  std::copy(candidate.data(), candidate.data() + cfg.n * cfg.n,
            f.x0.values.data() + cfg.n * cfg.n);

  f.z1 = e2e_forward(f.x0, model.e2e1);
  f.a1 = f.z1;
  f.a1.values = activation(f.z1.values, ha);
  f.z2 = e2e_forward(f.a1, model.e2e2);
  f.a2 = f.z2;
  f.a2.values = activation(f.z2.values, ha);
  f.zn = e2n_forward(f.a2, model.e2n);
  f.hn = f.zn;
  f.hn.values = activation(f.zn.values, ha);
  f.logit = dense_forward(f.hn, model.head)[0];
  f.prob = stable_sigmoid(f.logit);
  f.valid = true;
  return f;
}

DiscriminatorInputGrads discriminator_backward(const DiscriminatorModel& model,
                                               const DiscriminatorForward& cache,
                                               double d_prob, DiscriminatorGrads& grads) {
  if (!cache.valid) throw MissingCache("discriminator_backward: forward cache is empty");
  const DiscriminatorConfig& cfg = model.config;
  const Activation ha = cfg.hidden_activation;

  const double d_logit = d_prob * cache.prob * (1.0 - cache.prob);
  Tensor dy({1}, d_logit);
  NodeFeatureMap dhn = dense_backward(cache.hn, model.head, dy, grads.head);
  NodeFeatureMap dzn = dhn;
  dzn.values = activation_backward(cache.hn.values, dhn.values, ha);
  EdgeFeatureMap da2 = e2n_backward(cache.a2, model.e2n, dzn, grads.e2n);
  EdgeFeatureMap dz2 = da2;
  dz2.values = activation_backward(cache.a2.values, da2.values, ha);
  EdgeFeatureMap da1 = e2e_backward(cache.a1, model.e2e2, dz2, grads.e2e2);
  EdgeFeatureMap dz1 = da1;
  dz1.values = activation_backward(cache.a1.values, da1.values, ha);
  EdgeFeatureMap dx0 = e2e_backward(cache.x0, model.e2e1, dz1, grads.e2e1);

  const std::size_t plane = cfg.n * cfg.n;
  DiscriminatorInputGrads ig;
  ig.d_condition = Tensor({cfg.n, cfg.n});
  ig.d_candidate = Tensor({cfg.n, cfg.n});
  std::copy(dx0.values.data(), dx0.values.data() + plane, ig.d_condition.data());
  std::copy(dx0.values.data() + plane, dx0.values.data() + 2 * plane, ig.d_candidate.data());
  return ig;
}

double discriminate(const DiscriminatorModel& model, const BrainNetwork& condition,
                    const BrainNetwork& candidate) {
  condition.validate(1e-9);
  candidate.validate(1e-9);
  DiscriminatorForward f = discriminator_forward(model, condition.weights, candidate.weights);
  if (!std::isfinite(f.prob)) throw NonFiniteError("discriminate: non-finite score");
  return f.prob;
}

}  // namespace mforge
