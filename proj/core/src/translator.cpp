#include "mforge/translator.hpp"

namespace mforge {

namespace {

Tensor activation_map(const Tensor& y, const Tensor& dy, Activation kind) {
  return activation_backward(y, dy, kind);
}

EdgeFeatureMap act(const EdgeFeatureMap& x, Activation kind) {
  EdgeFeatureMap y = x;
  y.values = activation(x.values, kind);
  return y;
}

NodeFeatureMap act(const NodeFeatureMap& x, Activation kind) {
  NodeFeatureMap y = x;
  y.values = activation(x.values, kind);
  return y;
}

EdgeFeatureMap act_backward(const EdgeFeatureMap& y, const EdgeFeatureMap& dy, Activation kind) {
  EdgeFeatureMap dx = dy;
  dx.values = activation_map(y.values, dy.values, kind);
  return dx;
}

NodeFeatureMap act_backward(const NodeFeatureMap& y, const NodeFeatureMap& dy, Activation kind) {
  NodeFeatureMap dx = dy;
  dx.values = activation_map(y.values, dy.values, kind);
  return dx;
}

void add_into(EdgeFeatureMap& dst, const EdgeFeatureMap& src) {
  dst.values += src.values;
}

}  // namespace

void TranslatorConfig::validate() const {
  if (n < 2) throw ConfigError("translator: n must be at least 2");
  if (enc_c1 < 1 || enc_c2 < 1 || node_dim < 1) {
    throw ConfigError("translator: channel dimensions must be positive");
  }
}

TranslatorModel TranslatorModel::init(const TranslatorConfig& cfg, Prng& rng) {
  cfg.validate();
  TranslatorModel m;
  m.config = cfg;
  Prng r1 = rng.split("enc1"), r2 = rng.split("enc2"), r3 = rng.split("enc3");
  Prng r4 = rng.split("dec1"), r5 = rng.split("dec2"), r6 = rng.split("dec3");
  m.enc1 = init_e2e(cfg.n, 1, cfg.enc_c1, r1);
  m.enc2 = init_e2e(cfg.n, cfg.enc_c1, cfg.enc_c2, r2);
  m.enc3 = init_e2n(cfg.n, cfg.enc_c2, cfg.node_dim, r3);
  m.dec1 = init_n2e(cfg.n, cfg.node_dim + cfg.noise_dim, cfg.enc_c2, r4);
  m.dec2 = init_e2e(cfg.n, 2 * cfg.enc_c2, cfg.enc_c1, r5);
  m.dec3 = init_e2e(cfg.n, 2 * cfg.enc_c1, 1, r6);
  return m;
}

std::vector<std::pair<std::string, Tensor*>> TranslatorModel::parameters() {
  return {
      {"enc1.row_weights", &enc1.row_weights}, {"enc1.col_weights", &enc1.col_weights},
      {"enc1.bias", &enc1.bias},
      {"enc2.row_weights", &enc2.row_weights}, {"enc2.col_weights", &enc2.col_weights},
      {"enc2.bias", &enc2.bias},
      {"enc3.node_weights", &enc3.node_weights}, {"enc3.bias", &enc3.bias},
      {"dec1.p_weights", &dec1.p_weights}, {"dec1.q_weights", &dec1.q_weights},
      {"dec1.bias", &dec1.bias},
      {"dec2.row_weights", &dec2.row_weights}, {"dec2.col_weights", &dec2.col_weights},
      {"dec2.bias", &dec2.bias},
      {"dec3.row_weights", &dec3.row_weights}, {"dec3.col_weights", &dec3.col_weights},
      {"dec3.bias", &dec3.bias},
  };
}

std::vector<std::pair<std::string, const Tensor*>> TranslatorModel::parameters() const {
  auto mut = const_cast<TranslatorModel*>(this)->parameters();
  std::vector<std::pair<std::string, const Tensor*>> out;
  out.reserve(mut.size());
  for (auto& [name, t] : mut) out.emplace_back(name, t);
  return out;
}

std::vector<Tensor*> TranslatorGrads::tensors() {
  return {
      &enc1.row_weights, &enc1.col_weights, &enc1.bias,
      &enc2.row_weights, &enc2.col_weights, &enc2.bias,
      &enc3.node_weights, &enc3.bias,
      &dec1.p_weights, &dec1.q_weights, &dec1.bias,
      &dec2.row_weights, &dec2.col_weights, &dec2.bias,
      &dec3.row_weights, &dec3.col_weights, &dec3.bias,
  };
}

NodeFeatureMap sample_noise(const TranslatorConfig& cfg, Prng& rng) {
  NodeFeatureMap u(cfg.n, cfg.noise_dim);
  for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] = rng.normal();
  return u;
}

TranslatorForward translator_forward(const TranslatorModel& model, const Tensor& source,
                                     const NodeFeatureMap& noise) {
  const TranslatorConfig& cfg = model.config;
  require_square(source, "translator_forward");
  if (source.dim(0) != cfg.n) throw ShapeMismatch("translator_forward: source size != config n");
  if (noise.channels != cfg.noise_dim || (cfg.noise_dim > 0 && noise.n != cfg.n)) {
    throw ShapeMismatch("translator_forward: noise must be n-by-noise_dim");
  }
  const Activation ha = cfg.hidden_activation;

  TranslatorForward f;
  f.x0 = EdgeFeatureMap::from_matrix(source);
  f.z1 = e2e_forward(f.x0, model.enc1);
  f.a1 = act(f.z1, ha);
  f.z2 = e2e_forward(f.a1, model.enc2);
  f.a2 = act(f.z2, ha);
  f.zn = e2n_forward(f.a2, model.enc3);
  f.hn = act(f.zn, ha);
  f.noise = noise;
  f.hcat = channel_concat(f.hn, f.noise);
  f.zd0 = n2e_forward(f.hcat, model.dec1);
  f.d0 = act(f.zd0, ha);
  f.cat1 = channel_concat(f.d0, f.a2);
  f.zd1 = e2e_forward(f.cat1, model.dec2);
  f.d1 = act(f.zd1, ha);
  f.cat2 = channel_concat(f.d1, f.a1);
  f.zd2 = e2e_forward(f.cat2, model.dec3);
  f.ysig = act(f.zd2, cfg.output_activation);

  Tensor y = Tensor::from_data({cfg.n, cfg.n}, f.ysig.values.values());
  if (cfg.symmetrize_output) {
    y = symmetrized(y);
    zero_diagonal(y);
  }
  f.output = std::move(y);
  return f;
}

Tensor translator_backward(const TranslatorModel& model, const TranslatorForward& cache,
                           const Tensor& d_output, TranslatorGrads& grads) {
  if (cache.empty()) throw MissingCache("translator_backward: forward cache is empty");
  const TranslatorConfig& cfg = model.config;
  if (d_output.rank() != 2 || d_output.dim(0) != cfg.n || d_output.dim(1) != cfg.n) {
    throw ShapeMismatch("translator_backward: upstream gradient must be n-by-n");
  }
  const Activation ha = cfg.hidden_activation;
  const std::size_t n = cfg.n;

  // Through diagonal zeroing (forced entries carry no gradient) and
  // symmetrization (average of the two mirror positions).
  EdgeFeatureMap dysig(n, 1);
  if (cfg.symmetrize_output) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        dysig.at(0, i, j) = 0.5 * (d_output(i, j) + d_output(j, i));
      }
    }
  } else {
    dysig.values.values() = d_output.values();
  }

  EdgeFeatureMap dzd2 = act_backward(cache.ysig, dysig, cfg.output_activation);
  EdgeFeatureMap dcat2 = e2e_backward(cache.cat2, model.dec3, dzd2, grads.dec3);
  EdgeFeatureMap dd1, da1_skip;
  channel_split(dcat2, dd1, da1_skip, cfg.enc_c1);

  EdgeFeatureMap dzd1 = act_backward(cache.d1, dd1, ha);
  EdgeFeatureMap dcat1 = e2e_backward(cache.cat1, model.dec2, dzd1, grads.dec2);
  EdgeFeatureMap dd0, da2_skip;
  channel_split(dcat1, dd0, da2_skip, cfg.enc_c2);

  EdgeFeatureMap dzd0 = act_backward(cache.d0, dd0, ha);
  NodeFeatureMap dhcat = n2e_backward(cache.hcat, model.dec1, dzd0, grads.dec1);
  NodeFeatureMap dhn, dnoise;
  channel_split(dhcat, dhn, dnoise, cfg.node_dim);

  NodeFeatureMap dzn = act_backward(cache.hn, dhn, ha);
  EdgeFeatureMap da2 = e2n_backward(cache.a2, model.enc3, dzn, grads.enc3);
  add_into(da2, da2_skip);

  EdgeFeatureMap dz2 = act_backward(cache.a2, da2, ha);
  EdgeFeatureMap da1 = e2e_backward(cache.a1, model.enc2, dz2, grads.enc2);
  add_into(da1, da1_skip);

  EdgeFeatureMap dz1 = act_backward(cache.a1, da1, ha);
  EdgeFeatureMap dx0 = e2e_backward(cache.x0, model.enc1, dz1, grads.enc1);

  return Tensor::from_data({n, n}, dx0.values.values());
}

namespace {

TranslateOutput package(const TranslatorModel& model, TranslatorForward&& f,
                        const std::string& view_label) {
  if (!f.output.all_finite()) {
    throw NonFiniteError("translate: prediction contains non-finite values");
  }
  TranslateOutput out;
  out.predicted = BrainNetwork(std::move(f.output), view_label);
  out.tap_pre_relu = symmetrized(f.z2.channel_mean());
  out.tap_post_relu = symmetrized(f.a2.channel_mean());
  (void)model;
  return out;
}

}  // namespace

TranslateOutput translate(const TranslatorModel& model, const BrainNetwork& source,
                          const NodeFeatureMap& noise) {
  source.validate(1e-9);
  TranslatorForward f = translator_forward(model, source.weights, noise);
  return package(model, std::move(f), source.view_label + ":translated");
}

TranslateOutput translate(const TranslatorModel& model, const BrainNetwork& source, Prng& rng) {
  NodeFeatureMap noise = sample_noise(model.config, rng);
  return translate(model, source, noise);
}

}  // namespace mforge
