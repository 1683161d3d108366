#include "mforge/gradient_suite.hpp"

#include <cmath>
#include <limits>

#include "mforge/discriminator.hpp"
#include "mforge/gradcheck.hpp"
#include "mforge/translator.hpp"

namespace mforge {

namespace {

std::vector<double> flatten(std::initializer_list<const Tensor*> tensors) {
  std::vector<double> out;
  for (const Tensor* t : tensors) {
    out.insert(out.end(), t->values().begin(), t->values().end());
  }
  return out;
}

void unflatten(const std::vector<double>& theta, std::initializer_list<Tensor*> tensors) {
  std::size_t off = 0;
  for (Tensor* t : tensors) {
    std::copy(theta.begin() + static_cast<std::ptrdiff_t>(off),
              theta.begin() + static_cast<std::ptrdiff_t>(off + t->size()), t->data());
    off += t->size();
  }
}

double weighted_sum(const Tensor& y, const Tensor& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += y[i] * w[i];
  return acc;
}

Tensor random_tensor(std::vector<std::size_t> shape, Prng& rng, double lo = -1.0,
                     double hi = 1.0) {
  Tensor t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(lo, hi);
  return t;
}

Tensor random_network_matrix(std::size_t n, Prng& rng) {
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

double check_e2e(std::size_t n, Prng& rng) {
  E2EParams p = init_e2e(n, 2, 3, rng);
  EdgeFeatureMap x(n, 2);
  x.values = random_tensor({2, n, n}, rng);
  EdgeFeatureMap lw(n, 3);
  lw.values = random_tensor({3, n, n}, rng);

  std::vector<double> theta = flatten({&x.values, &p.row_weights, &p.col_weights, &p.bias});
  auto f = [&](const std::vector<double>& v) {
    EdgeFeatureMap xv = x;
    E2EParams pv = p;
    unflatten(v, {&xv.values, &pv.row_weights, &pv.col_weights, &pv.bias});
    return weighted_sum(e2e_forward(xv, pv).values, lw.values);
  };
  E2EGrads g(p);
  EdgeFeatureMap dx = e2e_backward(x, p, lw, g);
  return grad_check(f, flatten({&dx.values, &g.row_weights, &g.col_weights, &g.bias}), theta);
}

double check_e2n(std::size_t n, Prng& rng) {
  E2NParams p = init_e2n(n, 2, 3, rng);
  EdgeFeatureMap x(n, 2);
  x.values = random_tensor({2, n, n}, rng);
  NodeFeatureMap lw(n, 3);
  lw.values = random_tensor({n, 3}, rng);

  std::vector<double> theta = flatten({&x.values, &p.node_weights, &p.bias});
  auto f = [&](const std::vector<double>& v) {
    EdgeFeatureMap xv = x;
    E2NParams pv = p;
    unflatten(v, {&xv.values, &pv.node_weights, &pv.bias});
    return weighted_sum(e2n_forward(xv, pv).values, lw.values);
  };
  E2NGrads g(p);
  EdgeFeatureMap dx = e2n_backward(x, p, lw, g);
  return grad_check(f, flatten({&dx.values, &g.node_weights, &g.bias}), theta);
}

double check_n2e(std::size_t n, Prng& rng) {
  N2EParams p = init_n2e(n, 3, 2, rng);
  NodeFeatureMap h(n, 3);
  h.values = random_tensor({n, 3}, rng);
  EdgeFeatureMap lw(n, 2);
  lw.values = random_tensor({2, n, n}, rng);

  std::vector<double> theta = flatten({&h.values, &p.p_weights, &p.q_weights, &p.bias});
  auto f = [&](const std::vector<double>& v) {
    NodeFeatureMap hv = h;
    N2EParams pv = p;
    unflatten(v, {&hv.values, &pv.p_weights, &pv.q_weights, &pv.bias});
    return weighted_sum(n2e_forward(hv, pv).values, lw.values);
  };
  N2EGrads g(p);
  NodeFeatureMap dh = n2e_backward(h, p, lw, g);
  return grad_check(f, flatten({&dh.values, &g.p_weights, &g.q_weights, &g.bias}), theta);
}

double check_dense(std::size_t n, Prng& rng) {
  DenseParams p = init_dense(n * 3, 1, rng);
  NodeFeatureMap h(n, 3);
  h.values = random_tensor({n, 3}, rng);

  std::vector<double> theta = flatten({&h.values, &p.weights, &p.bias});
  auto f = [&](const std::vector<double>& v) {
    NodeFeatureMap hv = h;
    DenseParams pv = p;
    unflatten(v, {&hv.values, &pv.weights, &pv.bias});
    return dense_forward(hv, pv)[0];
  };
  DenseGrads g(p);
  NodeFeatureMap dh = dense_backward(h, p, Tensor({1}, 1.0), g);
  return grad_check(f, flatten({&dh.values, &g.weights, &g.bias}), theta);
}

double check_activation(Activation kind, Prng& rng) {
  Tensor x({30});
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.uniform(-2.0, 2.0);
    // keep relu inputs off the kink, where finite differences are undefined
    if (kind == Activation::kRelu && std::abs(x[i]) < 1e-3) x[i] = 0.25;
  }
  Tensor lw = random_tensor({30}, rng);
  auto f = [&](const std::vector<double>& v) {
    Tensor y = activation(Tensor::from_data({30}, v), kind);
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += y[i] * lw[i];
    return acc;
  };
  Tensor y = activation(x, kind);
  Tensor dx = activation_backward(y, lw, kind);
  return grad_check(f, dx.values(), x.values());
}

/// Smallest |pre-activation| across every relu stage. Central differences
/// are invalid exactly on the relu kink (the analytic convention there is
/// relu'(0) = 0), so check instances must keep a margin away from it. Zero
/// is reachable structurally: a dead encoder channel cascades exact zeros
/// through the zero-bias init.
double kink_margin(const TranslatorForward& f) {
  double m = std::numeric_limits<double>::infinity();
  for (const Tensor* t : {&f.z1.values, &f.z2.values, &f.zd0.values, &f.zd1.values}) {
    for (std::size_t i = 0; i < t->size(); ++i) m = std::min(m, std::abs((*t)[i]));
  }
  for (std::size_t i = 0; i < f.zn.values.size(); ++i) {
    m = std::min(m, std::abs(f.zn.values[i]));
  }
  return m;
}

double check_translator(std::size_t n, Prng& rng) {
  TranslatorConfig cfg;
  cfg.n = n;
  cfg.enc_c1 = 2;
  cfg.enc_c2 = 3;
  cfg.node_dim = 3;
  cfg.noise_dim = 2;

  TranslatorModel model = TranslatorModel::init(cfg, rng);
  Tensor source = random_network_matrix(n, rng);
  NodeFeatureMap noise;
  for (std::uint64_t attempt = 0;; ++attempt) {
    Prng init = rng.split("init", attempt);
    model = TranslatorModel::init(cfg, init);
    Prng source_rng = rng.split("source", attempt);
    source = random_network_matrix(n, source_rng);
    Prng noise_rng = rng.split("noise", attempt);
    noise = sample_noise(cfg, noise_rng);
    if (kink_margin(translator_forward(model, source, noise)) > 1e-3) break;
  }
  Tensor lw = random_tensor({n, n}, rng);

  std::vector<double> theta;
  for (auto& [name, t] : model.parameters()) {
    theta.insert(theta.end(), t->values().begin(), t->values().end());
  }
  theta.insert(theta.end(), source.values().begin(), source.values().end());

  auto f = [&](const std::vector<double>& v) {
    TranslatorModel mv = model;
    Tensor sv = source;
    std::vector<Tensor*> slots;
    for (auto& [name, t] : mv.parameters()) slots.push_back(t);
    std::size_t off = 0;
    for (Tensor* t : slots) {
      std::copy(v.begin() + static_cast<std::ptrdiff_t>(off),
                v.begin() + static_cast<std::ptrdiff_t>(off + t->size()), t->data());
      off += t->size();
    }
    std::copy(v.begin() + static_cast<std::ptrdiff_t>(off), v.end(), sv.data());
    return weighted_sum(translator_forward(mv, sv, noise).output, lw);
  };

  TranslatorForward fw = translator_forward(model, source, noise);
  TranslatorGrads grads(model);
  Tensor d_source = translator_backward(model, fw, lw, grads);
  std::vector<double> analytic;
  for (Tensor* g : grads.tensors()) {
    analytic.insert(analytic.end(), g->values().begin(), g->values().end());
  }
  analytic.insert(analytic.end(), d_source.values().begin(), d_source.values().end());
  return grad_check(f, analytic, theta);
}

double discriminator_kink_margin(const DiscriminatorForward& f) {
  double m = std::numeric_limits<double>::infinity();
  for (const Tensor* t : {&f.z1.values, &f.z2.values, &f.zn.values}) {
    for (std::size_t i = 0; i < t->size(); ++i) m = std::min(m, std::abs((*t)[i]));
  }
  return m;
}

double check_discriminator(std::size_t n, Prng& rng) {
  DiscriminatorConfig cfg;
  cfg.n = n;
  cfg.c1 = 2;
  cfg.c2 = 3;
  cfg.node_dim = 3;
  Prng init = rng.split("init");
  DiscriminatorModel model = DiscriminatorModel::init(cfg, init);
  Tensor cond = random_network_matrix(n, rng);
  Tensor cand = random_network_matrix(n, rng);
  for (std::uint64_t attempt = 0;; ++attempt) {
    Prng i2 = rng.split("init", attempt);
    model = DiscriminatorModel::init(cfg, i2);
    Prng d2 = rng.split("inputs", attempt);
    cond = random_network_matrix(n, d2);
    cand = random_network_matrix(n, d2);
    if (discriminator_kink_margin(discriminator_forward(model, cond, cand)) > 1e-3) break;
  }

  std::vector<double> theta;
  for (auto& [name, t] : model.parameters()) {
    theta.insert(theta.end(), t->values().begin(), t->values().end());
  }
  theta.insert(theta.end(), cand.values().begin(), cand.values().end());

  auto f = [&](const std::vector<double>& v) {
    DiscriminatorModel mv = model;
    Tensor cv = cand;
    std::vector<Tensor*> slots;
    for (auto& [name, t] : mv.parameters()) slots.push_back(t);
    std::size_t off = 0;
    for (Tensor* t : slots) {
      std::copy(v.begin() + static_cast<std::ptrdiff_t>(off),
                v.begin() + static_cast<std::ptrdiff_t>(off + t->size()), t->data());
      off += t->size();
    }
    std::copy(v.begin() + static_cast<std::ptrdiff_t>(off), v.end(), cv.data());
    return -std::log(discriminator_forward(mv, cond, cv).prob);
  };

  DiscriminatorForward fw = discriminator_forward(model, cond, cand);
  DiscriminatorGrads grads(model);
  DiscriminatorInputGrads ig = discriminator_backward(model, fw, -1.0 / fw.prob, grads);
  std::vector<double> analytic;
  for (Tensor* g : grads.tensors()) {
    analytic.insert(analytic.end(), g->values().begin(), g->values().end());
  }
  analytic.insert(analytic.end(), ig.d_candidate.values().begin(), ig.d_candidate.values().end());
  return grad_check(f, analytic, theta);
}

}  // namespace

std::vector<GradientCheckItem> gradient_suite(std::size_t n, std::uint64_t base_seed,
                                              std::size_t seeds) {
  std::vector<GradientCheckItem> items = {
      {"e2e_conv", 0.0},      {"e2e_deconv", 0.0},        {"e2n_conv", 0.0},
      {"n2e_deconv", 0.0},    {"dense_head", 0.0},        {"activation_relu", 0.0},
      {"activation_sigmoid", 0.0}, {"activation_tanh", 0.0},
      {"translator", 0.0},    {"discriminator", 0.0},
  };
  for (std::size_t s = 0; s < seeds; ++s) {
    Prng rng(base_seed + s);
    Prng r0 = rng.split("e2e_conv");
    Prng r1 = rng.split("e2e_deconv");
    Prng r2 = rng.split("e2n");
    Prng r3 = rng.split("n2e");
    Prng r4 = rng.split("dense");
    Prng r5 = rng.split("act");
    Prng r6 = rng.split("translator");
    Prng r7 = rng.split("discriminator");
    const double errs[] = {
        check_e2e(n, r0),
        check_e2e(n, r1),  // deconvolution shares the parametric family
        check_e2n(n, r2),
        check_n2e(n, r3),
        check_dense(n, r4),
        check_activation(Activation::kRelu, r5),
        check_activation(Activation::kSigmoid, r5),
        check_activation(Activation::kTanh, r5),
        check_translator(n, r6),
        check_discriminator(n, r7),
    };
    for (std::size_t i = 0; i < items.size(); ++i) {
      items[i].max_rel_err = std::max(items[i].max_rel_err, errs[i]);
    }
  }
  return items;
}

}  // namespace mforge
