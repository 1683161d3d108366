#include "mforge/trainer.hpp"

#include <cmath>
#include <numeric>

#include "mforge/adam.hpp"
#include "mforge/losses.hpp"

namespace mforge {

void TrainConfig::validate() const {
  if (batch_size < 1) throw ConfigError("train: batch_size must be positive");
  if (lr_t < 0.0 || lr_d < 0.0) throw ConfigError("train: learning rates must be non-negative");
  if (lambda_l1 < 0.0) throw ConfigError("train: lambda_l1 must be non-negative");
  if (beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0) {
    throw ConfigError("train: Adam betas must lie in [0, 1)");
  }
  if (eps <= 0.0) throw ConfigError("train: Adam eps must be positive");
}

namespace {

std::vector<Tensor*> grad_ptrs(std::vector<Tensor*> v) { return v; }

std::vector<const Tensor*> const_view(const std::vector<Tensor*>& v) {
  std::vector<const Tensor*> out;
  out.reserve(v.size());
  for (Tensor* t : v) out.push_back(t);
  return out;
}

std::vector<Tensor*> model_params(TranslatorModel& m) {
  std::vector<Tensor*> out;
  for (auto& [name, t] : m.parameters()) out.push_back(t);
  return out;
}

std::vector<Tensor*> model_params(DiscriminatorModel& m) {
  std::vector<Tensor*> out;
  for (auto& [name, t] : m.parameters()) out.push_back(t);
  return out;
}

void zero_all(std::vector<Tensor*> tensors) {
  for (Tensor* t : tensors) t->fill(0.0);
}

}  // namespace

TrainResult train(const std::vector<TrainingPair>& subjects, const TranslatorConfig& tcfg,
                  const DiscriminatorConfig& dcfg, const TrainConfig& cfg) {
  cfg.validate();
  tcfg.validate();
  dcfg.validate();
  if (subjects.empty()) throw EmptyDataset("train: no training subjects");
  const std::size_t n = tcfg.n;
  for (const TrainingPair& s : subjects) {
    if (s.source.rank() != 2 || s.source.dim(0) != n || s.source.dim(1) != n ||
        !s.source.same_shape(s.target)) {
      throw ShapeMismatch("train: every subject needs n-by-n source and target");
    }
  }

  Prng rng(cfg.seed);
  Prng init_t = rng.split("translator_init");
  Prng init_d = rng.split("discriminator_init");
  Prng noise_rng = rng.split("noise");
  Prng shuffle_rng = rng.split("shuffle");

  TrainResult result{TranslatorModel::init(tcfg, init_t), DiscriminatorModel::init(dcfg, init_d), {}};
  TranslatorModel& T = result.translator;
  DiscriminatorModel& D = result.discriminator;

  std::vector<Tensor*> t_params = model_params(T);
  std::vector<Tensor*> d_params = model_params(D);
  AdamState t_state = AdamState::for_params(t_params);
  AdamState d_state = AdamState::for_params(d_params);

  TranslatorGrads t_grads(T);
  DiscriminatorGrads d_grads(D);
  DiscriminatorGrads d_scratch(D);  // candidate-gradient pass, parameters discarded

  const bool adversarial = cfg.d_steps_per_g_step > 0;

  std::vector<std::size_t> order(subjects.size());
  std::iota(order.begin(), order.end(), 0);

  result.trace.reserve(cfg.epochs);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(order);

    double epoch_d = 0.0, epoch_adv = 0.0, epoch_l1 = 0.0;
    std::size_t d_updates = 0, t_updates = 0;

    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      const double inv_bs = 1.0 / static_cast<double>(stop - start);

      if (adversarial) {
        for (std::size_t step = 0; step < cfg.d_steps_per_g_step; ++step) {
          zero_all(grad_ptrs(d_grads.tensors()));
          double batch_loss = 0.0;
          for (std::size_t b = start; b < stop; ++b) {
            const TrainingPair& subj = subjects[order[b]];
            NodeFeatureMap noise = sample_noise(tcfg, noise_rng);
            TranslatorForward tf = translator_forward(T, subj.source, noise);
            const Tensor& fake = tf.output;
            const Tensor& fake_cond =
                cfg.fake_conditioning == FakeConditioning::kSource ? subj.source : subj.target;

            DiscriminatorForward df_real = discriminator_forward(D, subj.source, subj.target);
            DiscriminatorForward df_fake = discriminator_forward(D, fake_cond, fake);
            batch_loss += discriminator_loss(df_real.prob, df_fake.prob);
            discriminator_backward(D, df_real,
                                   d_discriminator_loss_dreal(df_real.prob) * inv_bs, d_grads);
            discriminator_backward(D, df_fake,
                                   d_discriminator_loss_dfake(df_fake.prob) * inv_bs, d_grads);
          }
          auto d_grad_tensors = d_grads.tensors();
          adam_step(d_params, const_view(d_grad_tensors), d_state, cfg.lr_d, cfg.beta1, cfg.beta2,
                    cfg.eps);
          epoch_d += batch_loss * inv_bs;
          ++d_updates;
        }
      }

      zero_all(grad_ptrs(t_grads.tensors()));
      double batch_adv = 0.0, batch_l1 = 0.0;
      for (std::size_t b = start; b < stop; ++b) {
        const TrainingPair& subj = subjects[order[b]];
        NodeFeatureMap noise = sample_noise(tcfg, noise_rng);
        TranslatorForward tf = translator_forward(T, subj.source, noise);
        const Tensor& fake = tf.output;

        Tensor d_fake({n, n}, 0.0);
        if (adversarial) {
          const Tensor& fake_cond =
              cfg.fake_conditioning == FakeConditioning::kSource ? subj.source : subj.target;
          DiscriminatorForward df = discriminator_forward(D, fake_cond, fake);
          double dp = 0.0;
          if (cfg.generator_loss == GeneratorLossKind::kMinimax) {
            batch_adv += generator_loss_minimax(df.prob);
            dp = d_generator_loss_minimax(df.prob);
          } else {
            batch_adv += generator_loss_nonsaturating(df.prob);
            dp = d_generator_loss_nonsaturating(df.prob);
          }
          zero_all(grad_ptrs(d_scratch.tensors()));
          DiscriminatorInputGrads ig = discriminator_backward(D, df, dp * inv_bs, d_scratch);
          d_fake += ig.d_candidate;
        }

        batch_l1 += l1_edge_loss(subj.target, fake);
        if (cfg.lambda_l1 > 0.0) {
          Tensor l1g = l1_edge_loss_grad(subj.target, fake);
          l1g *= cfg.lambda_l1 * inv_bs;
          d_fake += l1g;
        }
        translator_backward(T, tf, d_fake, t_grads);
      }
      auto t_grad_tensors = t_grads.tensors();
      adam_step(t_params, const_view(t_grad_tensors), t_state, cfg.lr_t, cfg.beta1, cfg.beta2,
                cfg.eps);
      epoch_adv += batch_adv * inv_bs;
      epoch_l1 += batch_l1 * inv_bs;
      ++t_updates;
    }

    EpochLosses row;
    row.loss_d = d_updates ? epoch_d / static_cast<double>(d_updates) : 0.0;
    row.loss_t_adv = adversarial && t_updates ? epoch_adv / static_cast<double>(t_updates) : 0.0;
    row.loss_l1 = t_updates ? epoch_l1 / static_cast<double>(t_updates) : 0.0;
    if (!std::isfinite(row.loss_d) || !std::isfinite(row.loss_t_adv) ||
        !std::isfinite(row.loss_l1)) {
      throw NonFiniteError("train: non-finite loss at epoch " + std::to_string(epoch));
    }
    result.trace.push_back(row);
  }
  return result;
}

}  // namespace mforge
