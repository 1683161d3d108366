#include "mforge/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mforge/parallel.hpp"
#include "mforge/prng.hpp"

namespace mforge {

std::string to_string(PipelineVariant v) {
  switch (v) {
    case PipelineVariant::kSourceOnly: return "source_only";
    case PipelineVariant::kPredictedMultiplex: return "predicted_multiplex";
    case PipelineVariant::kGroundTruthMultiplex: return "ground_truth_multiplex";
    case PipelineVariant::kLearnedPreRelu: return "learned_pre_relu";
    case PipelineVariant::kLearnedPostRelu: return "learned_post_relu";
  }
  return "unknown";
}

PipelineVariant variant_from_string(const std::string& s) {
  if (s == "source_only") return PipelineVariant::kSourceOnly;
  if (s == "predicted_multiplex") return PipelineVariant::kPredictedMultiplex;
  if (s == "ground_truth_multiplex") return PipelineVariant::kGroundTruthMultiplex;
  if (s == "learned_pre_relu") return PipelineVariant::kLearnedPreRelu;
  if (s == "learned_post_relu") return PipelineVariant::kLearnedPostRelu;
  throw ConfigError("unknown pipeline variant: " + s);
}

bool variant_needs_prediction(PipelineVariant v) {
  return v == PipelineVariant::kPredictedMultiplex || v == PipelineVariant::kLearnedPreRelu ||
         v == PipelineVariant::kLearnedPostRelu;
}

std::vector<std::size_t> stratified_two_fold(const std::vector<int>& labels, std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] > 0 ? pos : neg).push_back(i);
  }
  if (pos.size() < 2 || neg.size() < 2) {
    throw InsufficientClassCount("stratified_two_fold: each class needs at least 2 subjects");
  }
  Prng rng = Prng(seed).split("folds");
  std::vector<std::size_t> fold(labels.size(), 0);
  for (std::vector<std::size_t>* cls : {&pos, &neg}) {
    rng.shuffle(*cls);
    const std::size_t half = (cls->size() + 1) / 2;
    for (std::size_t r = 0; r < cls->size(); ++r) fold[(*cls)[r]] = r < half ? 0 : 1;
  }
  return fold;
}

namespace {

struct SubjectArtifacts {
  BrainNetwork predicted;
  Tensor tap_pre;
  Tensor tap_post;
};

std::vector<double> feature_row(const Dataset& ds, std::size_t subject, PipelineVariant variant,
                                const std::vector<SubjectArtifacts>& artifacts) {
  const SubjectRecord& rec = ds.subjects[subject];
  switch (variant) {
    case PipelineVariant::kSourceOnly:
      return vectorize(rec.source).values;
    case PipelineVariant::kPredictedMultiplex:
      return vectorize(build_multiplex(rec.source, artifacts[subject].predicted, InterKind::kConv))
          .values;
    case PipelineVariant::kGroundTruthMultiplex:
      return vectorize(build_multiplex(rec.source, *rec.target, InterKind::kConv)).values;
    case PipelineVariant::kLearnedPreRelu:
      return vectorize(build_multiplex(rec.source, artifacts[subject].predicted,
                                       InterKind::kLearnedPreRelu, artifacts[subject].tap_pre))
          .values;
    case PipelineVariant::kLearnedPostRelu:
      return vectorize(build_multiplex(rec.source, artifacts[subject].predicted,
                                       InterKind::kLearnedPostRelu, artifacts[subject].tap_post))
          .values;
  }
  throw ConfigError("feature_row: unknown variant");
}

Tensor rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size(), c = rows.empty() ? 0 : rows[0].size();
  Tensor m({r, c});
  for (std::size_t i = 0; i < r; ++i) {
    std::copy(rows[i].begin(), rows[i].end(), m.data() + i * c);
  }
  return m;
}

}  // namespace

ClassifyOutcome classify_cv_multi(const Dataset& ds, const std::vector<PipelineVariant>& variants,
                                  const IfsConfig& ifs_cfg, const SvmConfig& svm_cfg,
                                  const TrainConfig& train_cfg, std::uint64_t seed) {
  ifs_cfg.validate();
  svm_cfg.validate();
  if (variants.empty()) throw ConfigError("classify_cv: no variants requested");
  if (ds.subjects.empty()) throw EmptyDataset("classify_cv: dataset is empty");

  const bool needs_prediction =
      std::any_of(variants.begin(), variants.end(), variant_needs_prediction);
  const bool needs_truth = std::find(variants.begin(), variants.end(),
                                     PipelineVariant::kGroundTruthMultiplex) != variants.end();
  if (needs_truth) ds.require_targets("classify_cv(ground_truth_multiplex)");

  std::vector<int> labels;
  labels.reserve(ds.subjects.size());
  for (const SubjectRecord& s : ds.subjects) labels.push_back(s.label);
  const std::vector<std::size_t> fold_of = stratified_two_fold(labels, seed);

  ClassifyOutcome outcome;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    outcome.fold_test_subjects[fold_of[i]].push_back(i);
  }

  outcome.variants.resize(variants.size());
  for (std::size_t v = 0; v < variants.size(); ++v) {
    outcome.variants[v].variant = variants[v];
  }

  Prng rng(seed);

  for (std::size_t test_fold = 0; test_fold < 2; ++test_fold) {
    const std::size_t train_fold = 1 - test_fold;
    const std::vector<std::size_t>& train_subjects = outcome.fold_test_subjects[train_fold];
    const std::vector<std::size_t>& test_subjects = outcome.fold_test_subjects[test_fold];

    // One adversarial training per fold feeds every prediction-based variant.
    std::vector<SubjectArtifacts> artifacts(ds.subjects.size());
    if (needs_prediction) {
      std::vector<TrainingPair> pairs;
      pairs.reserve(train_subjects.size());
      for (std::size_t s : train_subjects) {
        const SubjectRecord& rec = ds.subjects[s];
        if (!rec.target.has_value()) {
          throw MissingTarget("classify_cv: training subject " + rec.id + " has no target");
        }
        pairs.push_back({rec.source.weights, rec.target->weights});
      }
      TranslatorConfig tcfg;
      tcfg.n = ds.n;
      DiscriminatorConfig dcfg;
      dcfg.n = ds.n;
      TrainConfig fold_cfg = train_cfg;
      fold_cfg.seed = rng.split("fold_train", test_fold).seed();
      TrainResult trained = train(pairs, tcfg, dcfg, fold_cfg);

      // Deterministic per-subject prediction noise, ascending dataset index.
      Prng noise_rng = rng.split("fold_predict", test_fold);
      std::vector<NodeFeatureMap> noises(ds.subjects.size());
      for (std::size_t s = 0; s < ds.subjects.size(); ++s) {
        noises[s] = sample_noise(tcfg, noise_rng);
      }
      parallel_for(ds.subjects.size(), [&](std::size_t s) {
        TranslateOutput out = translate(trained.translator, ds.subjects[s].source, noises[s]);
        artifacts[s] = {std::move(out.predicted), std::move(out.tap_pre_relu),
                        std::move(out.tap_post_relu)};
      });
    }

    for (std::size_t v = 0; v < variants.size(); ++v) {
      const PipelineVariant variant = variants[v];
      VariantResult& result = outcome.variants[v];

      std::vector<std::vector<double>> train_rows(train_subjects.size());
      std::vector<std::vector<double>> test_rows(test_subjects.size());
      parallel_for(train_subjects.size(), [&](std::size_t r) {
        train_rows[r] = feature_row(ds, train_subjects[r], variant, artifacts);
      });
      parallel_for(test_subjects.size(), [&](std::size_t r) {
        test_rows[r] = feature_row(ds, test_subjects[r], variant, artifacts);
      });

      const std::size_t dim = train_rows[0].size();
      result.feature_dim = dim;
      Tensor train_x = rows_to_matrix(train_rows);

      IfsResult ranking = ifs_rank(train_x, ifs_cfg);
      result.fold_order[test_fold] = ranking.order;

      // Training-fold stats over the full feature set, for leakage audits.
      std::vector<double>& means = result.fold_feature_mean[test_fold];
      std::vector<double>& stds = result.fold_feature_std[test_fold];
      means.assign(dim, 0.0);
      stds.assign(dim, 0.0);
      for (const auto& row : train_rows) {
        for (std::size_t f = 0; f < dim; ++f) means[f] += row[f];
      }
      for (std::size_t f = 0; f < dim; ++f) means[f] /= static_cast<double>(train_rows.size());
      for (const auto& row : train_rows) {
        for (std::size_t f = 0; f < dim; ++f) {
          const double d = row[f] - means[f];
          stds[f] += d * d;
        }
      }
      for (std::size_t f = 0; f < dim; ++f) {
        stds[f] = std::sqrt(stds[f] / static_cast<double>(train_rows.size()));
      }

      if (result.nf_values.empty()) {
        for (std::size_t nf : ifs_cfg.nf_values) result.nf_values.push_back(std::min(nf, dim));
        result.fold_accuracy.assign(result.nf_values.size(), {0.0, 0.0});
        result.mean_accuracy.assign(result.nf_values.size(), 0.0);
      }

      std::vector<int> train_y, test_y;
      for (std::size_t s : train_subjects) train_y.push_back(ds.subjects[s].label);
      for (std::size_t s : test_subjects) test_y.push_back(ds.subjects[s].label);

      for (std::size_t nfi = 0; nfi < result.nf_values.size(); ++nfi) {
        const std::size_t nf = result.nf_values[nfi];
        Tensor sel_train({train_rows.size(), nf});
        for (std::size_t r = 0; r < train_rows.size(); ++r) {
          for (std::size_t f = 0; f < nf; ++f) {
            sel_train(r, f) = train_rows[r][ranking.order[f]];
          }
        }
        SvmTrainResult svm = svm_train(sel_train, train_y, svm_cfg);

        std::size_t correct = 0;
        std::vector<double> probe(nf);
        for (std::size_t r = 0; r < test_rows.size(); ++r) {
          for (std::size_t f = 0; f < nf; ++f) probe[f] = test_rows[r][ranking.order[f]];
          if (svm.model.predict(probe) == test_y[r]) ++correct;
        }
        result.fold_accuracy[nfi][test_fold] =
            static_cast<double>(correct) / static_cast<double>(test_rows.size());
      }
    }
  }

  for (VariantResult& result : outcome.variants) {
    double sweep = 0.0;
    for (std::size_t nfi = 0; nfi < result.nf_values.size(); ++nfi) {
      result.mean_accuracy[nfi] =
          0.5 * (result.fold_accuracy[nfi][0] + result.fold_accuracy[nfi][1]);
      sweep += result.mean_accuracy[nfi];
    }
    result.sweep_mean = sweep / static_cast<double>(result.nf_values.size());
  }
  return outcome;
}

VariantResult classify_cv(const Dataset& ds, PipelineVariant variant, const IfsConfig& ifs_cfg,
                          const SvmConfig& svm_cfg, const TrainConfig& train_cfg,
                          std::uint64_t seed) {
  return classify_cv_multi(ds, {variant}, ifs_cfg, svm_cfg, train_cfg, seed).variants[0];
}

MarkerReport score_markers(const std::vector<std::vector<std::size_t>>& fold_orders,
                           std::size_t n_f, std::size_t n, std::size_t layers) {
  if (fold_orders.empty()) throw DomainError("score_markers: need at least one fold ranking");
  if (n_f < 1) throw ConfigError("score_markers: n_f must be positive");

  const std::size_t dim = fold_orders[0].size();
  std::vector<double> scores(dim, 0.0);
  std::vector<std::size_t> presence(dim, 0);
  for (const std::vector<std::size_t>& order : fold_orders) {
    if (order.size() != dim) throw ShapeMismatch("score_markers: fold rankings differ in size");
    const std::size_t top = std::min(n_f, dim);
    for (std::size_t rank = 0; rank < top; ++rank) {
      const std::size_t f = order[rank];
      scores[f] += static_cast<double>(n_f - rank) / static_cast<double>(n_f);
      presence[f] += 1;
    }
  }

  MarkerReport report;
  report.n_f = n_f;
  for (std::size_t f = 0; f < dim; ++f) {
    if (presence[f] == 0) continue;
    MarkerEntry e;
    e.feature = f;
    e.where = feature_index(f, n, layers);
    e.score = scores[f];
    e.folds_present = presence[f];
    report.ranked.push_back(e);
  }
  std::stable_sort(report.ranked.begin(), report.ranked.end(),
                   [](const MarkerEntry& a, const MarkerEntry& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.feature < b.feature;
                   });
  return report;
}

}  // namespace mforge
