#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mforge/dataset.hpp"
#include "mforge/ifs.hpp"
#include "mforge/multiplex.hpp"
#include "mforge/svm.hpp"
#include "mforge/trainer.hpp"

namespace mforge {

/// What feeds the feature vectors.
enum class PipelineVariant : std::uint8_t {
  kSourceOnly,            // vectorized source network alone
  kPredictedMultiplex,    // source, conv inter-layer, translated target
  kGroundTruthMultiplex,  // source, conv inter-layer, real target
  kLearnedPreRelu,        // inter-layer = encoder tap before its activation
  kLearnedPostRelu,       // inter-layer = encoder tap after its activation
};

std::string to_string(PipelineVariant v);
PipelineVariant variant_from_string(const std::string& s);
bool variant_needs_prediction(PipelineVariant v);

/// Accuracy table and audit trail for one variant.
struct VariantResult {
  PipelineVariant variant = PipelineVariant::kSourceOnly;
  std::size_t feature_dim = 0;
  std::vector<std::size_t> nf_values;  // clamped to feature_dim where needed
  std::vector<std::array<double, 2>> fold_accuracy;  // indexed [nf][fold]
  std::vector<double> mean_accuracy;                 // per nf
  double sweep_mean = 0.0;
  /// Full IFS ranking per fold, computed from training-fold rows only.
  std::array<std::vector<std::size_t>, 2> fold_order;
  /// Training-fold feature statistics (full feature set), exposed so leakage
  /// can be audited externally.
  std::array<std::vector<double>, 2> fold_feature_mean;
  std::array<std::vector<double>, 2> fold_feature_std;
};

struct ClassifyOutcome {
  std::vector<VariantResult> variants;
  std::array<std::vector<std::size_t>, 2> fold_test_subjects;  // dataset indices per fold
};

/// Stratified 2-fold cross-validated classification.
///
/// Per fold: when any requested variant needs predictions, a translator /
/// discriminator pair is adversarially trained on the training fold (one
/// training shared by all such variants), and every subject - training and
/// test alike - gets a predicted target and encoder taps so both sides of
/// the fold share a feature distribution. Feature selection and z-scoring
/// use training-fold rows only. Deterministic given the seed.
ClassifyOutcome classify_cv_multi(const Dataset& ds, const std::vector<PipelineVariant>& variants,
                                  const IfsConfig& ifs_cfg, const SvmConfig& svm_cfg,
                                  const TrainConfig& train_cfg, std::uint64_t seed);

VariantResult classify_cv(const Dataset& ds, PipelineVariant variant, const IfsConfig& ifs_cfg,
                          const SvmConfig& svm_cfg, const TrainConfig& train_cfg,
                          std::uint64_t seed);

/// Stratified fold assignment: per class, a seeded shuffle splits subjects
/// evenly (first half fold 0). Throws InsufficientClassCount when any class
/// has fewer than two members.
std::vector<std::size_t> stratified_two_fold(const std::vector<int>& labels, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Cross-fold biomarker scoring
// ---------------------------------------------------------------------------

struct MarkerEntry {
  std::size_t feature = 0;
  FeatureIndex where;
  double score = 0.0;
  std::size_t folds_present = 0;
};

struct MarkerReport {
  std::vector<MarkerEntry> ranked;  // descending score, ties by feature index
  std::size_t n_f = 0;
};

/// score(f) = sum over folds of [f in top n_f] * (n_f - rank + 1) / n_f,
/// with rank 1-based inside each fold's ranking.
MarkerReport score_markers(const std::vector<std::vector<std::size_t>>& fold_orders,
                           std::size_t n_f, std::size_t n, std::size_t layers);

}  // namespace mforge
