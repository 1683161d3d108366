#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mforge/brain_network.hpp"
#include "mforge/knn.hpp"
#include "mforge/trainer.hpp"

namespace mforge {

struct SubjectRecord {
  std::string id;
  int label = +1;  // +1 / -1 class tag
  BrainNetwork source;
  std::optional<BrainNetwork> target;
};

/// Affine normalization recorded per view; raw values map through
/// (v - min) / (max - min), clamped into [0, 1].
struct ViewRange {
  double min = 0.0;
  double max = 1.0;
};

struct Dataset {
  std::size_t n = 0;
  std::string source_view;
  std::optional<std::string> target_view;
  std::map<std::string, ViewRange> normalization;
  std::vector<SubjectRecord> subjects;

  bool all_targets_present() const;
  void require_targets(const char* who) const;  // MissingTarget otherwise
};

/// Loads manifest.json plus all referenced matrix CSVs. Matrices must be
/// square of the manifest's n and symmetric within 1e-9; they are then
/// symmetrized, diagonal-zeroed, and min-max normalized per view using the
/// manifest's recorded ranges (or ranges computed over all off-diagonal
/// entries when the manifest carries none).
Dataset load_dataset(const std::string& manifest_path);

/// Writes manifest.json plus one CSV per matrix into `dir`, recording a unit
/// normalization so that a reload is an exact identity. Deterministic bytes.
void save_dataset(const Dataset& ds, const std::string& dir);

std::vector<TrainingPair> training_pairs(const Dataset& ds);
std::vector<KnnPair> knn_pairs(const Dataset& ds);

}  // namespace mforge
