#include "mforge/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "mforge/csv.hpp"
#include "mforge/feature_maps.hpp"

namespace mforge {

namespace fs = std::filesystem;
using nlohmann::json;

bool Dataset::all_targets_present() const {
  for (const SubjectRecord& s : subjects) {
    if (!s.target.has_value()) return false;
  }
  return !subjects.empty();
}

void Dataset::require_targets(const char* who) const {
  if (subjects.empty()) throw EmptyDataset(std::string(who) + ": dataset is empty");
  for (const SubjectRecord& s : subjects) {
    if (!s.target.has_value()) {
      throw MissingTarget(std::string(who) + ": subject " + s.id + " has no target network");
    }
  }
}

namespace {

Tensor load_matrix(const fs::path& path, std::size_t n) {
  Tensor m = read_matrix_csv(path.string());
  if (m.dim(0) != m.dim(1)) {
    throw NonSquareError("load_dataset: " + path.string() + " is " + std::to_string(m.dim(0)) +
                         "x" + std::to_string(m.dim(1)));
  }
  if (m.dim(0) != n) {
    throw ShapeMismatch("load_dataset: " + path.string() + " does not match manifest n");
  }
  if (!m.all_finite()) throw DomainError("load_dataset: non-finite values in " + path.string());

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  }
  if (worst > 1e-9) {
    throw AsymmetryError("load_dataset: " + path.string() + " asymmetric by " +
                         format_double(worst));
  }
  Tensor sym = symmetrized(m);
  zero_diagonal(sym);
  return sym;
}

void update_range(const Tensor& m, double& lo, double& hi) {
  const std::size_t n = m.dim(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      lo = std::min(lo, m(i, j));
      hi = std::max(hi, m(i, j));
    }
  }
}

void normalize_in_place(Tensor& m, const ViewRange& range) {
  if (!(range.min < range.max)) {
    throw DomainError("load_dataset: degenerate normalization range (min >= max)");
  }
  const double inv = 1.0 / (range.max - range.min);
  const std::size_t n = m.dim(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      m(i, j) = std::clamp((m(i, j) - range.min) * inv, 0.0, 1.0);
    }
  }
}

}  // namespace

Dataset load_dataset(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("load_dataset: cannot open " + manifest_path);
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw ParseError(std::string("load_dataset: bad manifest: ") + e.what());
  }

  Dataset ds;
  try {
    if (manifest.at("version").get<int>() != 1) {
      throw FormatError("load_dataset: unsupported manifest version");
    }
    ds.n = manifest.at("n").get<std::size_t>();
    ds.source_view = manifest.at("source_view").get<std::string>();
    if (!manifest.at("target_view").is_null()) {
      ds.target_view = manifest.at("target_view").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("load_dataset: bad manifest: ") + e.what());
  }
  if (ds.n < 2) throw DomainError("load_dataset: n must be at least 2");

  const fs::path base = fs::path(manifest_path).parent_path();

  struct RawSubject {
    std::string id;
    int label;
    Tensor source;
    std::optional<Tensor> target;
  };
  std::vector<RawSubject> raw;
  std::set<std::string> seen;

  try {
    for (const auto& subj : manifest.at("subjects")) {
      RawSubject r;
      r.id = subj.at("id").get<std::string>();
      if (!seen.insert(r.id).second) {
        throw DuplicateId("load_dataset: duplicate subject id " + r.id);
      }
      const std::string label = subj.at("label").get<std::string>();
      if (label == "+1") {
        r.label = +1;
      } else if (label == "-1") {
        r.label = -1;
      } else {
        throw ParseError("load_dataset: label must be \"+1\" or \"-1\", got " + label);
      }
      r.source = load_matrix(base / subj.at("source").get<std::string>(), ds.n);
      if (!subj.at("target").is_null()) {
        if (!ds.target_view.has_value()) {
          throw ParseError("load_dataset: subject has a target but manifest has no target_view");
        }
        r.target = load_matrix(base / subj.at("target").get<std::string>(), ds.n);
      }
      raw.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("load_dataset: bad manifest: ") + e.what());
  }
  if (raw.empty()) throw EmptyDataset("load_dataset: manifest lists no subjects");

  // Per-view ranges: manifest-recorded when present, otherwise the global
  // min/max over every subject's off-diagonal entries.
  auto resolve_range = [&](const std::string& view, bool is_source) -> ViewRange {
    if (!manifest.at("normalization").is_null()) {
      const auto& norm = manifest.at("normalization");
      if (norm.contains(view)) {
        ViewRange r;
        try {
          r.min = norm.at(view).at("min").get<double>();
          r.max = norm.at(view).at("max").get<double>();
        } catch (const json::exception& e) {
          throw ParseError(std::string("load_dataset: bad normalization block: ") + e.what());
        }
        return r;
      }
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const RawSubject& r : raw) {
      if (is_source) {
        update_range(r.source, lo, hi);
      } else if (r.target.has_value()) {
        update_range(*r.target, lo, hi);
      }
    }
    return {lo, hi};
  };

  const ViewRange source_range = resolve_range(ds.source_view, true);
  ds.normalization[ds.source_view] = source_range;
  std::optional<ViewRange> target_range;
  if (ds.target_view.has_value()) {
    target_range = resolve_range(*ds.target_view, false);
    ds.normalization[*ds.target_view] = *target_range;
  }

  for (RawSubject& r : raw) {
    normalize_in_place(r.source, source_range);
    SubjectRecord rec;
    rec.id = std::move(r.id);
    rec.label = r.label;
    rec.source = BrainNetwork(std::move(r.source), ds.source_view);
    rec.source.validate();
    if (r.target.has_value()) {
      normalize_in_place(*r.target, *target_range);
      rec.target = BrainNetwork(std::move(*r.target), *ds.target_view);
      rec.target->validate();
    }
    ds.subjects.push_back(std::move(rec));
  }
  return ds;
}

void save_dataset(const Dataset& ds, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("save_dataset: cannot create " + dir);

  json manifest;
  manifest["version"] = 1;
  manifest["n"] = ds.n;
  manifest["source_view"] = ds.source_view;
  manifest["target_view"] = ds.target_view.has_value() ? json(*ds.target_view) : json(nullptr);

  // Stored matrices are already normalized; record the identity range so a
  // reload reproduces them exactly.
  json norm;
  norm[ds.source_view] = {{"min", 0.0}, {"max", 1.0}};
  if (ds.target_view.has_value()) norm[*ds.target_view] = {{"min", 0.0}, {"max", 1.0}};
  manifest["normalization"] = norm;

  json subjects = json::array();
  for (const SubjectRecord& s : ds.subjects) {
    const std::string source_file = s.id + "_source.csv";
    write_matrix_csv(s.source.weights, (fs::path(dir) / source_file).string());
    json entry;
    entry["id"] = s.id;
    entry["label"] = s.label > 0 ? "+1" : "-1";
    entry["source"] = source_file;
    if (s.target.has_value()) {
      const std::string target_file = s.id + "_target.csv";
      write_matrix_csv(s.target->weights, (fs::path(dir) / target_file).string());
      entry["target"] = target_file;
    } else {
      entry["target"] = nullptr;
    }
    subjects.push_back(std::move(entry));
  }
  manifest["subjects"] = std::move(subjects);

  std::ofstream out(fs::path(dir) / "manifest.json", std::ios::trunc);
  if (!out) throw IoError("save_dataset: cannot write manifest in " + dir);
  out << manifest.dump(2) << '\n';
  if (!out) throw IoError("save_dataset: manifest write failed in " + dir);
}

std::vector<TrainingPair> training_pairs(const Dataset& ds) {
  ds.require_targets("training_pairs");
  std::vector<TrainingPair> pairs;
  pairs.reserve(ds.subjects.size());
  for (const SubjectRecord& s : ds.subjects) {
    pairs.push_back({s.source.weights, s.target->weights});
  }
  return pairs;
}

std::vector<KnnPair> knn_pairs(const Dataset& ds) {
  ds.require_targets("knn_pairs");
  std::vector<KnnPair> pairs;
  pairs.reserve(ds.subjects.size());
  for (const SubjectRecord& s : ds.subjects) {
    pairs.push_back({s.source, *s.target});
  }
  return pairs;
}

}  // namespace mforge
