// mforge: brain-network translation, multiplex assembly, and classification
// from the command line. Every command is deterministic given --seed; report
// files embed a config echo through a JSON sidecar and never carry volatile
// fields, so seeded reruns are byte-identical.
//
// Exit codes: 0 success, 2 usage/config, 3 I/O, 4 data-contract violation,
// 5 internal numeric failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mforge/checkpoint.hpp>
#include <mforge/classify.hpp>
#include <mforge/csv.hpp>
#include <mforge/dataset.hpp>
#include <mforge/gradient_suite.hpp>
#include <mforge/knn.hpp>
#include <mforge/multiplex.hpp>
#include <mforge/parallel.hpp>
#include <mforge/synthetic.hpp>
#include <mforge/trainer.hpp>

using nlohmann::json;
using namespace mforge;

namespace {

constexpr int kReportFormatVersion = 1;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

/// Sidecar report: config echo, seed, and metrics beside the CSV. Wall time
/// goes to stdout only, keeping report bytes seed-deterministic.
void write_sidecar(const std::string& csv_path, const std::string& command, std::uint64_t seed,
                   const json& config, const json& metrics) {
  json report;
  report["format_version"] = kReportFormatVersion;
  report["command"] = command;
  report["seed"] = seed;
  report["config"] = config;
  report["metrics"] = metrics;
  write_text_file(csv_path + ".json", report.dump(2) + "\n");
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

std::vector<std::size_t> parse_nf_range(const std::string& text) {
  // "310:350:10" (start:stop:step, inclusive) or a comma list "310,330,350".
  std::vector<std::size_t> values;
  if (text.find(':') != std::string::npos) {
    std::size_t a = 0, b = 0, s = 0;
    if (std::sscanf(text.c_str(), "%zu:%zu:%zu", &a, &b, &s) != 3 || s == 0 || b < a) {
      throw ConfigError("bad --nf-range, expected start:stop:step");
    }
    for (std::size_t v = a; v <= b; v += s) values.push_back(v);
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t comma = text.find(',', pos);
      const std::string tok =
          text.substr(pos, (comma == std::string::npos ? text.size() : comma) - pos);
      try {
        values.push_back(static_cast<std::size_t>(std::stoul(tok)));
      } catch (...) {
        throw ConfigError("bad --nf-range element: " + tok);
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (values.empty()) throw ConfigError("--nf-range selected no values");
  return values;
}

struct TrainFlags {
  std::size_t epochs = 300;
  std::size_t batch_size = 10;
  double lr_t = 5e-4;
  double lr_d = 5e-4;
  double lambda_l1 = 1.0;
  std::size_t d_steps = 1;
  std::string gen_loss = "minimax";
  std::string fake_condition = "source";

  void attach(CLI::App* cmd) {
    cmd->add_option("--epochs", epochs, "Training epochs");
    cmd->add_option("--batch-size", batch_size, "Batch size");
    cmd->add_option("--lr-t", lr_t, "Translator learning rate");
    cmd->add_option("--lr-d", lr_d, "Discriminator learning rate");
    cmd->add_option("--lambda-l1", lambda_l1, "Weight of the L1 term in the translator loss");
    cmd->add_option("--d-steps", d_steps,
                    "Discriminator updates per translator update (0 = L1 only)");
    cmd->add_option("--gen-loss", gen_loss, "Generator loss: minimax|nonsaturating")
        ->check(CLI::IsMember({"minimax", "nonsaturating"}));
    cmd->add_option("--fake-condition", fake_condition,
                    "Conditioning layer for fake pairs: source|target")
        ->check(CLI::IsMember({"source", "target"}));
  }

  TrainConfig to_config(std::uint64_t seed) const {
    TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.batch_size = batch_size;
    cfg.lr_t = lr_t;
    cfg.lr_d = lr_d;
    cfg.lambda_l1 = lambda_l1;
    cfg.d_steps_per_g_step = d_steps;
    cfg.generator_loss = gen_loss == "nonsaturating" ? GeneratorLossKind::kNonSaturating
                                                     : GeneratorLossKind::kMinimax;
    cfg.fake_conditioning =
        fake_condition == "target" ? FakeConditioning::kTarget : FakeConditioning::kSource;
    cfg.seed = seed;
    return cfg;
  }

  json echo() const {
    return json{{"epochs", epochs},       {"batch_size", batch_size},
                {"lr_t", lr_t},           {"lr_d", lr_d},
                {"lambda_l1", lambda_l1}, {"d_steps", d_steps},
                {"gen_loss", gen_loss},   {"fake_condition", fake_condition}};
  }
};

void write_trace_csv(const std::string& path, const std::vector<EpochLosses>& trace) {
  std::string text = "epoch,loss_d,loss_t_adv,loss_l1\n";
  for (std::size_t e = 0; e < trace.size(); ++e) {
    text += csv_row({std::to_string(e), format_double(trace[e].loss_d),
                     format_double(trace[e].loss_t_adv), format_double(trace[e].loss_l1)});
  }
  write_text_file(path, text);
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string out;
  SynthConfig cfg;
};

int cmd_synth(const SynthArgs& args) {
  Stopwatch timer;
  Dataset ds = generate_synthetic(args.cfg);
  save_dataset(ds, args.out);

  json config{{"subjects", args.cfg.subjects},
              {"n", args.cfg.n},
              {"class_balance", args.cfg.class_balance},
              {"base_rank", args.cfg.base_rank},
              {"base_scale", args.cfg.base_scale},
              {"map_strength", args.cfg.map_strength},
              {"target_mix", args.cfg.target_mix},
              {"signal_edges", args.cfg.signal_edges},
              {"delta", args.cfg.delta},
              {"noise_source", args.cfg.noise_source},
              {"noise_target", args.cfg.noise_target}};
  json metrics{{"subjects_written", ds.subjects.size()},
               {"matrices_written", ds.subjects.size() * 2}};
  write_sidecar(args.out + "/manifest.json", "synth", args.cfg.seed, config, metrics);

  std::cout << "synth: wrote " << ds.subjects.size() << " subjects (" << ds.subjects.size() * 2
            << " matrices) to " << args.out << " in " << timer.elapsed_ms() << " ms\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string data;
  std::string out;
  std::string trace;  // defaults to out + ".trace.csv"
  TrainFlags flags;
  std::uint64_t seed = 0;
};

int cmd_train(const TrainArgs& args) {
  Stopwatch timer;
  Dataset ds = load_dataset(args.data + "/manifest.json");
  std::vector<TrainingPair> pairs = training_pairs(ds);

  TranslatorConfig tcfg;
  tcfg.n = ds.n;
  DiscriminatorConfig dcfg;
  dcfg.n = ds.n;
  TrainConfig cfg = args.flags.to_config(args.seed);

  TrainResult result = train(pairs, tcfg, dcfg, cfg);
  save_checkpoint(result.translator, result.discriminator, args.seed, args.out);

  const std::string trace_path = args.trace.empty() ? args.out + ".trace.csv" : args.trace;
  write_trace_csv(trace_path, result.trace);

  json config = args.flags.echo();
  config["data"] = args.data;
  config["n"] = ds.n;
  config["subjects"] = ds.subjects.size();
  json metrics;
  if (!result.trace.empty()) {
    metrics["final_loss_d"] = result.trace.back().loss_d;
    metrics["final_loss_t_adv"] = result.trace.back().loss_t_adv;
    metrics["final_loss_l1"] = result.trace.back().loss_l1;
  }
  metrics["epochs_run"] = result.trace.size();
  write_sidecar(args.out, "train", args.seed, config, metrics);

  std::cout << "train: " << result.trace.size() << " epochs on " << pairs.size()
            << " subjects; checkpoint " << args.out << "; trace " << trace_path << "; "
            << timer.elapsed_ms() << " ms\n";
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateArgs {
  std::string data;
  std::string ckpt;
  std::string out;
  std::string knn_train;  // optional separate neighbor pool
  std::size_t k_min = 2, k_max = 10;
  std::uint64_t seed = 0;
};

int cmd_evaluate(const EvaluateArgs& args) {
  Stopwatch timer;
  Dataset ds = load_dataset(args.data + "/manifest.json");
  ds.require_targets("evaluate");
  Checkpoint ckpt = load_checkpoint(args.ckpt);
  if (ckpt.translator.config.n != ds.n) {
    throw DomainError("evaluate: checkpoint n does not match dataset n");
  }
  if (args.k_min < 1 || args.k_max < args.k_min) {
    throw ConfigError("evaluate: bad KNN range");
  }

  // Translator MAE with deterministic per-subject noise.
  Prng noise_rng = Prng(args.seed).split("evaluate_noise");
  std::vector<NodeFeatureMap> noises(ds.subjects.size());
  for (std::size_t s = 0; s < ds.subjects.size(); ++s) {
    noises[s] = sample_noise(ckpt.translator.config, noise_rng);
  }
  std::vector<double> errors(ds.subjects.size(), 0.0);
  parallel_for(ds.subjects.size(), [&](std::size_t s) {
    TranslateOutput out = translate(ckpt.translator, ds.subjects[s].source, noises[s]);
    errors[s] = mae(out.predicted, *ds.subjects[s].target);
  });
  double ggan_mae = 0.0;
  for (double e : errors) ggan_mae += e;
  ggan_mae /= static_cast<double>(errors.size());

  std::vector<KnnPair> test_pairs = knn_pairs(ds);
  std::vector<KnnPair> train_pairs = test_pairs;
  if (!args.knn_train.empty()) {
    Dataset train_ds = load_dataset(args.knn_train + "/manifest.json");
    train_pairs = knn_pairs(train_ds);
  }

  std::string text = "method,k,mae\n";
  text += csv_row({"ggan", "", format_double(ggan_mae)});
  json per_k;
  double knn_sum = 0.0;
  for (std::size_t k = args.k_min; k <= args.k_max; ++k) {
    const double v = knn_mae(train_pairs, test_pairs, k);
    knn_sum += v;
    text += csv_row({"knn", std::to_string(k), format_double(v)});
    per_k[std::to_string(k)] = v;
  }
  const double knn_avg = knn_sum / static_cast<double>(args.k_max - args.k_min + 1);
  text += csv_row(
      {"knn_avg", std::to_string(args.k_min) + "-" + std::to_string(args.k_max),
       format_double(knn_avg)});
  write_text_file(args.out, text);

  json config{{"data", args.data},
              {"ckpt", args.ckpt},
              {"knn_train", args.knn_train.empty() ? args.data : args.knn_train},
              {"k_min", args.k_min},
              {"k_max", args.k_max}};
  json metrics{{"ggan_mae", ggan_mae}, {"knn_mae_avg", knn_avg}, {"knn_mae_per_k", per_k}};
  write_sidecar(args.out, "evaluate", args.seed, config, metrics);

  std::cout << "evaluate: ggan mae " << format_double(ggan_mae) << ", knn avg "
            << format_double(knn_avg) << "; report " << args.out << "; " << timer.elapsed_ms()
            << " ms\n";
  return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string data;
  std::string out;
  std::vector<std::string> variant_names;
  std::string nf_range = "310:350:10";
  double alpha = 0.5;
  double r_frac = 0.9;
  double svm_c = 1.0;
  std::size_t svm_iterations = 2000;
  bool no_standardize = false;
  TrainFlags flags;
  std::uint64_t seed = 0;
};

std::vector<PipelineVariant> resolve_variants(const std::vector<std::string>& names) {
  std::vector<PipelineVariant> variants;
  for (const std::string& name : names) {
    if (name == "all") {
      return {PipelineVariant::kSourceOnly, PipelineVariant::kPredictedMultiplex,
              PipelineVariant::kGroundTruthMultiplex, PipelineVariant::kLearnedPreRelu,
              PipelineVariant::kLearnedPostRelu};
    }
    variants.push_back(variant_from_string(name));
  }
  if (variants.empty()) variants.push_back(PipelineVariant::kPredictedMultiplex);
  return variants;
}

int cmd_classify(const ClassifyArgs& args) {
  Stopwatch timer;
  Dataset ds = load_dataset(args.data + "/manifest.json");
  std::vector<PipelineVariant> variants = resolve_variants(args.variant_names);

  IfsConfig ifs;
  ifs.alpha = args.alpha;
  ifs.r_frac = args.r_frac;
  ifs.nf_values = parse_nf_range(args.nf_range);
  SvmConfig svm;
  svm.C = args.svm_c;
  svm.iterations = args.svm_iterations;
  svm.standardize = !args.no_standardize;
  TrainConfig tc = args.flags.to_config(args.seed);

  ClassifyOutcome outcome = classify_cv_multi(ds, variants, ifs, svm, tc, args.seed);

  std::string text = "variant,n_f,fold0_accuracy,fold1_accuracy,mean_accuracy\n";
  json table;
  for (const VariantResult& r : outcome.variants) {
    json rows;
    for (std::size_t nfi = 0; nfi < r.nf_values.size(); ++nfi) {
      text += csv_row({to_string(r.variant), std::to_string(r.nf_values[nfi]),
                       format_double(r.fold_accuracy[nfi][0]),
                       format_double(r.fold_accuracy[nfi][1]),
                       format_double(r.mean_accuracy[nfi])});
      rows[std::to_string(r.nf_values[nfi])] =
          json{{"fold0", r.fold_accuracy[nfi][0]},
               {"fold1", r.fold_accuracy[nfi][1]},
               {"mean", r.mean_accuracy[nfi]}};
    }
    text += csv_row({to_string(r.variant), "all", "", "", format_double(r.sweep_mean)});
    table[to_string(r.variant)] = json{{"per_nf", rows}, {"sweep_mean", r.sweep_mean}};
  }
  write_text_file(args.out, text);

  json config{{"data", args.data},
              {"variants", json::array()},
              {"nf_range", args.nf_range},
              {"alpha", args.alpha},
              {"r_frac", args.r_frac},
              {"svm_c", args.svm_c},
              {"svm_iterations", args.svm_iterations},
              {"standardize", !args.no_standardize},
              {"train", args.flags.echo()}};
  for (const VariantResult& r : outcome.variants) config["variants"].push_back(to_string(r.variant));
  write_sidecar(args.out, "classify", args.seed, config, table);

  std::cout << "classify: " << outcome.variants.size() << " variant(s), "
            << ifs.nf_values.size() << " n_f value(s); report " << args.out << "; "
            << timer.elapsed_ms() << " ms\n";
  return 0;
}

// ---------------------------------------------------------------------------
// markers
// ---------------------------------------------------------------------------

struct MarkersArgs {
  std::string data;
  std::string out;
  std::string variant_name = "predicted_multiplex";
  std::size_t nf = 330;
  std::size_t top = 10;
  std::string roi_names_path;
  TrainFlags flags;
  std::uint64_t seed = 0;
};

std::vector<std::string> load_roi_names(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw IoError("markers: cannot open ROI names file " + path);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) names.push_back(line);
  }
  if (names.size() != n) {
    throw DomainError("markers: ROI names file must list exactly n names");
  }
  return names;
}

int cmd_markers(const MarkersArgs& args) {
  Stopwatch timer;
  Dataset ds = load_dataset(args.data + "/manifest.json");
  const PipelineVariant variant = variant_from_string(args.variant_name);

  IfsConfig ifs;
  ifs.nf_values = {args.nf};
  VariantResult result =
      classify_cv(ds, variant, ifs, SvmConfig{}, args.flags.to_config(args.seed), args.seed);

  const std::size_t layers = variant == PipelineVariant::kSourceOnly ? 1 : 3;
  MarkerReport report =
      score_markers({result.fold_order[0], result.fold_order[1]}, args.nf, ds.n, layers);

  std::vector<std::string> roi_names;
  if (!args.roi_names_path.empty()) roi_names = load_roi_names(args.roi_names_path, ds.n);
  auto roi_name = [&](std::size_t i) {
    return roi_names.empty() ? "roi_" + std::to_string(i) : roi_names[i];
  };
  static const char* kLayerNames[] = {"source", "inter", "target"};

  std::string text = "rank,feature,layer,roi_i,roi_j,roi_i_name,roi_j_name,score,folds\n";
  json top_list = json::array();
  const std::size_t limit = std::min<std::size_t>(args.top, report.ranked.size());
  for (std::size_t r = 0; r < limit; ++r) {
    const MarkerEntry& e = report.ranked[r];
    const char* layer = layers == 1 ? "source" : kLayerNames[e.where.layer];
    text += csv_row({std::to_string(r + 1), std::to_string(e.feature), layer,
                     std::to_string(e.where.i), std::to_string(e.where.j), roi_name(e.where.i),
                     roi_name(e.where.j), format_double(e.score),
                     std::to_string(e.folds_present)});
    top_list.push_back(json{{"rank", r + 1},
                            {"feature", e.feature},
                            {"layer", layer},
                            {"roi_i", e.where.i},
                            {"roi_j", e.where.j},
                            {"score", e.score},
                            {"folds", e.folds_present}});
  }
  write_text_file(args.out, text);

  json config{{"data", args.data},
              {"variant", args.variant_name},
              {"nf", args.nf},
              {"top", args.top},
              {"train", args.flags.echo()}};
  write_sidecar(args.out, "markers", args.seed, config, json{{"top_markers", top_list}});

  std::cout << "markers: top " << limit << " connections written to " << args.out << "; "
            << timer.elapsed_ms() << " ms\n";
  return 0;
}

// ---------------------------------------------------------------------------
// gradcheck
// ---------------------------------------------------------------------------

int cmd_gradcheck(std::uint64_t seed) {
  Stopwatch timer;
  constexpr double kThreshold = 1e-4;
  std::vector<GradientCheckItem> items = gradient_suite(6, seed, 5);
  bool ok = true;
  for (const GradientCheckItem& item : items) {
    const bool pass = item.max_rel_err < kThreshold;
    ok = ok && pass;
    std::cout << "gradcheck " << item.name << ": max rel err " << format_double(item.max_rel_err)
              << (pass ? " PASS" : " FAIL") << "\n";
  }
  std::cout << "gradcheck: " << (ok ? "all layers and models PASS" : "FAILURES present") << " ("
            << timer.elapsed_ms() << " ms)\n";
  if (!ok) throw NumericError("gradcheck: analytic gradients disagree with finite differences");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"brain network translation, multiplex assembly, and classification"};
  app.require_subcommand(1);

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic multi-view dataset");
  synth_cmd->add_option("--out", synth.out, "Output dataset directory")->required();
  synth_cmd->add_option("--subjects", synth.cfg.subjects, "Subject count");
  synth_cmd->add_option("--n", synth.cfg.n, "Nodes per network");
  synth_cmd->add_option("--seed", synth.cfg.seed, "Seed");
  synth_cmd->add_option("--balance", synth.cfg.class_balance, "Fraction of +1 subjects");
  synth_cmd->add_option("--rank", synth.cfg.base_rank, "Rank of the smooth base field");
  synth_cmd->add_option("--base-scale", synth.cfg.base_scale, "Base field amplitude");
  synth_cmd->add_option("--map-strength", synth.cfg.map_strength,
                        "0 keeps the target equal to the source");
  synth_cmd->add_option("--target-mix", synth.cfg.target_mix,
                        "Squared term vs relabeled copy in the target map");
  synth_cmd->add_option("--signal-edges", synth.cfg.signal_edges,
                        "Class-signal edge count per layer");
  synth_cmd->add_option("--delta", synth.cfg.delta, "Class offset magnitude");
  synth_cmd->add_option("--noise-source", synth.cfg.noise_source, "Source noise level");
  synth_cmd->add_option("--noise-target", synth.cfg.noise_target, "Target noise level");

  TrainArgs train_args;
  CLI::App* train_cmd = app.add_subcommand("train", "Adversarially train the translator");
  train_cmd->add_option("--data", train_args.data, "Dataset directory")->required();
  train_cmd->add_option("--out", train_args.out, "Checkpoint output path")->required();
  train_cmd->add_option("--trace", train_args.trace, "Loss-trace CSV path");
  train_cmd->add_option("--seed", train_args.seed, "Seed");
  train_args.flags.attach(train_cmd);

  EvaluateArgs eval_args;
  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "Prediction error of a checkpoint vs the KNN baseline");
  eval_cmd->add_option("--data", eval_args.data, "Evaluation dataset directory")->required();
  eval_cmd->add_option("--ckpt", eval_args.ckpt, "Checkpoint path")->required();
  eval_cmd->add_option("--out", eval_args.out, "MAE report CSV path")->required();
  eval_cmd->add_option("--knn-train", eval_args.knn_train,
                       "Neighbor-pool dataset (defaults to --data)");
  eval_cmd->add_option("--knn-k-min", eval_args.k_min, "Smallest K");
  eval_cmd->add_option("--knn-k-max", eval_args.k_max, "Largest K");
  eval_cmd->add_option("--seed", eval_args.seed, "Seed");

  ClassifyArgs cls_args;
  CLI::App* cls_cmd = app.add_subcommand("classify", "Cross-validated label prediction");
  cls_cmd->add_option("--data", cls_args.data, "Dataset directory")->required();
  cls_cmd->add_option("--out", cls_args.out, "Accuracy report CSV path")->required();
  cls_cmd->add_option("--variant", cls_args.variant_names,
                      "source_only|predicted_multiplex|ground_truth_multiplex|"
                      "learned_pre_relu|learned_post_relu|all (repeatable)");
  cls_cmd->add_option("--nf-range", cls_args.nf_range, "Selected-feature sweep start:stop:step");
  cls_cmd->add_option("--alpha", cls_args.alpha, "Feature-selection spread/independence mix");
  cls_cmd->add_option("--r-frac", cls_args.r_frac, "Walk-energy series scale");
  cls_cmd->add_option("--svm-c", cls_args.svm_c, "SVM cost");
  cls_cmd->add_option("--svm-iterations", cls_args.svm_iterations, "SVM subgradient iterations");
  cls_cmd->add_flag("--no-standardize", cls_args.no_standardize, "Skip feature z-scoring");
  cls_cmd->add_option("--seed", cls_args.seed, "Seed");
  cls_args.flags.attach(cls_cmd);

  MarkersArgs mk_args;
  CLI::App* mk_cmd =
      app.add_subcommand("markers", "Cross-fold discriminative connection discovery");
  mk_cmd->add_option("--data", mk_args.data, "Dataset directory")->required();
  mk_cmd->add_option("--out", mk_args.out, "Marker report CSV path")->required();
  mk_cmd->add_option("--variant", mk_args.variant_name, "Feature pipeline variant");
  mk_cmd->add_option("--nf", mk_args.nf, "Top-feature set size per fold");
  mk_cmd->add_option("--top", mk_args.top, "Rows in the report");
  mk_cmd->add_option("--roi-names", mk_args.roi_names_path, "Text file with one ROI name per line");
  mk_cmd->add_option("--seed", mk_args.seed, "Seed");
  mk_args.flags.attach(mk_cmd);

  std::uint64_t gradcheck_seed = 0;
  CLI::App* gc_cmd =
      app.add_subcommand("gradcheck", "Finite-difference verification of every backward pass");
  gc_cmd->add_option("--seed", gradcheck_seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth);
    if (train_cmd->parsed()) return cmd_train(train_args);
    if (eval_cmd->parsed()) return cmd_evaluate(eval_args);
    if (cls_cmd->parsed()) return cmd_classify(cls_args);
    if (mk_cmd->parsed()) return cmd_markers(mk_args);
    if (gc_cmd->parsed()) return cmd_gradcheck(gradcheck_seed);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
  return 2;
}
