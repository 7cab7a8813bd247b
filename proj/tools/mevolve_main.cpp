// mevolve: dataset stats, one-shot augmentation, baseline training and full
// evolve runs over TU-format graph classification datasets.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mevolve/augment.hpp"
#include "mevolve/classifier.hpp"
#include "mevolve/errors.hpp"
#include "mevolve/evolve.hpp"
#include "mevolve/spectral.hpp"
#include "mevolve/tu_io.hpp"

namespace {

using nlohmann::json;

struct DataArgs {
  std::string dir;
  std::string name;
};

std::string default_data_dir() {
  if (const char* env = std::getenv("MEVOLVE_DATA_DIR")) return env;
  return "data";
}

mevolve::TuLoadResult load_or_die(const DataArgs& args) {
  const std::filesystem::path dir(args.dir);
  if (!std::filesystem::is_directory(dir)) {
    throw mevolve::ParseError(dir.string(), 0, "dataset directory does not exist");
  }
  auto loaded = mevolve::load_tu_dataset(dir, args.name);
  for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
  bool identity = true;
  for (std::size_t c = 0; c < loaded.dataset.label_values.size(); ++c) {
    if (loaded.dataset.label_values[c] != static_cast<long long>(c)) identity = false;
  }
  if (!identity) {
    std::cerr << "label mapping:";
    for (std::size_t c = 0; c < loaded.dataset.label_values.size(); ++c) {
      std::cerr << ' ' << loaded.dataset.label_values[c] << "->" << c;
    }
    std::cerr << "\n";
  }
  return loaded;
}

void add_data_options(CLI::App* cmd, DataArgs& args) {
  cmd->add_option("--data", args.dir, "Dataset directory (TU multi-file layout)")
      ->default_val(default_data_dir());
  cmd->add_option("--name", args.name, "Dataset name, e.g. MUTAG")->required();
}

void add_augment_options(CLI::App* cmd, mevolve::AugmentConfig& cfg, std::string& mapping) {
  cmd->add_option("--mapping", mapping,
                  "random | vertex-similarity | motif-random | motif-similarity")
      ->default_val(mevolve::mapping_name(cfg.mapping));
  cmd->add_option("--beta", cfg.beta, "Edge modification budget in (0,1]")
      ->default_val(cfg.beta);
  cmd->add_option("--motif-length", cfg.motif_length, "Open motif length (2 = open-triad)")
      ->default_val(cfg.motif_length);
  cmd->add_flag("--no-preserve-connectivity",
                [&cfg](std::size_t) { cfg.preserve_connectivity = false; },
                "Allow deletions that disconnect the graph");
  cmd->add_flag("--no-preserve-edge-count",
                [&cfg](std::size_t) { cfg.preserve_edge_count = false; },
                "Keep motif additions whose deletion slot collides");
  cmd->add_option("--max-resample", cfg.max_resample_attempts,
                  "Connectivity resampling attempts per deletion")
      ->default_val(cfg.max_resample_attempts);
}

void add_model_options(CLI::App* cmd, mevolve::ModelConfig& cfg, std::string& classifier) {
  cmd->add_option("--classifier", classifier, "knn | logistic")
      ->default_val(mevolve::classifier_kind_name(cfg.classifier));
  cmd->add_option("--dim", cfg.embedding_dim, "Spectral embedding dimension")
      ->default_val(cfg.embedding_dim);
  cmd->add_option("--knn-k", cfg.knn_k, "Neighbors for the knn classifier")
      ->default_val(cfg.knn_k);
  cmd->add_option("--lr", cfg.logistic.learning_rate, "Logistic learning rate")
      ->default_val(cfg.logistic.learning_rate);
  cmd->add_option("--l2", cfg.logistic.l2, "Logistic L2 strength")
      ->default_val(cfg.logistic.l2);
  cmd->add_option("--epochs", cfg.logistic.max_epochs, "Logistic max epochs")
      ->default_val(cfg.logistic.max_epochs);
  cmd->add_option("--tol", cfg.logistic.tolerance, "Logistic gradient tolerance")
      ->default_val(cfg.logistic.tolerance);
}

bool parse_split(const std::string& text, mevolve::SplitFractions& out) {
  return std::sscanf(text.c_str(), "%lf,%lf,%lf", &out.train, &out.val, &out.test) == 3;
}

void print_stats_table(const std::string& name, const mevolve::DatasetStats& s) {
  std::printf("%-10s %6s %4s %18s %18s %9s\n", "dataset", "|D|", "|Y|", "avg|V| (min/max)",
              "avg|E| (min/max)", "bias(%)");
  std::printf("%-10s %6zu %4d %8.2f (%zu/%zu) %10.2f (%zu/%zu) %8.1f\n", name.c_str(),
              s.graph_count, s.class_count, s.avg_vertices, s.min_vertices, s.max_vertices,
              s.avg_edges, s.min_edges, s.max_edges, 100.0 * s.bias);
}

json stats_json(const std::string& name, const mevolve::DatasetStats& s) {
  return json{{"name", name},
              {"graph_count", s.graph_count},
              {"class_count", s.class_count},
              {"avg_vertices", s.avg_vertices},
              {"avg_edges", s.avg_edges},
              {"min_vertices", s.min_vertices},
              {"max_vertices", s.max_vertices},
              {"min_edges", s.min_edges},
              {"max_edges", s.max_edges},
              {"bias", s.bias}};
}

int cmd_stats(const DataArgs& data, bool as_json) {
  std::cerr << "config: data=" << data.dir << " name=" << data.name << "\n";
  const auto loaded = load_or_die(data);
  const auto stats = mevolve::dataset_stats(loaded.dataset);
  if (as_json) {
    std::cout << stats_json(data.name, stats).dump(2) << "\n";
  } else {
    print_stats_table(data.name, stats);
  }
  return 0;
}

int cmd_augment(const DataArgs& data, const mevolve::AugmentConfig& cfg, std::uint64_t seed,
                const std::string& out_path, unsigned workers) {
  const auto loaded = load_or_die(data);
  std::cerr << "config: mapping=" << mevolve::mapping_name(cfg.mapping) << " beta=" << cfg.beta
            << " motif_length=" << cfg.motif_length
            << " preserve_connectivity=" << cfg.preserve_connectivity
            << " preserve_edge_count=" << cfg.preserve_edge_count
            << " max_resample_attempts=" << cfg.max_resample_attempts << " seed=" << seed
            << " workers=" << workers << "\n";
  const auto result = mevolve::augment_dataset(loaded.dataset, cfg, seed, 0, workers);
  for (const auto& skip : result.skipped) {
    std::cerr << "skipped graph " << skip.index << ": " << skip.reason << "\n";
  }
  if (result.pool.empty()) {
    std::cerr << "error: augmentation infeasible for every graph in " << data.name << "\n";
    return 1;
  }
  mevolve::save_pool(result.pool, std::filesystem::path(out_path));
  std::cout << "pool " << result.pool.size() << "/" << loaded.dataset.size() << " graphs, "
            << result.edges_added << " edges added, " << result.edges_removed
            << " removed, " << result.skipped.size() << " skipped, "
            << result.connectivity_overrides << " connectivity overrides, "
            << result.dropped_pairs << " dropped pairs -> " << out_path << "\n";
  return 0;
}

int cmd_train(const DataArgs& data, const mevolve::ModelConfig& model,
              const mevolve::SplitFractions& split, std::uint64_t seed,
              const std::string& model_out, unsigned workers) {
  const auto loaded = load_or_die(data);
  std::cerr << "config: classifier=" << mevolve::classifier_kind_name(model.classifier)
            << " dim=" << model.embedding_dim << " knn_k=" << model.knn_k << " split="
            << split.train << "," << split.val << "," << split.test << " seed=" << seed << "\n";
  mevolve::Rng rng(mevolve::derive_seed(seed, 0xD5));
  const auto split_idx = mevolve::stratified_split(loaded.dataset, split, rng);
  const auto train = loaded.dataset.subset(split_idx.train);
  const auto val = loaded.dataset.subset(split_idx.val);
  const auto test = loaded.dataset.subset(split_idx.test);
  const auto train_x = mevolve::embed_dataset(train, model.embedding_dim, workers);
  const auto val_x = mevolve::embed_dataset(val, model.embedding_dim, workers);
  const auto test_x = mevolve::embed_dataset(test, model.embedding_dim, workers);
  auto classifier = mevolve::make_classifier(model);
  classifier->fit(train_x, train.labels, loaded.dataset.class_count);
  std::cout << "train_acc=" << mevolve::accuracy(*classifier, train_x, train.labels)
            << " val_acc=" << mevolve::accuracy(*classifier, val_x, val.labels)
            << " test_acc=" << mevolve::accuracy(*classifier, test_x, test.labels) << "\n";
  if (!model_out.empty()) {
    std::ofstream out(model_out);
    if (!out) throw std::runtime_error("cannot open model output file " + model_out);
    classifier->save(out);
    std::cout << "model -> " << model_out << "\n";
  }
  return 0;
}

int cmd_evolve(const DataArgs& data, const mevolve::EvolveConfig& cfg,
               const std::string& report_path, bool as_json) {
  const auto loaded = load_or_die(data);
  std::cerr << "config: mapping=" << mevolve::mapping_name(cfg.augment.mapping)
            << " beta=" << cfg.augment.beta << " motif_length=" << cfg.augment.motif_length
            << " classifier=" << mevolve::classifier_kind_name(cfg.model.classifier)
            << " dim=" << cfg.model.embedding_dim << " iterations=" << cfg.iterations
            << " trials=" << cfg.trials << " split=" << cfg.split.train << "," << cfg.split.val
            << "," << cfg.split.test << " seed=" << cfg.rng_seed << " workers=" << cfg.workers
            << "\n";
  const auto report = mevolve::run_experiment(loaded.dataset, cfg);
  for (const auto& trial : report.trials) {
    if (trial.failed) std::cerr << "trial failed: " << trial.error << "\n";
  }
  if (report.trials_ok == 0) {
    std::cerr << "error: every trial failed\n";
    return 1;
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error("cannot open report file " + report_path);
    mevolve::write_report(out, report, cfg);
    std::cerr << "report -> " << report_path << "\n";
  }
  if (as_json) {
    std::cout << json{{"trials_ok", report.trials_ok},
                      {"mean_acc_original", report.mean_acc_original},
                      {"stddev_acc_original", report.stddev_acc_original},
                      {"mean_acc_evolved", report.mean_acc_evolved},
                      {"stddev_acc_evolved", report.stddev_acc_evolved},
                      {"mean_rimp", report.mean_rimp}}
                     .dump(2)
              << "\n";
  } else {
    std::printf("mean_acc_original=%.4f (+/- %.4f)\n", report.mean_acc_original,
                report.stddev_acc_original);
    std::printf("mean_acc_evolved=%.4f (+/- %.4f)\n", report.mean_acc_evolved,
                report.stddev_acc_evolved);
    std::printf("mean_rimp=%.4f\n", report.mean_rimp);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph augmentation, label-reliability filtration and iterative retraining "
               "for small graph-classification datasets"};
  app.require_subcommand(1);

  DataArgs data;
  bool as_json = false;

  auto* stats = app.add_subcommand("stats", "Print dataset statistics");
  add_data_options(stats, data);
  stats->add_flag("--json", as_json, "Machine-readable output");

  mevolve::EvolveConfig cfg;
  std::string mapping_arg = mevolve::mapping_name(cfg.augment.mapping);
  std::string classifier_arg = mevolve::classifier_kind_name(cfg.model.classifier);
  std::string split_arg = "0.7,0.1,0.2";
  std::string out_path = "pool.txt";
  std::string report_path;
  std::string model_out;
  std::uint64_t seed = 42;
  unsigned workers = 1;

  auto* augment = app.add_subcommand("augment", "Write an augmented pool for a dataset");
  add_data_options(augment, data);
  add_augment_options(augment, cfg.augment, mapping_arg);
  augment->add_option("--seed", seed, "Master seed")->default_val(seed);
  augment->add_option("--out", out_path, "Pool output file")->default_val(out_path);
  augment->add_option("--workers", workers, "Worker threads")->default_val(workers);

  auto* train = app.add_subcommand("train", "Train and evaluate a baseline classifier");
  add_data_options(train, data);
  add_model_options(train, cfg.model, classifier_arg);
  train->add_option("--split", split_arg, "train,val,test fractions")->default_val(split_arg);
  train->add_option("--seed", seed, "Master seed")->default_val(seed);
  train->add_option("--model-out", model_out, "Save the fitted model here");
  train->add_option("--workers", workers, "Worker threads")->default_val(workers);

  auto* evolve = app.add_subcommand("evolve", "Run the full evolve loop with trials");
  add_data_options(evolve, data);
  add_augment_options(evolve, cfg.augment, mapping_arg);
  add_model_options(evolve, cfg.model, classifier_arg);
  evolve->add_option("--iterations", cfg.iterations, "Evolve iterations T")
      ->default_val(cfg.iterations);
  evolve->add_option("--trials", cfg.trials, "Independent seeded trials")
      ->default_val(cfg.trials);
  evolve->add_option("--split", split_arg, "train,val,test fractions")->default_val(split_arg);
  evolve->add_option("--seed", seed, "Master seed")->default_val(seed);
  evolve->add_option("--report", report_path, "Write the full line-oriented report here");
  evolve->add_option("--audit-dir", cfg.audit_csv_dir,
                     "Write per-iteration reliability CSVs under this directory");
  evolve->add_flag("--augment-original-only", cfg.augment_original_only,
                   "Draw every pool from the original training set");
  evolve->add_option("--workers", workers, "Worker threads")->default_val(workers);
  evolve->add_flag("--json", as_json, "Machine-readable aggregate output");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.augment.mapping = mevolve::mapping_from_name(mapping_arg);
    cfg.model.classifier = mevolve::classifier_kind_from_name(classifier_arg);
    if (!parse_split(split_arg, cfg.split)) {
      std::cerr << "error: --split expects three comma-separated fractions\n";
      return 2;
    }
    cfg.rng_seed = seed;
    cfg.augment.rng_seed = seed;
    cfg.workers = workers;
    std::cerr << "seed: " << seed << "\n";

    if (stats->parsed()) return cmd_stats(data, as_json);
    if (augment->parsed()) return cmd_augment(data, cfg.augment, seed, out_path, workers);
    if (train->parsed()) return cmd_train(data, cfg.model, cfg.split, seed, model_out, workers);
    if (evolve->parsed()) return cmd_evolve(data, cfg, report_path, as_json);
  } catch (const mevolve::ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
