#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mevolve/augment.hpp"
#include "mevolve/classifier.hpp"
#include "mevolve/dataset.hpp"
#include "mevolve/errors.hpp"
#include "mevolve/filtration.hpp"
#include "mevolve/rng.hpp"

namespace mevolve {

struct SplitFractions {
  double train = 0.7;
  double val = 0.1;
  double test = 0.2;

  /// Throws std::invalid_argument unless all positive and summing to 1 (1e-9).
  void validate() const;
};

/// Disjoint index lists into a LabeledDataset, union = everything.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

/// Per-class proportional allocation with largest-remainder rounding, then a
/// floor of one example per class per split. Throws SplitError (naming the
/// class) when a class has fewer than 3 examples. Deterministic under seed.
Split stratified_split(const LabeledDataset& dataset, SplitFractions fractions, Rng& rng);

struct EvolveConfig {
  AugmentConfig augment;
  ModelConfig model;
  std::size_t iterations = 5;  // T
  SplitFractions split;
  std::size_t trials = 10;
  std::uint64_t rng_seed = 42;
  /// Draw every pool from the original training set instead of the grown one
  /// (the loop's literal reading augments the grown set; this flips it).
  bool augment_original_only = false;
  unsigned workers = 1;
  std::string audit_csv_dir;  // when set, per-iteration reliability CSVs land here

  /// Test seams. When empty the real augment_dataset / make_classifier run.
  std::function<AugmentResult(const LabeledDataset&, const AugmentConfig&, std::uint64_t,
                              std::int64_t, unsigned)>
      augment_fn;
  std::function<std::unique_ptr<Classifier>()> classifier_factory;

  void validate() const;
};

struct IterationRecord {
  std::size_t pool_size = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t skipped_sources = 0;  // training graphs the mapping could not augment
  double theta = 0.0;
  double val_accuracy = 0.0;  // after this iteration's retrain
  std::size_t train_size_after = 0;
};

struct EvolveReport {
  std::size_t initial_train_size = 0;
  std::size_t final_train_size = 0;
  double baseline_val_accuracy = 0.0;
  double test_accuracy_original = 0.0;
  double test_accuracy_evolved = 0.0;
  double rimp_value = 0.0;
  std::vector<IterationRecord> iterations;
};

struct MEvolveResult {
  std::unique_ptr<Classifier> classifier;
  EvolveReport report;
  /// The grown training set (originals first, then accepted augmented rows in
  /// iteration order), exposed for provenance audits.
  LabeledDataset final_train;
};

/// The evolve loop against an explicit split: pre-train on the training rows,
/// then `iterations` rounds of augment -> confusion matrix -> reliability
/// threshold -> filter -> merge -> retrain from scratch. Validation and test
/// rows are never touched by augmentation.
MEvolveResult m_evolve(const LabeledDataset& dataset, const Split& split,
                       const EvolveConfig& cfg, std::uint64_t seed);

/// Convenience overload: stratified-splits the dataset under cfg.rng_seed.
MEvolveResult m_evolve(const LabeledDataset& dataset, const EvolveConfig& cfg);

/// Relative improvement rate (acc_en - acc_ori) / acc_ori.
/// Throws std::domain_error when acc_ori is 0.
double rimp(double acc_en, double acc_ori);

struct TrialRecord {
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  EvolveReport report;
};

struct ExperimentReport {
  std::vector<TrialRecord> trials;
  std::size_t trials_ok = 0;
  double mean_acc_original = 0.0;
  double stddev_acc_original = 0.0;
  double mean_acc_evolved = 0.0;
  double stddev_acc_evolved = 0.0;
  double mean_rimp = 0.0;
};

/// cfg.trials independent runs, each with a fresh seeded split, reporting the
/// original and evolved test accuracies and their aggregates. A failed trial
/// is recorded and excluded from the aggregates.
ExperimentReport run_experiment(const LabeledDataset& dataset, const EvolveConfig& cfg);

/// Line-oriented versioned report; see docs/FORMATS.md. Identical experiment
/// results serialize to byte-identical files.
void write_report(std::ostream& out, const ExperimentReport& report, const EvolveConfig& cfg);

}  // namespace mevolve
