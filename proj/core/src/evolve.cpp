#include "mevolve/evolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "mevolve/errors.hpp"
#include "mevolve/spectral.hpp"

namespace mevolve {

void SplitFractions::validate() const {
  if (!(train > 0.0) || !(val > 0.0) || !(test > 0.0)) {
    throw std::invalid_argument("split fractions must all be positive");
  }
  if (std::abs(train + val + test - 1.0) > 1e-9) {
    throw std::invalid_argument("split fractions must sum to 1");
  }
}

void EvolveConfig::validate() const {
  augment.validate();
  split.validate();
  if (iterations < 1) throw std::invalid_argument("EvolveConfig: iterations must be >= 1");
  if (trials < 1) throw std::invalid_argument("EvolveConfig: trials must be >= 1");
  if (model.embedding_dim < 1) throw std::invalid_argument("EvolveConfig: embedding_dim >= 1");
}

namespace {

void shuffle_indices(std::vector<std::size_t>& indices, Rng& rng) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    std::swap(indices[i - 1], indices[j]);
  }
}

// Largest-remainder allocation of n items over the three fractions, then a
// floor of one item per split (taking from the largest bucket).
std::array<std::size_t, 3> allocate_counts(std::size_t n, const SplitFractions& fractions) {
  const double quota[3] = {fractions.train * static_cast<double>(n),
                           fractions.val * static_cast<double>(n),
                           fractions.test * static_cast<double>(n)};
  std::array<std::size_t, 3> counts{};
  double remainder[3];
  std::size_t assigned = 0;
  for (int s = 0; s < 3; ++s) {
    counts[s] = static_cast<std::size_t>(std::floor(quota[s] + 1e-12));
    remainder[s] = quota[s] - static_cast<double>(counts[s]);
    assigned += counts[s];
  }
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (remainder[x] != remainder[y]) return remainder[x] > remainder[y];
    return x < y;
  });
  for (std::size_t leftover = n - assigned, t = 0; t < leftover; ++t) {
    ++counts[static_cast<std::size_t>(order[t % 3])];
  }
  for (int s = 0; s < 3; ++s) {
    while (counts[s] == 0) {
      const auto biggest = static_cast<std::size_t>(
          std::max_element(counts.begin(), counts.end()) - counts.begin());
      --counts[biggest];
      ++counts[static_cast<std::size_t>(s)];
    }
  }
  return counts;
}

}  // namespace

Split stratified_split(const LabeledDataset& dataset, SplitFractions fractions, Rng& rng) {
  fractions.validate();
  if (dataset.empty()) throw SplitError("stratified_split: empty dataset");
  std::vector<std::vector<std::size_t>> by_class(
      static_cast<std::size_t>(std::max(dataset.class_count, 1)));
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const int y = dataset.labels[i];
    if (y < 0 || y >= dataset.class_count) {
      throw SplitError("stratified_split: label outside [0, class_count)");
    }
    by_class[static_cast<std::size_t>(y)].push_back(i);
  }
  Split split;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.size() < 3) {
      throw SplitError("stratified_split: class " + std::to_string(c) + " has only " +
                       std::to_string(members.size()) + " examples; need at least 3");
    }
    shuffle_indices(members, rng);
    const auto counts = allocate_counts(members.size(), fractions);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < counts[0]; ++i) split.train.push_back(members[offset++]);
    for (std::size_t i = 0; i < counts[1]; ++i) split.val.push_back(members[offset++]);
    for (std::size_t i = 0; i < counts[2]; ++i) split.test.push_back(members[offset++]);
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

double rimp(double acc_en, double acc_ori) {
  if (acc_ori == 0.0) throw std::domain_error("rimp: undefined for zero original accuracy");
  return (acc_en - acc_ori) / acc_ori;
}

MEvolveResult m_evolve(const LabeledDataset& dataset, const Split& split,
                       const EvolveConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const int classes = dataset.class_count;
  const std::size_t dim = cfg.model.embedding_dim;

  const auto factory = cfg.classifier_factory
                           ? cfg.classifier_factory
                           : std::function<std::unique_ptr<Classifier>()>(
                                 [&cfg] { return make_classifier(cfg.model); });
  const auto augment = cfg.augment_fn
                           ? cfg.augment_fn
                           : std::function<AugmentResult(const LabeledDataset&,
                                                         const AugmentConfig&, std::uint64_t,
                                                         std::int64_t, unsigned)>(
                                 [](const LabeledDataset& d, const AugmentConfig& acfg,
                                    std::uint64_t s, std::int64_t iter, unsigned workers) {
                                   return augment_dataset(d, acfg, s, iter, workers);
                                 });

  LabeledDataset train = dataset.subset(split.train);
  const LabeledDataset val = dataset.subset(split.val);
  const LabeledDataset test = dataset.subset(split.test);
  FeatureMatrix train_x = embed_dataset(train, dim, cfg.workers);
  const FeatureMatrix val_x = embed_dataset(val, dim, cfg.workers);
  const FeatureMatrix test_x = embed_dataset(test, dim, cfg.workers);

  MEvolveResult result;
  result.report.initial_train_size = train.size();

  std::unique_ptr<Classifier> model = factory();
  model->fit(train_x, train.labels, classes);
  result.report.baseline_val_accuracy = accuracy(*model, val_x, val.labels);
  result.report.test_accuracy_original = accuracy(*model, test_x, test.labels);

  const LabeledDataset original_train = cfg.augment_original_only ? train : LabeledDataset{};

  for (std::size_t t = 1; t <= cfg.iterations; ++t) {
    const LabeledDataset& source = cfg.augment_original_only ? original_train : train;
    const AugmentResult aug =
        augment(source, cfg.augment, derive_seed(seed, 0x100 + t),
                static_cast<std::int64_t>(t), cfg.workers);

    // Confusion matrix and threshold from the current classifier on D_val.
    std::vector<std::pair<std::vector<double>, int>> val_preds;
    val_preds.reserve(val.size());
    for (std::size_t i = 0; i < val.size(); ++i) {
      val_preds.emplace_back(model->predict_proba(val_x[i]), val.labels[i]);
    }
    const ConfusionMatrix q = confusion_matrix(val_preds, classes);
    std::vector<ReliabilityRecord> records;
    records.reserve(val.size());
    for (std::size_t i = 0; i < val.size(); ++i) {
      const auto& p = val_preds[i].first;
      const int predicted =
          static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
      records.push_back({label_reliability(p, val.labels[i], q), predicted == val.labels[i]});
    }
    const ReliabilityThreshold threshold = optimize_threshold(records);

    const FiltrationSplit filtered = filter_pool(
        aug.pool,
        [&](const Graph& g) { return model->predict_proba(spectral_embed(g, dim)); }, q,
        threshold.theta);

    if (!cfg.audit_csv_dir.empty()) {
      std::filesystem::create_directories(cfg.audit_csv_dir);
      std::ofstream csv(std::filesystem::path(cfg.audit_csv_dir) /
                        ("reliability_iter" + std::to_string(t) + ".csv"));
      write_reliability_csv(csv, filtered.reliability, filtered.accepted_mask);
    }

    const FeatureMatrix accepted_x = embed_dataset(filtered.accepted, dim, cfg.workers);
    for (std::size_t i = 0; i < filtered.accepted.size(); ++i) {
      train.add(filtered.accepted.graphs[i], filtered.accepted.labels[i],
                filtered.accepted.provenance[i]);
      train_x.push_back(accepted_x[i]);
    }

    model = factory();  // retrain from scratch on the grown set
    model->fit(train_x, train.labels, classes);

    IterationRecord record;
    record.pool_size = aug.pool.size();
    record.accepted = filtered.accepted.size();
    record.rejected = filtered.rejected.size();
    record.skipped_sources = aug.skipped.size();
    record.theta = threshold.theta;
    record.val_accuracy = accuracy(*model, val_x, val.labels);
    record.train_size_after = train.size();
    result.report.iterations.push_back(record);
  }

  result.report.final_train_size = train.size();
  result.report.test_accuracy_evolved = accuracy(*model, test_x, test.labels);
  result.report.rimp_value =
      result.report.test_accuracy_original > 0.0
          ? rimp(result.report.test_accuracy_evolved, result.report.test_accuracy_original)
          : std::numeric_limits<double>::quiet_NaN();
  result.classifier = std::move(model);
  result.final_train = std::move(train);
  return result;
}

MEvolveResult m_evolve(const LabeledDataset& dataset, const EvolveConfig& cfg) {
  Rng split_rng(derive_seed(cfg.rng_seed, 0xD5));
  const Split split = stratified_split(dataset, cfg.split, split_rng);
  return m_evolve(dataset, split, cfg, cfg.rng_seed);
}

ExperimentReport run_experiment(const LabeledDataset& dataset, const EvolveConfig& cfg) {
  cfg.validate();
  ExperimentReport report;
  std::vector<double> originals, evolveds, rimps;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    TrialRecord record;
    record.seed = derive_seed(cfg.rng_seed, 0x1000 + trial);
    try {
      Rng split_rng(derive_seed(record.seed, 1));
      const Split split = stratified_split(dataset, cfg.split, split_rng);
      EvolveConfig trial_cfg = cfg;
      if (!cfg.audit_csv_dir.empty()) {
        trial_cfg.audit_csv_dir = cfg.audit_csv_dir + "/trial" + std::to_string(trial);
      }
      MEvolveResult result = m_evolve(dataset, split, trial_cfg, record.seed);
      record.report = std::move(result.report);
      originals.push_back(record.report.test_accuracy_original);
      evolveds.push_back(record.report.test_accuracy_evolved);
      // RIMP is undefined (NaN) when a trial's original accuracy is zero;
      // such trials stay in the accuracy means but not in the RIMP mean.
      if (!std::isnan(record.report.rimp_value)) {
        rimps.push_back(record.report.rimp_value);
      }
    } catch (const std::exception& err) {
      record.failed = true;
      record.error = err.what();
    }
    report.trials.push_back(std::move(record));
  }
  report.trials_ok = originals.size();
  auto mean = [](const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
  };
  auto stddev = [&](const std::vector<double>& xs, double mu) {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
  };
  report.mean_acc_original = mean(originals);
  report.stddev_acc_original = stddev(originals, report.mean_acc_original);
  report.mean_acc_evolved = mean(evolveds);
  report.stddev_acc_evolved = stddev(evolveds, report.mean_acc_evolved);
  report.mean_rimp = mean(rimps);
  return report;
}

namespace {

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

void write_report(std::ostream& out, const ExperimentReport& report, const EvolveConfig& cfg) {
  out << "mevolve-report 1\n";
  out << "config mapping=" << mapping_name(cfg.augment.mapping) << " beta=" << fmt(cfg.augment.beta)
      << " motif_length=" << cfg.augment.motif_length
      << " preserve_connectivity=" << (cfg.augment.preserve_connectivity ? 1 : 0)
      << " preserve_edge_count=" << (cfg.augment.preserve_edge_count ? 1 : 0)
      << " max_resample_attempts=" << cfg.augment.max_resample_attempts
      << " classifier=" << classifier_kind_name(cfg.model.classifier)
      << " embedding_dim=" << cfg.model.embedding_dim << " knn_k=" << cfg.model.knn_k
      << " iterations=" << cfg.iterations << " trials=" << cfg.trials
      << " split=" << fmt(cfg.split.train) << ',' << fmt(cfg.split.val) << ','
      << fmt(cfg.split.test) << " seed=" << cfg.rng_seed
      << " augment_original_only=" << (cfg.augment_original_only ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const TrialRecord& trial = report.trials[i];
    if (trial.failed) {
      out << "trial index=" << i << " seed=" << trial.seed << " status=failed error="
          << trial.error << "\n";
      continue;
    }
    const EvolveReport& r = trial.report;
    out << "trial index=" << i << " seed=" << trial.seed
        << " status=ok acc_original=" << fmt(r.test_accuracy_original)
        << " acc_evolved=" << fmt(r.test_accuracy_evolved) << " rimp=" << fmt(r.rimp_value)
        << " baseline_val_acc=" << fmt(r.baseline_val_accuracy)
        << " initial_train=" << r.initial_train_size << " final_train=" << r.final_train_size
        << "\n";
    for (std::size_t t = 0; t < r.iterations.size(); ++t) {
      const IterationRecord& it = r.iterations[t];
      out << "iter trial=" << i << " index=" << (t + 1) << " pool=" << it.pool_size
          << " accepted=" << it.accepted << " rejected=" << it.rejected
          << " skipped=" << it.skipped_sources << " theta=" << fmt(it.theta)
          << " val_acc=" << fmt(it.val_accuracy) << " train_size=" << it.train_size_after
          << "\n";
    }
  }
  out << "aggregate trials_ok=" << report.trials_ok
      << " mean_acc_original=" << fmt(report.mean_acc_original)
      << " stddev_acc_original=" << fmt(report.stddev_acc_original)
      << " mean_acc_evolved=" << fmt(report.mean_acc_evolved)
      << " stddev_acc_evolved=" << fmt(report.stddev_acc_evolved)
      << " mean_rimp=" << fmt(report.mean_rimp) << "\n";
}

}  // namespace mevolve
