#include "mevolve/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace mevolve {

bool is_probability_vector(const std::vector<double>& p, double tol) {
  if (p.empty()) return false;
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

ConfusionMatrix confusion_matrix(const std::vector<std::pair<std::vector<double>, int>>& preds,
                                 int class_count) {
  if (class_count < 1) throw std::invalid_argument("confusion_matrix: class_count must be >= 1");
  const auto classes = static_cast<std::size_t>(class_count);
  ConfusionMatrix q;
  q.rows.assign(classes, std::vector<double>(classes, 0.0));
  q.class_counts.assign(classes, 0);
  for (const auto& [p, y] : preds) {
    if (y < 0 || y >= class_count) {
      throw std::invalid_argument("confusion_matrix: label outside [0, class_count)");
    }
    if (p.size() != classes) {
      throw std::invalid_argument("confusion_matrix: prediction vector length mismatch");
    }
    auto& row = q.rows[static_cast<std::size_t>(y)];
    for (std::size_t j = 0; j < classes; ++j) row[j] += p[j];
    ++q.class_counts[static_cast<std::size_t>(y)];
  }
  for (std::size_t k = 0; k < classes; ++k) {
    if (q.class_counts[k] == 0) {
      throw std::invalid_argument("confusion_matrix: class " + std::to_string(k) +
                                  " has no validation examples; its row is undefined");
    }
    for (double& v : q.rows[k]) v /= static_cast<double>(q.class_counts[k]);
  }
  return q;
}

double label_reliability(const std::vector<double>& p, int label, const ConfusionMatrix& q) {
  if (label < 0 || static_cast<std::size_t>(label) >= q.rows.size()) {
    throw std::invalid_argument("label_reliability: label outside the confusion matrix");
  }
  const auto& row = q.rows[static_cast<std::size_t>(label)];
  if (p.size() != row.size()) {
    throw std::invalid_argument("label_reliability: dimension mismatch");
  }
  double r = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) r += p[j] * row[j];
  return r;
}

std::size_t threshold_objective(double theta, const std::vector<ReliabilityRecord>& records) {
  std::size_t violations = 0;
  for (const ReliabilityRecord& rec : records) {
    if (rec.correct) {
      if (rec.reliability < theta) ++violations;
    } else {
      if (rec.reliability > theta) ++violations;
    }
  }
  return violations;
}

ReliabilityThreshold optimize_threshold(const std::vector<ReliabilityRecord>& records) {
  if (records.empty()) throw std::invalid_argument("optimize_threshold: empty record set");
  constexpr double kEps = 1e-12;
  std::vector<double> candidates;
  candidates.reserve(records.size() * 2 + 1);
  candidates.push_back(0.0);
  for (const ReliabilityRecord& rec : records) {
    candidates.push_back(rec.reliability);
    candidates.push_back(std::min(rec.reliability + kEps, 1.0));
  }
  std::sort(candidates.begin(), candidates.end());
  ReliabilityThreshold best{candidates.front(), threshold_objective(candidates.front(), records)};
  for (double theta : candidates) {
    const std::size_t value = threshold_objective(theta, records);
    if (value < best.objective_value) best = {theta, value};
  }
  return best;
}

FiltrationSplit filter_pool(const LabeledDataset& pool,
                            const std::function<std::vector<double>(const Graph&)>& predict,
                            const ConfusionMatrix& q, double theta) {
  FiltrationSplit split;
  split.accepted.class_count = pool.class_count;
  split.rejected.class_count = pool.class_count;
  split.accepted.label_values = pool.label_values;
  split.rejected.label_values = pool.label_values;
  split.reliability.reserve(pool.size());
  split.accepted_mask.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const std::vector<double> p = predict(pool.graphs[i]);
    const double r = label_reliability(p, pool.labels[i], q);
    const bool keep = r > theta;
    split.reliability.push_back(r);
    split.accepted_mask.push_back(keep ? 1 : 0);
    auto& side = keep ? split.accepted : split.rejected;
    side.add(pool.graphs[i], pool.labels[i], pool.provenance[i]);
  }
  return split;
}

void write_reliability_csv(std::ostream& out, const std::vector<double>& reliability,
                           const std::vector<char>& accepted_mask) {
  out << "graph_id,reliability,accepted\n";
  for (std::size_t i = 0; i < reliability.size(); ++i) {
    out << i << ',' << reliability[i] << ',' << (accepted_mask[i] ? 1 : 0) << '\n';
  }
}

}  // namespace mevolve
