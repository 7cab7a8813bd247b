#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "mevolve/dataset.hpp"

namespace mevolve {

bool is_probability_vector(const std::vector<double>& p, double tol = 1e-9);

/// Per-class mean prediction vectors from a validation set: rows[k] is the
/// average probability distribution assigned to true-class-k examples, and
/// class_counts[k] how many of them there were.
struct ConfusionMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> class_counts;
};

/// Throws std::invalid_argument naming any class with no validation example
/// (its row would be undefined).
ConfusionMatrix confusion_matrix(const std::vector<std::pair<std::vector<double>, int>>& preds,
                                 int class_count);

/// Dot product of the example's prediction vector with its label's confusion
/// row; always in [0,1] for valid distributions.
double label_reliability(const std::vector<double>& p, int label, const ConfusionMatrix& q);

struct ReliabilityRecord {
  double reliability = 0.0;
  bool correct = false;  // argmax prediction equals the true label
};

/// Count of validation examples whose correctness disagrees with their side of
/// theta: correct examples strictly below it plus incorrect ones strictly
/// above it. The boundary reliability == theta contributes nothing.
std::size_t threshold_objective(double theta, const std::vector<ReliabilityRecord>& records);

struct ReliabilityThreshold {
  double theta = 0.0;
  std::size_t objective_value = 0;
};

/// Minimizes threshold_objective over {0} ∪ {r_i} ∪ {r_i + eps}; the objective
/// is a step function of theta, so these candidates suffice. Ties resolve to
/// the smallest theta.
ReliabilityThreshold optimize_threshold(const std::vector<ReliabilityRecord>& records);

struct FiltrationSplit {
  LabeledDataset accepted;
  LabeledDataset rejected;
  std::vector<double> reliability;  // per pool row, in pool order
  std::vector<char> accepted_mask;
};

/// Partitions the pool by strict reliability > theta. `predict` maps a graph
/// to its probability vector under the current classifier.
FiltrationSplit filter_pool(const LabeledDataset& pool,
                            const std::function<std::vector<double>(const Graph&)>& predict,
                            const ConfusionMatrix& q, double theta);

/// Audit CSV: header "graph_id,reliability,accepted", one row per pool entry.
void write_reliability_csv(std::ostream& out, const std::vector<double>& reliability,
                           const std::vector<char>& accepted_mask);

}  // namespace mevolve
