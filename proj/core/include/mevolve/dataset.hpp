#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mevolve/graph.hpp"

namespace mevolve {

enum class ProvenanceKind { Original, Augmented };

/// Where a graph came from. Augmented graphs carry the index of their source
/// graph (within the dataset they were generated from) and the evolve
/// iteration that produced them.
struct Provenance {
  ProvenanceKind kind = ProvenanceKind::Original;
  std::int64_t source_index = -1;
  std::int64_t iteration = 0;

  static Provenance original() { return {}; }
  static Provenance augmented(std::int64_t source, std::int64_t iter) {
    return {ProvenanceKind::Augmented, source, iter};
  }

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Graphs with dense 0-based class labels and per-graph provenance.
struct LabeledDataset {
  std::vector<Graph> graphs;
  std::vector<int> labels;
  int class_count = 0;
  std::vector<Provenance> provenance;
  /// Original label value per class index, when known (filled by loaders).
  std::vector<long long> label_values;

  std::size_t size() const { return graphs.size(); }
  bool empty() const { return graphs.empty(); }

  void add(Graph g, int label, Provenance p = Provenance::original());

  /// New dataset holding copies of the rows at `indices`, in that order.
  LabeledDataset subset(const std::vector<std::size_t>& indices) const;

  /// Equality over graphs, labels, class count and provenance; label_values
  /// is reporting metadata and does not participate.
  friend bool operator==(const LabeledDataset& x, const LabeledDataset& y) {
    return x.graphs == y.graphs && x.labels == y.labels && x.class_count == y.class_count &&
           x.provenance == y.provenance;
  }
};

struct DatasetStats {
  std::size_t graph_count = 0;
  int class_count = 0;
  double avg_vertices = 0.0;
  double avg_edges = 0.0;
  std::size_t min_vertices = 0;
  std::size_t max_vertices = 0;
  std::size_t min_edges = 0;
  std::size_t max_edges = 0;
  double bias = 0.0;  // proportion of the dominant class
};

/// Throws std::invalid_argument on an empty dataset.
DatasetStats dataset_stats(const LabeledDataset& dataset);

}  // namespace mevolve
