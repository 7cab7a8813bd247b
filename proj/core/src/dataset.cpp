#include "mevolve/dataset.hpp"

#include <algorithm>
#include <stdexcept>

namespace mevolve {

void LabeledDataset::add(Graph g, int label, Provenance p) {
  graphs.push_back(std::move(g));
  labels.push_back(label);
  provenance.push_back(p);
  if (label >= class_count) class_count = label + 1;
}

LabeledDataset LabeledDataset::subset(const std::vector<std::size_t>& indices) const {
  LabeledDataset out;
  out.class_count = class_count;
  out.label_values = label_values;
  out.graphs.reserve(indices.size());
  out.labels.reserve(indices.size());
  out.provenance.reserve(indices.size());
  for (std::size_t idx : indices) {
    if (idx >= size()) throw std::out_of_range("LabeledDataset::subset: index out of range");
    out.graphs.push_back(graphs[idx]);
    out.labels.push_back(labels[idx]);
    out.provenance.push_back(provenance[idx]);
  }
  return out;
}

DatasetStats dataset_stats(const LabeledDataset& dataset) {
  if (dataset.empty()) throw std::invalid_argument("dataset_stats: empty dataset");
  DatasetStats stats;
  stats.graph_count = dataset.size();
  stats.class_count = dataset.class_count;
  stats.min_vertices = stats.max_vertices = dataset.graphs.front().vertex_count();
  stats.min_edges = stats.max_edges = dataset.graphs.front().edge_count();
  double vertex_sum = 0.0;
  double edge_sum = 0.0;
  for (const Graph& g : dataset.graphs) {
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    vertex_sum += static_cast<double>(n);
    edge_sum += static_cast<double>(m);
    stats.min_vertices = std::min(stats.min_vertices, n);
    stats.max_vertices = std::max(stats.max_vertices, n);
    stats.min_edges = std::min(stats.min_edges, m);
    stats.max_edges = std::max(stats.max_edges, m);
  }
  stats.avg_vertices = vertex_sum / static_cast<double>(dataset.size());
  stats.avg_edges = edge_sum / static_cast<double>(dataset.size());

  std::vector<std::size_t> counts(std::max(dataset.class_count, 1), 0);
  for (int y : dataset.labels) {
    if (y < 0 || y >= dataset.class_count) {
      throw std::invalid_argument("dataset_stats: label outside [0, class_count)");
    }
    ++counts[static_cast<std::size_t>(y)];
  }
  const std::size_t dominant = *std::max_element(counts.begin(), counts.end());
  stats.bias = static_cast<double>(dominant) / static_cast<double>(dataset.size());
  return stats;
}

}  // namespace mevolve
