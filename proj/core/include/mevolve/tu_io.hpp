#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mevolve/dataset.hpp"

namespace mevolve {

struct TuLoadResult {
  LabeledDataset dataset;
  std::vector<std::string> warnings;  // dropped self-loops, ignored attribute files
};

/// Reads the community-standard multi-file text layout: <name>_A.txt
/// (1-indexed "u, v" edge lines), <name>_graph_indicator.txt (vertex ->
/// graph id) and <name>_graph_labels.txt (one label per graph). Vertices are
/// renumbered 0-based per graph, reciprocal/duplicate edge lines collapse to
/// one undirected edge, self-loop lines are dropped with a warning, and label
/// values are remapped to dense 0-based classes in ascending order of the
/// original values (kept in dataset.label_values). Attribute companion files
/// are ignored with a notice. Throws ParseError with file and line on any
/// inconsistency.
TuLoadResult load_tu_dataset(const std::filesystem::path& dir, const std::string& name);

/// Line-oriented pool schema, version 1; see docs/FORMATS.md. Edges are
/// written sorted, so save is canonical and load(save(x)) == x.
void save_pool(const LabeledDataset& pool, std::ostream& out);
void save_pool(const LabeledDataset& pool, const std::filesystem::path& path);

/// Throws ParseError naming the offending line on schema violations.
LabeledDataset load_pool(std::istream& in, const std::string& stream_name = "<pool>");
LabeledDataset load_pool(const std::filesystem::path& path);

}  // namespace mevolve
