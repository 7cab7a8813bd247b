#include "mevolve/tu_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "mevolve/errors.hpp"

namespace mevolve {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

long long parse_integer(const std::string& token, const std::string& file, std::size_t line) {
  const std::string t = trim(token);
  if (t.empty()) throw ParseError(file, line, "expected an integer, found nothing");
  char* end = nullptr;
  const long long value = std::strtoll(t.c_str(), &end, 10);
  if (end == t.c_str() || *end != '\0') {
    throw ParseError(file, line, "non-integer token '" + t + "'");
  }
  return value;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "file not found or unreadable");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TuLoadResult load_tu_dataset(const std::filesystem::path& dir, const std::string& name) {
  const std::filesystem::path adjacency_path = dir / (name + "_A.txt");
  const std::filesystem::path indicator_path = dir / (name + "_graph_indicator.txt");
  const std::filesystem::path labels_path = dir / (name + "_graph_labels.txt");

  TuLoadResult result;

  // Per-graph labels, remapped to dense 0-based classes by ascending value.
  std::vector<long long> raw_labels;
  {
    const auto lines = read_lines(labels_path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (trim(lines[i]).empty()) continue;
      raw_labels.push_back(parse_integer(lines[i], labels_path.string(), i + 1));
    }
  }
  const std::size_t graph_count = raw_labels.size();
  if (graph_count == 0) throw ParseError(labels_path.string(), 0, "no graph labels");

  std::map<long long, int> label_map;
  for (long long v : raw_labels) label_map.emplace(v, 0);
  {
    int next = 0;
    for (auto& [value, index] : label_map) index = next++;
  }

  // Vertex -> graph membership; vertices are renumbered 0-based per graph in
  // ascending global order.
  std::vector<std::size_t> vertex_graph;   // global vertex (0-based) -> graph (0-based)
  std::vector<std::uint32_t> local_index;  // global vertex -> index within its graph
  std::vector<std::size_t> graph_sizes(graph_count, 0);
  {
    const auto lines = read_lines(indicator_path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const std::string t = trim(lines[i]);
      if (t.empty()) continue;
      const long long gid = parse_integer(t, indicator_path.string(), i + 1);
      if (gid < 1 || static_cast<std::size_t>(gid) > graph_count) {
        throw ParseError(indicator_path.string(), i + 1,
                         "graph id " + std::to_string(gid) + " outside [1, " +
                             std::to_string(graph_count) + "]");
      }
      const auto graph = static_cast<std::size_t>(gid - 1);
      vertex_graph.push_back(graph);
      local_index.push_back(static_cast<std::uint32_t>(graph_sizes[graph]++));
    }
  }
  for (std::size_t g = 0; g < graph_count; ++g) {
    if (graph_sizes[g] == 0) {
      throw ParseError(indicator_path.string(), 0,
                       "graph " + std::to_string(g + 1) + " has no vertices");
    }
  }

  // Adjacency lines; reciprocal duplicates collapse, self-loops are dropped.
  std::vector<std::vector<VertexPair>> graph_edges(graph_count);
  std::vector<std::unordered_set<std::uint64_t>> seen(graph_count);
  std::size_t self_loops = 0;
  std::size_t first_self_loop_line = 0;
  {
    const auto lines = read_lines(adjacency_path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const std::string t = trim(lines[i]);
      if (t.empty()) continue;
      const auto comma = t.find(',');
      if (comma == std::string::npos) {
        throw ParseError(adjacency_path.string(), i + 1,
                         "expected 'u, v' edge line, got '" + t + "'");
      }
      const long long u = parse_integer(t.substr(0, comma), adjacency_path.string(), i + 1);
      const long long v = parse_integer(t.substr(comma + 1), adjacency_path.string(), i + 1);
      for (long long vertex : {u, v}) {
        if (vertex < 1 || static_cast<std::size_t>(vertex) > vertex_graph.size()) {
          throw ParseError(adjacency_path.string(), i + 1,
                           "vertex " + std::to_string(vertex) + " outside [1, " +
                               std::to_string(vertex_graph.size()) + "]");
        }
      }
      const std::size_t gu = vertex_graph[static_cast<std::size_t>(u - 1)];
      const std::size_t gv = vertex_graph[static_cast<std::size_t>(v - 1)];
      if (gu != gv) {
        throw ParseError(adjacency_path.string(), i + 1,
                         "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                             ") joins vertices of different graphs");
      }
      if (u == v) {
        if (self_loops++ == 0) first_self_loop_line = i + 1;
        continue;
      }
      const VertexPair edge(local_index[static_cast<std::size_t>(u - 1)],
                            local_index[static_cast<std::size_t>(v - 1)]);
      if (seen[gu].insert(edge.key()).second) graph_edges[gu].push_back(edge);
    }
  }
  if (self_loops > 0) {
    result.warnings.push_back("dropped " + std::to_string(self_loops) +
                              " self-loop line(s) in " + adjacency_path.filename().string() +
                              " (first at line " + std::to_string(first_self_loop_line) + ")");
  }

  for (const char* suffix :
       {"_node_labels.txt", "_edge_labels.txt", "_node_attributes.txt", "_edge_attributes.txt",
        "_graph_attributes.txt"}) {
    const auto companion = dir / (name + suffix);
    if (std::filesystem::exists(companion)) {
      result.warnings.push_back("ignoring attribute file " + companion.filename().string() +
                                " (topology-only loader)");
    }
  }

  result.dataset.class_count = static_cast<int>(label_map.size());
  result.dataset.label_values.reserve(label_map.size());
  for (const auto& [value, index] : label_map) result.dataset.label_values.push_back(value);
  for (std::size_t g = 0; g < graph_count; ++g) {
    result.dataset.graphs.emplace_back(graph_sizes[g], graph_edges[g]);
    result.dataset.labels.push_back(label_map.at(raw_labels[g]));
    result.dataset.provenance.push_back(Provenance::original());
  }
  return result;
}

namespace {

constexpr const char* kPoolMagic = "mevolve-pool 1";

}  // namespace

void save_pool(const LabeledDataset& pool, std::ostream& out) {
  out << kPoolMagic << "\n";
  out << "classes " << pool.class_count << "\n";
  out << "count " << pool.size() << "\n";
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const Graph& g = pool.graphs[i];
    out << "graph " << i << " vertices " << g.vertex_count() << " edges " << g.edge_count()
        << " label " << pool.labels[i] << " provenance ";
    const Provenance& p = pool.provenance[i];
    if (p.kind == ProvenanceKind::Original) {
      out << "original";
    } else {
      out << "augmented " << p.source_index << " " << p.iteration;
    }
    out << "\n";
    for (const VertexPair& e : g.edges()) {
      out << "edge " << e.a << " " << e.b << "\n";
    }
  }
}

void save_pool(const LabeledDataset& pool, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_pool: cannot open " + path.string());
  save_pool(pool, out);
}

LabeledDataset load_pool(std::istream& in, const std::string& stream_name) {
  std::size_t line_no = 0;
  std::string line;
  auto next_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++line_no;
      const std::string t = trim(line);
      if (!t.empty()) return t;
    }
    throw ParseError(stream_name, line_no, "unexpected end of file");
  };

  if (next_line() != kPoolMagic) {
    throw ParseError(stream_name, line_no,
                     "bad header (expected '" + std::string(kPoolMagic) + "')");
  }

  auto expect_tag = [&](std::istringstream& ss, const char* tag) {
    std::string token;
    if (!(ss >> token) || token != tag) {
      throw ParseError(stream_name, line_no, "expected '" + std::string(tag) + "' field");
    }
  };

  LabeledDataset pool;
  {
    std::istringstream ss(next_line());
    expect_tag(ss, "classes");
    if (!(ss >> pool.class_count) || pool.class_count < 0) {
      throw ParseError(stream_name, line_no, "bad class count");
    }
  }
  std::size_t count = 0;
  {
    std::istringstream ss(next_line());
    expect_tag(ss, "count");
    if (!(ss >> count)) throw ParseError(stream_name, line_no, "bad graph count");
  }

  for (std::size_t i = 0; i < count; ++i) {
    std::istringstream ss(next_line());
    expect_tag(ss, "graph");
    std::size_t index = 0, vertices = 0, edges = 0;
    int label = 0;
    std::string tag, kind;
    if (!(ss >> index)) throw ParseError(stream_name, line_no, "bad graph index");
    if (index != i) {
      throw ParseError(stream_name, line_no,
                       "graph index " + std::to_string(index) + " out of order (expected " +
                           std::to_string(i) + ")");
    }
    expect_tag(ss, "vertices");
    if (!(ss >> vertices)) throw ParseError(stream_name, line_no, "bad vertex count");
    expect_tag(ss, "edges");
    if (!(ss >> edges)) throw ParseError(stream_name, line_no, "bad edge count");
    expect_tag(ss, "label");
    if (!(ss >> label) || label < 0 || label >= pool.class_count) {
      throw ParseError(stream_name, line_no, "label outside [0, classes)");
    }
    expect_tag(ss, "provenance");
    if (!(ss >> kind)) throw ParseError(stream_name, line_no, "missing provenance");
    Provenance provenance;
    if (kind == "original") {
      provenance = Provenance::original();
    } else if (kind == "augmented") {
      std::int64_t source = 0, iteration = 0;
      if (!(ss >> source >> iteration)) {
        throw ParseError(stream_name, line_no, "augmented provenance needs source and iteration");
      }
      provenance = Provenance::augmented(source, iteration);
    } else {
      throw ParseError(stream_name, line_no, "unknown provenance '" + kind + "'");
    }

    std::vector<VertexPair> edge_list;
    edge_list.reserve(edges);
    for (std::size_t e = 0; e < edges; ++e) {
      std::istringstream es(next_line());
      expect_tag(es, "edge");
      std::uint32_t a = 0, b = 0;
      if (!(es >> a >> b)) throw ParseError(stream_name, line_no, "bad edge endpoints");
      edge_list.emplace_back(a, b);
    }
    try {
      pool.graphs.emplace_back(vertices, edge_list);
    } catch (const std::invalid_argument& err) {
      throw ParseError(stream_name, line_no, err.what());
    }
    pool.labels.push_back(label);
    pool.provenance.push_back(provenance);
  }
  return pool;
}

LabeledDataset load_pool(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "file not found or unreadable");
  return load_pool(in, path.string());
}

}  // namespace mevolve
