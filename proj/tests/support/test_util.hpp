#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "mevolve/dataset.hpp"
#include "mevolve/generate.hpp"
#include "mevolve/graph.hpp"
#include "mevolve/rng.hpp"

namespace testutil {

inline mevolve::Graph make_graph(std::size_t n,
                                 std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> edges) {
  std::vector<mevolve::VertexPair> list;
  for (const auto& [a, b] : edges) list.emplace_back(a, b);
  return mevolve::Graph(n, list);
}

// Independent RA oracle: direct loop over all vertices.
inline double brute_force_ra(const mevolve::Graph& g, std::uint32_t i, std::uint32_t j) {
  double score = 0.0;
  for (std::uint32_t z = 0; z < g.vertex_count(); ++z) {
    if (z == i || z == j) continue;
    if (g.has_edge(i, z) && g.has_edge(j, z)) score += 1.0 / static_cast<double>(g.degree(z));
  }
  return score;
}

// Independent path oracle: enumerate every internal-vertex tuple directly and
// keep the adjacent, all-distinct ones. O(n^(l-1)); use for small n only.
inline std::vector<std::vector<std::uint32_t>> exhaustive_paths(const mevolve::Graph& g,
                                                                std::uint32_t i, std::uint32_t j,
                                                                std::size_t length) {
  std::vector<std::vector<std::uint32_t>> found;
  const std::size_t n = g.vertex_count();
  const std::size_t internals = length - 1;
  std::vector<std::uint32_t> tuple(internals, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t a = 0; a < internals && ok; ++a) {
      if (tuple[a] == i || tuple[a] == j) ok = false;
      for (std::size_t b = a + 1; b < internals && ok; ++b) {
        if (tuple[a] == tuple[b]) ok = false;
      }
    }
    if (ok) {
      std::vector<std::uint32_t> vertices;
      vertices.push_back(i);
      vertices.insert(vertices.end(), tuple.begin(), tuple.end());
      vertices.push_back(j);
      for (std::size_t t = 0; t + 1 < vertices.size() && ok; ++t) {
        if (!g.has_edge(vertices[t], vertices[t + 1])) ok = false;
      }
      if (ok) found.push_back(vertices);
    }
    std::size_t pos = internals;
    while (pos > 0) {
      if (++tuple[pos - 1] < n) break;
      tuple[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
    if (internals == 0) break;
  }
  if (internals == 0) return found;
  std::sort(found.begin(), found.end());
  return found;
}

inline std::vector<double> random_probability_vector(std::size_t classes, mevolve::Rng& rng) {
  std::vector<double> p(classes, 0.0);
  double total = 0.0;
  for (double& v : p) {
    v = -std::log(1.0 - rng.uniform01() + 1e-12);
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

inline std::filesystem::path fresh_temp_dir(const std::string& tag) {
  static std::uint64_t counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("mevolve_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

// Writes a dataset in the TU multi-file layout (1-based ids, both edge
// directions listed, as the published archives do).
inline void write_tu_files(const std::filesystem::path& dir, const std::string& name,
                           const mevolve::LabeledDataset& dataset,
                           const std::vector<long long>& raw_labels) {
  std::ostringstream adjacency, indicator, labels;
  std::size_t base = 0;
  for (std::size_t g = 0; g < dataset.size(); ++g) {
    const mevolve::Graph& graph = dataset.graphs[g];
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
      indicator << (g + 1) << "\n";
    }
    for (const mevolve::VertexPair& e : graph.edges()) {
      adjacency << (base + e.a + 1) << ", " << (base + e.b + 1) << "\n";
      adjacency << (base + e.b + 1) << ", " << (base + e.a + 1) << "\n";
    }
    labels << raw_labels[g] << "\n";
    base += graph.vertex_count();
  }
  write_file(dir / (name + "_A.txt"), adjacency.str());
  write_file(dir / (name + "_graph_indicator.txt"), indicator.str());
  write_file(dir / (name + "_graph_labels.txt"), labels.str());
}

// Synthetic two-class dataset: sparser vs denser random graphs, learnable from
// spectral features.
inline mevolve::LabeledDataset synthetic_two_class(std::size_t per_class, std::uint64_t seed) {
  mevolve::LabeledDataset dataset;
  dataset.class_count = 2;
  mevolve::Rng rng(seed);
  for (std::size_t i = 0; i < per_class; ++i) {
    const std::size_t n = 10 + rng.uniform_index(12);
    mevolve::Rng g_rng = rng.substream(1000 + i);
    dataset.add(mevolve::erdos_renyi(n, 0.18, g_rng), 0);
  }
  for (std::size_t i = 0; i < per_class; ++i) {
    const std::size_t n = 10 + rng.uniform_index(12);
    mevolve::Rng g_rng = rng.substream(2000 + i);
    dataset.add(mevolve::erdos_renyi(n, 0.42, g_rng), 1);
  }
  return dataset;
}

// Two dense halves joined by sparse cross edges.
inline mevolve::Graph community_graph(std::size_t n, mevolve::Rng& rng) {
  std::vector<mevolve::VertexPair> edges;
  const std::size_t half = n / 2;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double p = ((i < half) == (j < half)) ? 0.55 : 0.06;
      if (rng.uniform01() < p) edges.emplace_back(i, j);
    }
  }
  return mevolve::Graph(n, edges);
}

// ER graph whose expected edge count matches community_graph(n).
inline mevolve::Graph matched_density_er(std::size_t n, mevolve::Rng& rng) {
  const std::size_t half = n / 2;
  const double expected_edges =
      0.55 * static_cast<double>(half * (half - 1)) +
      0.06 * static_cast<double>(half * (n - half));
  const double p = expected_edges / (static_cast<double>(n) * (n - 1) / 2.0);
  return mevolve::erdos_renyi(n, p, rng);
}

// Structure-vs-random task at matched density: a weak-baseline setting where
// the classifier must read the spectrum's shape rather than its scale.
inline mevolve::LabeledDataset synthetic_structure_task(std::size_t per_class,
                                                        std::uint64_t seed) {
  mevolve::LabeledDataset dataset;
  dataset.class_count = 2;
  mevolve::Rng rng(seed);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      const std::size_t n = 12 + 2 * rng.uniform_index(7);
      mevolve::Rng g_rng = rng.substream(static_cast<std::uint64_t>(c + 1) * 1000 + i);
      dataset.add(c == 0 ? community_graph(n, g_rng) : matched_density_er(n, g_rng), c);
    }
  }
  return dataset;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the built CLI binary with the given argument string.
inline CliResult run_cli(const std::string& args) {
  const auto dir = fresh_temp_dir("cli");
  const auto out_path = dir / "out.txt";
  const auto err_path = dir / "err.txt";
  const std::string command = std::string(MEVOLVE_CLI_PATH) + " " + args + " > " +
                              out_path.string() + " 2> " + err_path.string();
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::filesystem::remove_all(dir);
  return result;
}

}  // namespace testutil
