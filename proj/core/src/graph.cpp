#include "mevolve/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mevolve {

std::vector<VertexPair> Path::edge_sequence() const {
  std::vector<VertexPair> seq;
  if (vertices.size() < 2) return seq;
  seq.reserve(vertices.size() - 1);
  for (std::size_t t = 0; t + 1 < vertices.size(); ++t) {
    seq.emplace_back(vertices[t], vertices[t + 1]);
  }
  return seq;
}

Graph::Graph(std::size_t vertex_count, const std::vector<VertexPair>& edge_list) {
  adjacency_.resize(vertex_count);
  std::vector<VertexPair> sorted = edge_list;
  for (const VertexPair& e : sorted) {
    if (e.a == e.b) {
      throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(e.a));
    }
    if (e.b >= vertex_count) {
      throw std::invalid_argument("Graph: endpoint " + std::to_string(e.b) +
                                  " out of range for " + std::to_string(vertex_count) +
                                  " vertices");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  edges_ = std::move(sorted);
  for (const VertexPair& e : edges_) {
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

void Graph::check_vertex(std::uint32_t v) const {
  if (v >= adjacency_.size()) {
    throw std::out_of_range("Graph: vertex " + std::to_string(v) + " out of range (n=" +
                            std::to_string(adjacency_.size()) + ")");
  }
}

const std::vector<std::uint32_t>& Graph::neighbors(std::uint32_t v) const {
  check_vertex(v);
  return adjacency_[v];
}

bool Graph::has_edge(std::uint32_t i, std::uint32_t j) const {
  check_vertex(i);
  check_vertex(j);
  if (i == j) return false;
  const auto& nbrs = adjacency_[i];
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

double Graph::ra_score(std::uint32_t i, std::uint32_t j) const {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw std::invalid_argument("ra_score: i and j must differ");
  const auto& ni = adjacency_[i];
  const auto& nj = adjacency_[j];
  double score = 0.0;
  auto it = ni.begin();
  auto jt = nj.begin();
  while (it != ni.end() && jt != nj.end()) {
    if (*it < *jt) {
      ++it;
    } else if (*jt < *it) {
      ++jt;
    } else {
      score += 1.0 / static_cast<double>(adjacency_[*it].size());
      ++it;
      ++jt;
    }
  }
  return score;
}

namespace {

// Shared DFS over simple paths of an exact edge count. The target never
// appears as an internal vertex. Neighbor lists are sorted, so paths come out
// in ascending lexicographic order of their vertex sequences.
bool path_dfs(const Graph& g, std::uint32_t current, std::uint32_t target,
              std::size_t remaining, std::vector<std::uint32_t>& stack,
              std::vector<char>& visited, std::vector<Path>* out) {
  for (std::uint32_t w : g.neighbors(current)) {
    if (w == target) {
      if (remaining == 1) {
        if (out) {
          stack.push_back(w);
          out->push_back(Path{stack});
          stack.pop_back();
        } else {
          return true;
        }
      }
      continue;
    }
    if (remaining == 1 || visited[w]) continue;
    visited[w] = 1;
    stack.push_back(w);
    const bool found = path_dfs(g, w, target, remaining - 1, stack, visited, out);
    stack.pop_back();
    visited[w] = 0;
    if (found && !out) return true;
  }
  return false;
}

}  // namespace

std::vector<Path> Graph::find_paths(std::uint32_t i, std::uint32_t j, std::size_t length) const {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw std::invalid_argument("find_paths: i and j must differ");
  if (length < 2) throw std::invalid_argument("find_paths: length must be >= 2");
  std::vector<Path> paths;
  std::vector<std::uint32_t> stack{i};
  std::vector<char> visited(vertex_count(), 0);
  visited[i] = 1;
  path_dfs(*this, i, j, length, stack, visited, &paths);
  return paths;
}

bool Graph::has_length_l_path(std::uint32_t i, std::uint32_t j, std::size_t length) const {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw std::invalid_argument("has_length_l_path: i and j must differ");
  if (length < 2) throw std::invalid_argument("has_length_l_path: length must be >= 2");
  std::vector<std::uint32_t> stack{i};
  std::vector<char> visited(vertex_count(), 0);
  visited[i] = 1;
  return path_dfs(*this, i, j, length, stack, visited, nullptr);
}

std::size_t Graph::component_count() const {
  const std::size_t n = vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> queue;
  std::size_t components = 0;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++components;
    seen[start] = 1;
    queue.assign(1, start);
    while (!queue.empty()) {
      const std::uint32_t v = queue.back();
      queue.pop_back();
      for (std::uint32_t w : adjacency_[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  return components;
}

bool Graph::is_connected() const { return vertex_count() <= 1 || component_count() == 1; }

}  // namespace mevolve
