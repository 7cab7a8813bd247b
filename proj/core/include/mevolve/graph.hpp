#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mevolve {

/// Unordered vertex pair, normalized so that a < b.
struct VertexPair {
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  VertexPair() = default;
  VertexPair(std::uint32_t u, std::uint32_t v) : a(u < v ? u : v), b(u < v ? v : u) {}

  std::uint64_t key() const { return (static_cast<std::uint64_t>(a) << 32) | b; }

  friend bool operator==(const VertexPair&, const VertexPair&) = default;
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

/// Simple path as an ordered vertex sequence; edge t joins vertices[t] and
/// vertices[t+1]. Internal vertices are distinct from each other and from the
/// endpoints.
struct Path {
  std::vector<std::uint32_t> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  std::uint32_t head() const { return vertices.front(); }
  std::uint32_t tail() const { return vertices.back(); }
  std::vector<VertexPair> edge_sequence() const;
};

/// Immutable undirected unweighted graph over dense 0-based vertex indices.
/// No self-loops, no parallel edges. Construction from an edge list is
/// order-insensitive (duplicates and reversed duplicates collapse). All
/// queries are pure, so a Graph can be shared across threads freely.
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on self-loops or out-of-range endpoints.
  Graph(std::size_t vertex_count, const std::vector<VertexPair>& edge_list);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edges sorted ascending by (a, b).
  const std::vector<VertexPair>& edges() const { return edges_; }

  /// One-hop neighbors of v, sorted ascending. Throws std::out_of_range.
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const;

  std::size_t degree(std::uint32_t v) const { return neighbors(v).size(); }

  bool has_edge(std::uint32_t i, std::uint32_t j) const;

  /// Resource-allocation similarity: sum of 1/degree(z) over common neighbors
  /// z of i and j. Symmetric; 0 when there is no common neighbor.
  /// Throws std::invalid_argument when i == j, std::out_of_range when invalid.
  double ra_score(std::uint32_t i, std::uint32_t j) const;

  /// All simple paths with exactly `length` edges from i to j, in ascending
  /// lexicographic order of their vertex sequences. Empty when none exist.
  /// Requires i != j and length >= 2.
  std::vector<Path> find_paths(std::uint32_t i, std::uint32_t j, std::size_t length) const;

  /// True iff find_paths(i, j, length) would be non-empty; stops at the first
  /// path instead of materializing all of them.
  bool has_length_l_path(std::uint32_t i, std::uint32_t j, std::size_t length) const;

  bool is_connected() const;
  std::size_t component_count() const;

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.adjacency_.size() == y.adjacency_.size() && x.edges_ == y.edges_;
  }

 private:
  void check_vertex(std::uint32_t v) const;

  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::vector<VertexPair> edges_;
};

}  // namespace mevolve
