#include "mevolve/generate.hpp"

#include <stdexcept>

#include "mevolve/sampling.hpp"

namespace mevolve {

Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p must lie in [0,1]");
  std::vector<VertexPair> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (rng.uniform01() < p) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

Graph barabasi_albert(std::size_t n, std::size_t attach, Rng& rng) {
  if (attach < 1) throw std::invalid_argument("barabasi_albert: attach must be >= 1");
  if (n <= attach) throw std::invalid_argument("barabasi_albert: need n > attach");
  std::vector<VertexPair> edges;
  std::vector<std::size_t> degree(n, 0);
  const std::size_t seed_size = attach + 1;
  for (std::uint32_t i = 0; i < seed_size; ++i) {
    for (std::uint32_t j = i + 1; j < seed_size; ++j) {
      edges.emplace_back(i, j);
      ++degree[i];
      ++degree[j];
    }
  }
  for (std::uint32_t v = static_cast<std::uint32_t>(seed_size); v < n; ++v) {
    std::vector<std::pair<std::uint32_t, double>> table;
    table.reserve(v);
    for (std::uint32_t u = 0; u < v; ++u) {
      table.emplace_back(u, static_cast<double>(degree[u]));
    }
    const auto targets = weighted_sample_without_replacement(std::move(table), attach, rng);
    for (std::uint32_t u : targets) {
      edges.emplace_back(u, v);
      ++degree[u];
      ++degree[v];
    }
  }
  return Graph(n, edges);
}

}  // namespace mevolve
