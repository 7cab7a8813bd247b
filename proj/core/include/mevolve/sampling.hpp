#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mevolve/graph.hpp"
#include "mevolve/rng.hpp"

namespace mevolve {

enum class WeightKind { Addition, Deletion };

/// Non-negative sampling weights for vertex pairs.
struct WeightTable {
  WeightKind kind = WeightKind::Addition;
  std::vector<std::pair<VertexPair, double>> entries;
};

/// Throws std::invalid_argument unless every weight is finite and >= 0.
inline void validate_weights(const std::vector<double>& weights) {
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("sampling: weights must be finite and non-negative");
    }
  }
}

/// One draw proportional to weight. When the total weight is zero the draw is
/// uniform over all items (no information means no preference); this is also
/// what makes all-zero similarity tables degrade gracefully.
inline std::size_t weighted_draw_index(const std::vector<double>& weights, Rng& rng) {
  if (weights.empty()) throw std::invalid_argument("weighted_draw_index: empty table");
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) return rng.uniform_index(weights.size());
  const double u = rng.uniform01() * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (u < cumulative) return i;
  }
  return weights.size() - 1;  // guard against FP undershoot in the prefix sum
}

/// k distinct items drawn sequentially, each draw proportional to its weight
/// among the items still in the table. Throws std::length_error when
/// k exceeds the table size.
template <typename T>
std::vector<T> weighted_sample_without_replacement(std::vector<std::pair<T, double>> items,
                                                   std::size_t k, Rng& rng) {
  if (k > items.size()) {
    throw std::length_error("weighted_sample_without_replacement: k exceeds table size");
  }
  std::vector<double> weights;
  weights.reserve(items.size());
  for (const auto& [item, w] : items) weights.push_back(w);
  validate_weights(weights);

  std::vector<T> picked;
  picked.reserve(k);
  for (std::size_t draw = 0; draw < k; ++draw) {
    const std::size_t idx = weighted_draw_index(weights, rng);
    picked.push_back(std::move(items[idx].first));
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(idx));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return picked;
}

inline std::vector<VertexPair> weighted_sample_without_replacement(const WeightTable& table,
                                                                   std::size_t k, Rng& rng) {
  return weighted_sample_without_replacement(table.entries, k, rng);
}

}  // namespace mevolve
