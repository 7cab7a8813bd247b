#include "mevolve/augment.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <unordered_set>

#include "mevolve/errors.hpp"
#include "mevolve/parallel.hpp"

namespace mevolve {

const char* mapping_name(Mapping m) {
  switch (m) {
    case Mapping::Random: return "random";
    case Mapping::VertexSimilarity: return "vertex-similarity";
    case Mapping::MotifRandom: return "motif-random";
    case Mapping::MotifSimilarity: return "motif-similarity";
  }
  return "unknown";
}

Mapping mapping_from_name(const std::string& name) {
  std::string key = name;
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "random") return Mapping::Random;
  if (key == "vertex-similarity") return Mapping::VertexSimilarity;
  if (key == "motif-random") return Mapping::MotifRandom;
  if (key == "motif-similarity") return Mapping::MotifSimilarity;
  throw std::invalid_argument("unknown mapping: " + name);
}

void AugmentConfig::validate() const {
  if (!(beta > 0.0) || beta > 1.0) {
    throw std::invalid_argument("AugmentConfig: beta must lie in (0,1]");
  }
  if (motif_length < 2) {
    throw std::invalid_argument("AugmentConfig: motif_length must be >= 2");
  }
  if (max_resample_attempts == 0) {
    throw std::invalid_argument("AugmentConfig: max_resample_attempts must be positive");
  }
}

std::size_t modification_count(std::size_t edge_count, double beta) {
  if (edge_count == 0) return 0;
  const double raw = static_cast<double>(edge_count) * beta;
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::max<std::size_t>(k, 1);
}

CandidateSets build_random_candidates(const Graph& g) {
  CandidateSets sets;
  const std::size_t n = g.vertex_count();
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (!g.has_edge(i, j)) sets.add_candidates.emplace_back(i, j);
    }
  }
  sets.del_candidates = g.edges();
  return sets;
}

std::vector<VertexPair> build_motif_add_candidates(const Graph& g, std::size_t motif_length) {
  std::vector<VertexPair> candidates;
  const std::size_t n = g.vertex_count();
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (!g.has_edge(i, j) && g.has_length_l_path(i, j, motif_length)) {
        candidates.emplace_back(i, j);
      }
    }
  }
  return candidates;
}

namespace {

std::vector<double> ra_scores_for(const Graph& g, const std::vector<VertexPair>& pairs) {
  std::vector<double> scores;
  scores.reserve(pairs.size());
  for (const VertexPair& p : pairs) scores.push_back(g.ra_score(p.a, p.b));
  return scores;
}

// Deletion weights 1 - s/sum(s) over the given candidate scores, uniform when
// the similarity mass is zero.
std::vector<double> deletion_weights(const std::vector<double>& scores) {
  double total = 0.0;
  for (double s : scores) total += s;
  std::vector<double> weights(scores.size(), 1.0);
  if (total > 0.0) {
    for (std::size_t i = 0; i < scores.size(); ++i) weights[i] = 1.0 - scores[i] / total;
  }
  return weights;
}

// Mutable adjacency for connectivity probes while a plan is being built.
struct WorkingGraph {
  std::vector<std::vector<std::uint32_t>> adj;

  explicit WorkingGraph(const Graph& g) {
    adj.resize(g.vertex_count());
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) adj[v] = g.neighbors(v);
  }

  void add_edge(VertexPair e) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }

  void remove_edge(VertexPair e) {
    auto drop = [this](std::uint32_t from, std::uint32_t to) {
      auto& nbrs = adj[from];
      nbrs.erase(std::find(nbrs.begin(), nbrs.end(), to));
    };
    drop(e.a, e.b);
    drop(e.b, e.a);
  }

  std::size_t component_count_excluding(VertexPair skip) const {
    const std::size_t n = adj.size();
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> stack;
    std::size_t components = 0;
    for (std::uint32_t start = 0; start < n; ++start) {
      if (seen[start]) continue;
      ++components;
      seen[start] = 1;
      stack.assign(1, start);
      while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t w : adj[v]) {
          if (VertexPair(v, w) == skip || seen[w]) continue;
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return components;
  }
};

// Sequentially draws k deletions from the weighted pool. A draw that would
// raise the component count above the input graph's is rejected and redrawn;
// after max_resample_attempts the draw is accepted anyway and counted as an
// override.
std::pair<std::vector<VertexPair>, std::size_t> sample_deletions(
    const Graph& g, WorkingGraph& work, std::vector<VertexPair> pool,
    std::vector<double> weights, std::size_t k, const AugmentConfig& cfg, Rng& rng) {
  validate_weights(weights);
  const std::size_t base_components = g.component_count();
  std::vector<VertexPair> deletions;
  deletions.reserve(k);
  std::size_t overrides = 0;
  for (std::size_t draw = 0; draw < k; ++draw) {
    std::size_t attempts = 0;
    for (;;) {
      const std::size_t idx = weighted_draw_index(weights, rng);
      const VertexPair e = pool[idx];
      ++attempts;
      const bool safe = !cfg.preserve_connectivity ||
                        work.component_count_excluding(e) <= base_components;
      if (safe || attempts >= cfg.max_resample_attempts) {
        if (!safe) ++overrides;
        deletions.push_back(e);
        work.remove_edge(e);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
        weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(idx));
        break;
      }
    }
  }
  return {std::move(deletions), overrides};
}

EditPlan plan_pairwise(const Graph& g, const AugmentConfig& cfg, Rng& rng,
                       bool similarity_weighted) {
  cfg.validate();
  const std::size_t m = g.edge_count();
  if (m == 0) {
    throw AugmentInfeasible(AugmentInfeasible::Side::Deletion, "graph has no edges to modify");
  }
  const std::size_t k = modification_count(m, cfg.beta);
  CandidateSets sets = build_random_candidates(g);
  if (k > sets.add_candidates.size()) {
    throw AugmentInfeasible(AugmentInfeasible::Side::Addition,
                            "addition candidates exhausted: need " + std::to_string(k) +
                                ", have " + std::to_string(sets.add_candidates.size()));
  }
  if (k > sets.del_candidates.size()) {
    throw AugmentInfeasible(AugmentInfeasible::Side::Deletion,
                            "deletion candidates exhausted: need " + std::to_string(k) +
                                ", have " + std::to_string(sets.del_candidates.size()));
  }

  std::vector<std::pair<VertexPair, double>> add_table;
  add_table.reserve(sets.add_candidates.size());
  if (similarity_weighted) {
    const std::vector<double> scores = ra_scores_for(g, sets.add_candidates);
    for (std::size_t i = 0; i < sets.add_candidates.size(); ++i) {
      add_table.emplace_back(sets.add_candidates[i], scores[i]);
    }
  } else {
    for (const VertexPair& p : sets.add_candidates) add_table.emplace_back(p, 1.0);
  }

  EditPlan plan;
  plan.additions = weighted_sample_without_replacement(std::move(add_table), k, rng);

  std::vector<double> del_weights(sets.del_candidates.size(), 1.0);
  if (similarity_weighted) {
    del_weights = deletion_weights(ra_scores_for(g, sets.del_candidates));
  }

  WorkingGraph work(g);
  for (const VertexPair& e : plan.additions) work.add_edge(e);
  auto [deletions, overrides] =
      sample_deletions(g, work, std::move(sets.del_candidates), std::move(del_weights), k, cfg, rng);
  plan.deletions = std::move(deletions);
  plan.connectivity_overrides = overrides;
  return plan;
}

}  // namespace

EditPlan plan_random(const Graph& g, const AugmentConfig& cfg, Rng& rng) {
  return plan_pairwise(g, cfg, rng, false);
}

EditPlan plan_vertex_similarity(const Graph& g, const AugmentConfig& cfg, Rng& rng) {
  return plan_pairwise(g, cfg, rng, true);
}

EditPlan plan_motif(const Graph& g, const AugmentConfig& cfg, Rng& rng, bool similarity_weighted) {
  cfg.validate();
  const std::size_t m = g.edge_count();
  if (m == 0) {
    throw AugmentInfeasible(AugmentInfeasible::Side::Deletion, "graph has no edges to modify");
  }
  const std::size_t k = modification_count(m, cfg.beta);
  std::vector<VertexPair> candidates = build_motif_add_candidates(g, cfg.motif_length);
  if (candidates.empty()) {
    throw AugmentInfeasible(AugmentInfeasible::Side::Addition,
                            "no motif addition candidates: no non-adjacent pair closes a length-" +
                                std::to_string(cfg.motif_length) + " path");
  }
  // Partial budget when the motif candidate set is smaller than ceil(m*beta).
  const std::size_t k_eff = std::min(k, candidates.size());

  std::vector<std::pair<VertexPair, double>> add_table;
  add_table.reserve(candidates.size());
  if (similarity_weighted) {
    const std::vector<double> scores = ra_scores_for(g, candidates);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      add_table.emplace_back(candidates[i], scores[i]);
    }
  } else {
    for (const VertexPair& p : candidates) add_table.emplace_back(p, 1.0);
  }
  const std::vector<VertexPair> sampled_additions =
      weighted_sample_without_replacement(std::move(add_table), k_eff, rng);

  const std::size_t base_components = g.component_count();
  WorkingGraph work(g);
  for (const VertexPair& e : sampled_additions) work.add_edge(e);

  EditPlan plan;
  std::unordered_set<std::uint64_t> deleted;
  for (const VertexPair& added : sampled_additions) {
    const std::vector<Path> paths = g.find_paths(added.a, added.b, cfg.motif_length);
    const Path& chosen = paths[rng.uniform_index(paths.size())];

    // Edges of the chosen motif still present in the working graph.
    std::vector<VertexPair> eligible;
    for (const VertexPair& e : chosen.edge_sequence()) {
      if (!deleted.contains(e.key())) eligible.push_back(e);
    }

    std::optional<VertexPair> removal;
    while (!eligible.empty()) {
      std::vector<double> weights(eligible.size(), 1.0);
      if (similarity_weighted) {
        weights = deletion_weights(ra_scores_for(g, eligible));
      }
      const std::size_t idx = weighted_draw_index(weights, rng);
      const VertexPair e = eligible[idx];
      const bool safe = !cfg.preserve_connectivity ||
                        work.component_count_excluding(e) <= base_components;
      if (safe) {
        removal = e;
        break;
      }
      eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(idx));
    }

    if (removal) {
      plan.additions.push_back(added);
      plan.deletions.push_back(*removal);
      deleted.insert(removal->key());
      work.remove_edge(*removal);
    } else {
      ++plan.dropped_pairs;
      if (cfg.preserve_edge_count) {
        work.remove_edge(added);  // the addition goes too, keeping |E| constant
      } else {
        plan.additions.push_back(added);
      }
    }
  }
  return plan;
}

Graph apply_plan(const Graph& g, const EditPlan& plan) {
  std::unordered_set<std::uint64_t> removed;
  removed.reserve(plan.deletions.size());
  for (const VertexPair& e : plan.deletions) removed.insert(e.key());
  std::vector<VertexPair> edges;
  edges.reserve(g.edge_count() + plan.additions.size());
  for (const VertexPair& e : g.edges()) {
    if (!removed.contains(e.key())) edges.push_back(e);
  }
  for (const VertexPair& e : plan.additions) edges.push_back(e);
  return Graph(g.vertex_count(), edges);
}

Graph random_mapping(const Graph& g, const AugmentConfig& cfg, Rng& rng) {
  return apply_plan(g, plan_random(g, cfg, rng));
}

Graph vertex_similarity_mapping(const Graph& g, const AugmentConfig& cfg, Rng& rng) {
  return apply_plan(g, plan_vertex_similarity(g, cfg, rng));
}

Graph motif_random_mapping(const Graph& g, const AugmentConfig& cfg, Rng& rng) {
  return apply_plan(g, plan_motif(g, cfg, rng, false));
}

Graph motif_similarity_mapping(const Graph& g, const AugmentConfig& cfg, Rng& rng) {
  return apply_plan(g, plan_motif(g, cfg, rng, true));
}

namespace {

EditPlan plan_edits(const Graph& g, const AugmentConfig& cfg, Rng& rng) {
  switch (cfg.mapping) {
    case Mapping::Random: return plan_random(g, cfg, rng);
    case Mapping::VertexSimilarity: return plan_vertex_similarity(g, cfg, rng);
    case Mapping::MotifRandom: return plan_motif(g, cfg, rng, false);
    case Mapping::MotifSimilarity: return plan_motif(g, cfg, rng, true);
  }
  throw std::invalid_argument("augment: unknown mapping");
}

}  // namespace

Graph augment_graph(const Graph& g, const AugmentConfig& cfg, Rng& rng) {
  return apply_plan(g, plan_edits(g, cfg, rng));
}

AugmentResult augment_dataset(const LabeledDataset& train, const AugmentConfig& cfg,
                              std::uint64_t seed, std::int64_t iteration, unsigned workers) {
  cfg.validate();
  const std::size_t n = train.size();
  std::vector<std::optional<Graph>> produced(n);
  std::vector<EditPlan> plans(n);
  std::vector<std::string> failures(n);

  parallel_for(n, workers, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    try {
      plans[i] = plan_edits(train.graphs[i], cfg, rng);
      produced[i] = apply_plan(train.graphs[i], plans[i]);
    } catch (const AugmentInfeasible& err) {
      failures[i] = err.what();
    }
  });

  AugmentResult result;
  result.pool.class_count = train.class_count;
  result.pool.label_values = train.label_values;
  for (std::size_t i = 0; i < n; ++i) {
    if (produced[i]) {
      result.pool.add(std::move(*produced[i]), train.labels[i],
                      Provenance::augmented(static_cast<std::int64_t>(i), iteration));
      result.edges_added += plans[i].additions.size();
      result.edges_removed += plans[i].deletions.size();
      result.connectivity_overrides += plans[i].connectivity_overrides;
      result.dropped_pairs += plans[i].dropped_pairs;
    } else {
      result.skipped.push_back({i, failures[i]});
    }
  }
  return result;
}

}  // namespace mevolve
