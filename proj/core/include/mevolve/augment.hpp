#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mevolve/dataset.hpp"
#include "mevolve/graph.hpp"
#include "mevolve/rng.hpp"
#include "mevolve/sampling.hpp"

namespace mevolve {

enum class Mapping { Random, VertexSimilarity, MotifRandom, MotifSimilarity };

const char* mapping_name(Mapping m);
Mapping mapping_from_name(const std::string& name);  // accepts "motif-similarity" etc.

struct AugmentConfig {
  Mapping mapping = Mapping::MotifSimilarity;
  double beta = 0.15;               // budget: ceil(m * beta) edges added and removed
  std::size_t motif_length = 2;     // open-triad; 3 = open-quad
  bool preserve_connectivity = true;
  bool preserve_edge_count = true;  // motif mappings: drop an addition whose path exhausts
  std::size_t max_resample_attempts = 20;
  std::uint64_t rng_seed = 0;

  /// Throws std::invalid_argument when beta is outside (0,1] or motif_length < 2.
  void validate() const;
};

/// Candidate pairs for edge addition (non-adjacent) and deletion (existing).
struct CandidateSets {
  std::vector<VertexPair> add_candidates;
  std::vector<VertexPair> del_candidates;
};

/// Deletion candidates are the current edges; addition candidates are all
/// non-adjacent distinct pairs.
CandidateSets build_random_candidates(const Graph& g);

/// Non-adjacent pairs joined by at least one simple path of exactly
/// motif_length edges (the open-motif head/tail pairs).
std::vector<VertexPair> build_motif_add_candidates(const Graph& g, std::size_t motif_length);

/// Paired edge edits. additions are disjoint from the source edges, deletions
/// are a subset of them, and the two sets never overlap.
struct EditPlan {
  std::vector<VertexPair> additions;
  std::vector<VertexPair> deletions;
  std::size_t connectivity_overrides = 0;  // deletions accepted after resampling ran out
  std::size_t dropped_pairs = 0;           // motif (addition, deletion) pairs dropped
};

EditPlan plan_random(const Graph& g, const AugmentConfig& cfg, Rng& rng);
EditPlan plan_vertex_similarity(const Graph& g, const AugmentConfig& cfg, Rng& rng);
EditPlan plan_motif(const Graph& g, const AugmentConfig& cfg, Rng& rng, bool similarity_weighted);

/// (V, (E ∪ additions) \ deletions) as a new graph.
Graph apply_plan(const Graph& g, const EditPlan& plan);

Graph random_mapping(const Graph& g, const AugmentConfig& cfg, Rng& rng);
Graph vertex_similarity_mapping(const Graph& g, const AugmentConfig& cfg, Rng& rng);
Graph motif_random_mapping(const Graph& g, const AugmentConfig& cfg, Rng& rng);
Graph motif_similarity_mapping(const Graph& g, const AugmentConfig& cfg, Rng& rng);

/// Dispatches on cfg.mapping.
Graph augment_graph(const Graph& g, const AugmentConfig& cfg, Rng& rng);

/// ceil(m * beta) with a small guard against FP representation error of
/// rational budgets (20 * 0.05 must count as 1 modification, not 2).
std::size_t modification_count(std::size_t edge_count, double beta);

struct AugmentResult {
  LabeledDataset pool;  // one augmented graph per feasible source, labels copied
  struct Skipped {
    std::size_t index;
    std::string reason;
  };
  std::vector<Skipped> skipped;
  std::size_t edges_added = 0;
  std::size_t edges_removed = 0;
  std::size_t connectivity_overrides = 0;
  std::size_t dropped_pairs = 0;
};

/// Augments every graph in `train` with an independent, seed-derived rng
/// substream per graph, so results do not depend on worker scheduling.
/// Infeasible graphs are skipped and reported, never fatal.
AugmentResult augment_dataset(const LabeledDataset& train, const AugmentConfig& cfg,
                              std::uint64_t seed, std::int64_t iteration = 0,
                              unsigned workers = 1);

}  // namespace mevolve
