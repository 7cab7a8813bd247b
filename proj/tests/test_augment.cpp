#include <doctest.h>

#include <map>
#include <set>

#include "mevolve/augment.hpp"
#include "mevolve/errors.hpp"
#include "mevolve/generate.hpp"
#include "support/test_util.hpp"

using mevolve::AugmentConfig;
using mevolve::AugmentInfeasible;
using mevolve::EditPlan;
using mevolve::Graph;
using mevolve::Mapping;
using mevolve::Rng;
using mevolve::VertexPair;
using testutil::make_graph;

namespace {

AugmentConfig config(Mapping mapping, double beta = 0.15) {
  AugmentConfig cfg;
  cfg.mapping = mapping;
  cfg.beta = beta;
  return cfg;
}

std::set<std::uint64_t> edge_keys(const Graph& g) {
  std::set<std::uint64_t> keys;
  for (const VertexPair& e : g.edges()) keys.insert(e.key());
  return keys;
}

}  // namespace

TEST_CASE("modification_count budget arithmetic") {
  CHECK(mevolve::modification_count(20, 0.15) == 3);
  CHECK(mevolve::modification_count(20, 0.05) == 1);
  CHECK(mevolve::modification_count(2, 0.15) == 1);
  CHECK(mevolve::modification_count(7, 1.0) == 7);
  CHECK(mevolve::modification_count(100, 0.07) == 7);  // 7.000000000000001 in doubles
  CHECK(mevolve::modification_count(0, 0.5) == 0);
}

TEST_CASE("config validation") {
  AugmentConfig cfg;
  cfg.beta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.beta = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.beta = 0.15;
  cfg.motif_length = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK(mevolve::mapping_from_name("motif_similarity") == Mapping::MotifSimilarity);
  CHECK_THROWS_AS(mevolve::mapping_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("random candidate sets") {
  const Graph k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto full = mevolve::build_random_candidates(k3);
  CHECK(full.add_candidates.empty());
  CHECK(full.del_candidates.size() == 3);

  const Graph edgeless(3, {});
  const auto empty = mevolve::build_random_candidates(edgeless);
  CHECK(empty.add_candidates.size() == 3);
  CHECK(empty.del_candidates.empty());

  const Graph path = make_graph(3, {{0, 1}, {1, 2}});
  const auto p = mevolve::build_random_candidates(path);
  CHECK(p.add_candidates == std::vector<VertexPair>{{0, 2}});
  CHECK(p.del_candidates == std::vector<VertexPair>{{0, 1}, {1, 2}});
}

TEST_CASE("random mapping on the 2-edge path") {
  const Graph path = make_graph(3, {{0, 1}, {1, 2}});
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    Rng rng(seed);
    const Graph out = mevolve::random_mapping(path, config(Mapping::Random, 0.4), rng);
    CHECK(out.edge_count() == 2);
    CHECK(out.has_edge(0, 2));  // the only addable pair
    CHECK((out.has_edge(0, 1) != out.has_edge(1, 2)));  // lost exactly one
  }
}

TEST_CASE("random mapping infeasibility carries the exhausted side") {
  const Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  Rng rng(3);
  try {
    (void)mevolve::random_mapping(k4, config(Mapping::Random, 1.0), rng);
    FAIL("expected AugmentInfeasible");
  } catch (const AugmentInfeasible& err) {
    CHECK(err.side() == AugmentInfeasible::Side::Addition);
  }

  const Graph empty(3, {});
  Rng rng2(3);
  CHECK_THROWS_AS((void)mevolve::random_mapping(empty, config(Mapping::Random), rng2),
                  AugmentInfeasible);
}

TEST_CASE("vertex-similarity: the only scored pair is always added") {
  // (0,2) is the single non-adjacent pair with a common neighbor.
  const Graph g = make_graph(5, {{0, 1}, {1, 2}, {3, 4}});
  AugmentConfig cfg = config(Mapping::VertexSimilarity, 0.2);  // k = 1
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    Rng rng(seed);
    const EditPlan plan = mevolve::plan_vertex_similarity(g, cfg, rng);
    REQUIRE(plan.additions.size() == 1);
    CHECK(plan.additions[0] == VertexPair{0, 2});
  }
}

TEST_CASE("vertex-similarity: equal scores split 50/50 on the 4-cycle") {
  const Graph cycle = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  AugmentConfig cfg = config(Mapping::VertexSimilarity, 0.2);  // k = 1
  int diag02 = 0;
  const int trials = 10000;
  Rng rng(555);
  for (int t = 0; t < trials; ++t) {
    Rng trial_rng = rng.substream(t);
    const EditPlan plan = mevolve::plan_vertex_similarity(cycle, cfg, trial_rng);
    if (plan.additions[0] == VertexPair{0, 2}) ++diag02;
  }
  CHECK(std::abs(diag02 / static_cast<double>(trials) - 0.5) < 0.02);
}

TEST_CASE("vertex-similarity deletion prefers low-RA edges") {
  // Triangle 0-1-2 plus pendant 0-3; the pendant edge has RA 0 and deletion
  // weight 1, versus 0.625/0.625/0.75 for the triangle edges.
  const Graph g = make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  AugmentConfig cfg = config(Mapping::VertexSimilarity, 0.25);  // k = 1
  cfg.preserve_connectivity = false;  // deleting the pendant edge disconnects
  std::map<std::uint64_t, int> counts;
  const int trials = 20000;
  Rng rng(3131);
  for (int t = 0; t < trials; ++t) {
    Rng trial_rng = rng.substream(t);
    const EditPlan plan = mevolve::plan_vertex_similarity(g, cfg, trial_rng);
    ++counts[plan.deletions[0].key()];
  }
  const double pendant = counts[VertexPair{0, 3}.key()] / static_cast<double>(trials);
  const double strongest = counts[VertexPair{1, 2}.key()] / static_cast<double>(trials);
  CHECK(pendant == doctest::Approx(1.0 / 3.0).epsilon(0.05));
  CHECK(strongest == doctest::Approx(0.25).epsilon(0.07));
  CHECK(pendant > strongest + 0.03);
}

TEST_CASE("motif candidates and the open-quad equivalence") {
  const Graph path3 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(mevolve::build_motif_add_candidates(path3, 3) == std::vector<VertexPair>{{0, 3}});
  CHECK(mevolve::build_motif_add_candidates(path3, 2) ==
        std::vector<VertexPair>{{0, 2}, {1, 3}});

  const Graph k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(mevolve::build_motif_add_candidates(k3, 2).empty());
}

TEST_CASE("motif-random mapping on the 2-edge path swaps within the triad") {
  const Graph path = make_graph(3, {{0, 1}, {1, 2}});
  AugmentConfig cfg = config(Mapping::MotifRandom, 0.4);  // k = 1
  cfg.preserve_connectivity = false;
  std::set<std::uint64_t> seen_deletions;
  for (std::uint64_t seed = 0; seed < 128; ++seed) {
    Rng rng(seed);
    const EditPlan plan = mevolve::plan_motif(path, cfg, rng, false);
    REQUIRE(plan.additions == std::vector<VertexPair>{{0, 2}});
    REQUIRE(plan.deletions.size() == 1);
    seen_deletions.insert(plan.deletions[0].key());
    const Graph out = mevolve::apply_plan(path, plan);
    CHECK(out.edge_count() == 2);
  }
  // Both triad edges get removed across seeds.
  CHECK(seen_deletions ==
        std::set<std::uint64_t>{VertexPair{0, 1}.key(), VertexPair{1, 2}.key()});
}

TEST_CASE("motif mapping is infeasible on complete graphs") {
  const Graph k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  Rng rng(1);
  try {
    (void)mevolve::motif_random_mapping(k3, config(Mapping::MotifRandom), rng);
    FAIL("expected AugmentInfeasible");
  } catch (const AugmentInfeasible& err) {
    CHECK(err.side() == AugmentInfeasible::Side::Addition);
  }
}

TEST_CASE("motif-similarity prefers high-RA head/tail pairs") {
  // Candidates: (0,2) s=1, (1,3) s=5/6, (1,4) s=1/3, (3,4) s=1/3.
  const Graph g = make_graph(5, {{0, 1}, {1, 2}, {0, 3}, {2, 3}, {2, 4}});
  AugmentConfig cfg = config(Mapping::MotifSimilarity, 0.2);  // k = 1
  std::map<std::uint64_t, int> counts;
  const int trials = 20000;
  Rng rng(808);
  for (int t = 0; t < trials; ++t) {
    Rng trial_rng = rng.substream(t);
    const EditPlan plan = mevolve::plan_motif(g, cfg, trial_rng, true);
    REQUIRE(plan.additions.size() == 1);
    ++counts[plan.additions[0].key()];
  }
  const double top = counts[VertexPair{0, 2}.key()] / static_cast<double>(trials);
  const double second = counts[VertexPair{1, 3}.key()] / static_cast<double>(trials);
  CHECK(top == doctest::Approx(0.4).epsilon(0.05));            // 1 / 2.5
  CHECK(second == doctest::Approx(1.0 / 3.0).epsilon(0.06));   // (5/6) / 2.5
  CHECK(top > second + 0.02);
}

TEST_CASE("motif-similarity deletes 50/50 within an equal-score path") {
  const Graph path = make_graph(3, {{0, 1}, {1, 2}});
  AugmentConfig cfg = config(Mapping::MotifSimilarity, 0.4);  // k = 1
  cfg.preserve_connectivity = false;
  int first_edge = 0;
  const int trials = 10000;
  Rng rng(99);
  for (int t = 0; t < trials; ++t) {
    Rng trial_rng = rng.substream(t);
    const EditPlan plan = mevolve::plan_motif(path, cfg, trial_rng, true);
    REQUIRE(plan.additions == std::vector<VertexPair>{{0, 2}});
    if (plan.deletions[0] == VertexPair{0, 1}) ++first_edge;
  }
  CHECK(std::abs(first_edge / static_cast<double>(trials) - 0.5) < 0.02);
}

TEST_CASE("augment_dataset pools, skips and determinism") {
  mevolve::LabeledDataset train;
  train.class_count = 2;
  train.add(make_graph(3, {{0, 1}, {1, 2}}), 0);
  train.add(make_graph(4, {{0, 1}, {1, 2}, {2, 3}}), 1);
  train.add(make_graph(3, {{0, 1}, {1, 2}, {0, 2}}), 1);  // K3: infeasible for motifs
  train.add(make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}), 0);

  AugmentConfig cfg = config(Mapping::MotifSimilarity, 0.15);
  const auto result = mevolve::augment_dataset(train, cfg, 40, 7);
  CHECK(result.pool.size() == 3);
  REQUIRE(result.skipped.size() == 1);
  CHECK(result.skipped[0].index == 2);
  CHECK(result.pool.labels == std::vector<int>{0, 1, 0});
  for (std::size_t i = 0; i < result.pool.size(); ++i) {
    CHECK(result.pool.provenance[i].kind == mevolve::ProvenanceKind::Augmented);
    CHECK(result.pool.provenance[i].iteration == 7);
  }
  CHECK(result.pool.provenance[2].source_index == 3);

  const auto again = mevolve::augment_dataset(train, cfg, 40, 7);
  CHECK(result.pool == again.pool);

  const auto parallel = mevolve::augment_dataset(train, cfg, 40, 7, 4);
  CHECK(result.pool == parallel.pool);

  const auto other_seed = mevolve::augment_dataset(train, cfg, 41, 7);
  CHECK(result.pool.size() == other_seed.pool.size());
}

TEST_CASE("mapping invariants over random graphs") {
  Rng master(160860);
  const std::vector<Mapping> mappings{Mapping::Random, Mapping::VertexSimilarity,
                                      Mapping::MotifRandom, Mapping::MotifSimilarity};
  int feasible = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Rng g_rng = master.substream(trial);
    const std::size_t n = 6 + g_rng.uniform_index(25);
    const Graph g = (trial % 2 == 0)
                        ? mevolve::erdos_renyi(n, 0.12 + 0.25 * g_rng.uniform01(), g_rng)
                        : mevolve::barabasi_albert(n, 1 + g_rng.uniform_index(3), g_rng);
    if (g.edge_count() == 0) continue;
    const auto original_keys = edge_keys(g);
    for (Mapping mapping : mappings) {
      AugmentConfig cfg = config(mapping, 0.05 + 0.05 * (trial % 5));
      Rng rng(master.substream(1000 + trial).seed() ^ static_cast<std::uint64_t>(mapping));
      EditPlan plan;
      try {
        switch (mapping) {
          case Mapping::Random: plan = mevolve::plan_random(g, cfg, rng); break;
          case Mapping::VertexSimilarity: plan = mevolve::plan_vertex_similarity(g, cfg, rng); break;
          case Mapping::MotifRandom: plan = mevolve::plan_motif(g, cfg, rng, false); break;
          case Mapping::MotifSimilarity: plan = mevolve::plan_motif(g, cfg, rng, true); break;
        }
      } catch (const AugmentInfeasible&) {
        continue;
      }
      ++feasible;

      // Structural legality.
      CHECK(plan.additions.size() == plan.deletions.size());
      std::set<std::uint64_t> add_keys, del_keys;
      for (const VertexPair& e : plan.additions) {
        CHECK(!original_keys.contains(e.key()));
        CHECK(add_keys.insert(e.key()).second);
        CHECK(e.a != e.b);
      }
      for (const VertexPair& e : plan.deletions) {
        CHECK(original_keys.contains(e.key()));
        CHECK(del_keys.insert(e.key()).second);
        CHECK(!add_keys.contains(e.key()));
      }

      // Motif soundness against the original graph.
      if (mapping == Mapping::MotifRandom || mapping == Mapping::MotifSimilarity) {
        for (const VertexPair& e : plan.additions) {
          CHECK(g.has_length_l_path(e.a, e.b, cfg.motif_length));
        }
      }

      const Graph out = mevolve::apply_plan(g, plan);
      CHECK(out.vertex_count() == g.vertex_count());
      CHECK(out.edge_count() == g.edge_count());  // edge-count preservation

      // Connectivity preservation on connected inputs.
      if (cfg.preserve_connectivity && g.is_connected() && plan.connectivity_overrides == 0) {
        CHECK(out.is_connected());
      }

      // Determinism under the same seed.
      Rng replay(master.substream(1000 + trial).seed() ^ static_cast<std::uint64_t>(mapping));
      const Graph out2 = mevolve::augment_graph(g, cfg, replay);
      CHECK(out == out2);
    }
  }
  CHECK(feasible > 100);
}
