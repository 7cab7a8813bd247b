#include <doctest.h>

#include <sstream>

#include "mevolve/filtration.hpp"
#include "support/test_util.hpp"

using mevolve::ConfusionMatrix;
using mevolve::confusion_matrix;
using mevolve::label_reliability;
using mevolve::optimize_threshold;
using mevolve::ReliabilityRecord;
using mevolve::Rng;
using mevolve::threshold_objective;

namespace {

using Preds = std::vector<std::pair<std::vector<double>, int>>;

}  // namespace

TEST_CASE("confusion matrix examples") {
  const auto q = confusion_matrix(Preds{{{0.9, 0.1}, 0}, {{0.2, 0.8}, 1}}, 2);
  CHECK(q.rows[0] == std::vector<double>{0.9, 0.1});
  CHECK(q.rows[1] == std::vector<double>{0.2, 0.8});
  CHECK(q.class_counts == std::vector<std::size_t>{1, 1});

  // One-hot correct predictions give the identity matrix.
  const auto identity =
      confusion_matrix(Preds{{{1.0, 0.0}, 0}, {{0.0, 1.0}, 1}, {{1.0, 0.0}, 0}}, 2);
  CHECK(identity.rows[0] == std::vector<double>{1.0, 0.0});
  CHECK(identity.rows[1] == std::vector<double>{0.0, 1.0});

  const auto mixed = confusion_matrix(Preds{{{1.0, 0.0}, 0}, {{0.0, 1.0}, 0}, {{0.5, 0.5}, 1}}, 2);
  CHECK(mixed.rows[0] == std::vector<double>{0.5, 0.5});

  CHECK_THROWS_WITH_AS(confusion_matrix(Preds{{{1.0, 0.0}, 0}}, 2),
                       doctest::Contains("class 1"), std::invalid_argument);
}

TEST_CASE("confusion matrix rows stay distributions") {
  Rng rng(2718);
  for (int trial = 0; trial < 50; ++trial) {
    Rng t_rng = rng.substream(trial);
    const int classes = 2 + static_cast<int>(t_rng.uniform_index(5));
    Preds preds;
    const std::size_t count = classes + t_rng.uniform_index(40);
    for (std::size_t i = 0; i < count; ++i) {
      preds.emplace_back(testutil::random_probability_vector(classes, t_rng),
                         static_cast<int>(i) % classes);
    }
    const auto q = confusion_matrix(preds, classes);
    for (const auto& row : q.rows) CHECK(mevolve::is_probability_vector(row, 1e-9));
  }
}

TEST_CASE("label reliability examples") {
  ConfusionMatrix q;
  q.rows = {{1.0, 0.0}, {0.0, 1.0}};
  q.class_counts = {1, 1};
  CHECK(label_reliability({1.0, 0.0}, 0, q) == 1.0);
  CHECK(label_reliability({1.0, 0.0}, 1, q) == 0.0);

  ConfusionMatrix soft;
  soft.rows = {{0.9, 0.1}, {0.1, 0.9}};
  soft.class_counts = {1, 1};
  const double r = label_reliability({0.9, 0.1}, 0, soft);
  CHECK(r == 0.9 * 0.9 + 0.1 * 0.1);  // exact against the defining arithmetic
  CHECK(r == doctest::Approx(0.82).epsilon(1e-12));

  CHECK_THROWS_AS((void)label_reliability({0.5, 0.5, 0.0}, 0, soft), std::invalid_argument);
  CHECK_THROWS_AS((void)label_reliability({0.5, 0.5}, 2, soft), std::invalid_argument);
}

TEST_CASE("label reliability is bounded on random distributions") {
  Rng rng(31415);
  for (int trial = 0; trial < 10000; ++trial) {
    Rng t_rng = rng.substream(trial);
    const int classes = 2 + static_cast<int>(t_rng.uniform_index(5));
    ConfusionMatrix q;
    q.rows.push_back(testutil::random_probability_vector(classes, t_rng));
    for (int c = 1; c < classes; ++c) {
      q.rows.push_back(testutil::random_probability_vector(classes, t_rng));
    }
    q.class_counts.assign(classes, 1);
    const auto p = testutil::random_probability_vector(classes, t_rng);
    const double r = label_reliability(p, static_cast<int>(t_rng.uniform_index(classes)), q);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("threshold optimization examples") {
  // Single correct example: any theta <= 0.8 is optimal; smallest wins.
  const auto single = optimize_threshold({{0.8, true}});
  CHECK(single.theta == 0.0);
  CHECK(single.objective_value == 0);

  // Mixed pair: the objective is already 0 at theta = 0.3 (the boundary
  // contributes nothing under the strict step function), and ties break low.
  const auto pair = optimize_threshold({{0.9, true}, {0.3, false}});
  CHECK(pair.theta == 0.3);
  CHECK(pair.objective_value == 0);

  // Tied reliabilities: theta = 0.5 satisfies both sides at once.
  const auto tied = optimize_threshold({{0.5, true}, {0.5, false}});
  CHECK(tied.theta == 0.5);
  CHECK(tied.objective_value == 0);

  // Inverted pair: no theta separates them; one violation remains.
  const auto inverted = optimize_threshold({{0.3, true}, {0.9, false}});
  CHECK(inverted.objective_value == 1);
  CHECK(inverted.theta == 0.0);

  CHECK_THROWS_AS((void)optimize_threshold({}), std::invalid_argument);
}

TEST_CASE("objective equals its monotone decomposition") {
  Rng rng(6022);
  for (int trial = 0; trial < 200; ++trial) {
    Rng t_rng = rng.substream(trial);
    std::vector<ReliabilityRecord> records;
    const std::size_t count = 1 + t_rng.uniform_index(40);
    for (std::size_t i = 0; i < count; ++i) {
      records.push_back({t_rng.uniform01(), t_rng.uniform01() < 0.5});
    }
    const double theta = t_rng.uniform01();
    std::size_t expected = 0;
    for (const auto& rec : records) {
      if (rec.correct && rec.reliability < theta) ++expected;
      if (!rec.correct && rec.reliability > theta) ++expected;
    }
    CHECK(threshold_objective(theta, records) == expected);
  }
}

TEST_CASE("threshold optimum matches a dense grid search") {
  Rng rng(141421);
  for (int trial = 0; trial < 100; ++trial) {
    Rng t_rng = rng.substream(trial);
    std::vector<ReliabilityRecord> records;
    const std::size_t count = 1 + t_rng.uniform_index(50);
    for (std::size_t i = 0; i < count; ++i) {
      records.push_back({t_rng.uniform01(), t_rng.uniform01() < 0.6});
    }
    const auto best = optimize_threshold(records);
    std::size_t grid_best = records.size() + 1;
    for (int k = 0; k <= 10000; ++k) {
      grid_best = std::min(grid_best, threshold_objective(k / 10000.0, records));
    }
    CHECK(best.objective_value == grid_best);
    CHECK(best.theta >= 0.0);
    CHECK(best.theta <= 1.0);
  }
}

TEST_CASE("filter_pool partitions by strict comparison") {
  mevolve::LabeledDataset pool;
  pool.class_count = 2;
  pool.add(testutil::make_graph(2, {{0, 1}}), 0);
  pool.add(testutil::make_graph(3, {{0, 1}, {1, 2}}), 1);
  pool.add(testutil::make_graph(3, {{0, 1}, {1, 2}, {0, 2}}), 0);

  ConfusionMatrix q;
  q.rows = {{1.0, 0.0}, {0.0, 1.0}};
  q.class_counts = {1, 1};

  // Confidence keyed on graph size: r = 1/n for class 0, (n-1)/n for class 1.
  const auto predict = [](const mevolve::Graph& g) {
    const double n = static_cast<double>(g.vertex_count());
    return std::vector<double>{1.0 / n, (n - 1.0) / n};
  };

  const auto all = mevolve::filter_pool(pool, predict, q, 0.0);
  CHECK(all.accepted.size() == 3);  // every reliability is positive
  CHECK(all.rejected.empty());

  const auto none = mevolve::filter_pool(pool, predict, q, 1.0);
  CHECK(none.accepted.empty());
  CHECK(none.rejected.size() == 3);

  const auto mid = mevolve::filter_pool(pool, predict, q, 0.4);
  CHECK(mid.accepted.size() + mid.rejected.size() == pool.size());
  REQUIRE(mid.reliability.size() == 3);
  CHECK(mid.reliability[0] == doctest::Approx(0.5));      // class 0, n=2
  CHECK(mid.reliability[1] == doctest::Approx(2.0 / 3));  // class 1, n=3
  CHECK(mid.reliability[2] == doctest::Approx(1.0 / 3));  // class 0, n=3
  CHECK(mid.accepted_mask == std::vector<char>{1, 1, 0});
  CHECK(mid.accepted.labels == std::vector<int>{0, 1});
  CHECK(mid.rejected.labels == std::vector<int>{0});

  // Partition against an independent scalar comparison.
  for (std::size_t i = 0; i < pool.size(); ++i) {
    CHECK((mid.reliability[i] > 0.4) == (mid.accepted_mask[i] == 1));
  }
}

TEST_CASE("reliability csv layout") {
  std::ostringstream out;
  mevolve::write_reliability_csv(out, {0.25, 0.75}, {0, 1});
  CHECK(out.str() == "graph_id,reliability,accepted\n0,0.25,0\n1,0.75,1\n");
}
