#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fixtures.hpp"
#include "orchard/error.hpp"
#include "orchard/evolution.hpp"
#include "orchard/ilbim.hpp"

using namespace orchard;

TEST(Archive, Windows) {
  const auto a = Archive::make(0.6, 10);
  ASSERT_EQ(a.ranges.size(), 6u);
  EXPECT_DOUBLE_EQ(a.ranges.front(), 0.1);
  EXPECT_DOUBLE_EQ(a.ranges.back(), 0.6);
  EXPECT_DOUBLE_EQ(a.c, 0.1);
  EXPECT_THROW(Archive::make(0.05, 10), ConfigError);
}

TEST(Probabilities, ZeroCountsUniform) {
  const auto a = Archive::make(0.6, 10);
  for (const double p : selection_probabilities(a)) EXPECT_NEAR(p, 1.0 / 6.0, 1e-12);
}

TEST(Probabilities, SingleSuccess) {
  auto a = Archive::make(0.6, 10);
  a.counts = {0, 1, 0, 0, 0, 0};
  const auto p = selection_probabilities(a);
  const std::vector<double> want{1.0 / 15, 10.0 / 15, 1.0 / 15, 1.0 / 15, 1.0 / 15, 1.0 / 15};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(p[i], want[i], 1e-12);
}

TEST(Probabilities, UniformCounts) {
  for (long k = 1; k <= 5; ++k) {
    auto a = Archive::make(0.6, 10);
    a.counts.assign(6, k);
    for (const double p : selection_probabilities(a)) EXPECT_NEAR(p, 1.0 / 6.0, 1e-12);
  }
}

TEST(Probabilities, SumToOne) {
  Rng rng(3);
  std::uniform_int_distribution<long> cnt(0, 20);
  for (int rep = 0; rep < 100; ++rep) {
    auto a = Archive::make(0.1 * (1 + rep % 10), 1 + rep % 30);
    for (auto& c : a.counts) c = cnt(rng);
    const auto p = selection_probabilities(a);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
    for (const double v : p) EXPECT_GT(v, 0.0);
  }
}

TEST(Select, FirstRoundIsBest) {
  Rng rng(1);
  const auto s = eass_select(10, Archive::make(0.6, 10), 1, rng);
  EXPECT_EQ(s.individual, 0u);
  EXPECT_EQ(s.range_index, kNoRange);
}

TEST(Select, NarrowWindowIsBest) {
  Rng rng(1);
  auto a = Archive::make(0.1, 10);
  for (int i = 0; i < 100; ++i) {
    const auto s = eass_select(10, a, 2, rng);
    EXPECT_EQ(s.individual, 0u);
    EXPECT_EQ(s.range_index, 0);
  }
}

TEST(Select, FavouredWindowFrequency) {
  for (const long n : {10L, 100L, 1000L}) {
    auto a = Archive::make(0.6, 10);
    a.counts = {0, n, 0, 0, 0, 0};
    Rng rng(static_cast<std::uint64_t>(n));
    int hits = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto s = eass_select(10, a, 5, rng);
      if (s.range_index == 1) ++hits;
      EXPECT_LT(s.individual, static_cast<std::size_t>(s.range_index + 1));
    }
    EXPECT_GT(hits / 10000.0, 0.6);
  }
}

TEST(ArchiveUpdate, Cases) {
  auto a = Archive::make(0.6, 10);
  update_archive(a, 1, true);
  EXPECT_EQ(a.counts, (std::vector<long>{0, 1, 0, 0, 0, 0}));
  update_archive(a, 2, false);
  EXPECT_EQ(a.counts, (std::vector<long>{0, 1, 0, 0, 0, 0}));
  update_archive(a, kNoRange, true);
  EXPECT_EQ(a.counts, (std::vector<long>{0, 1, 0, 0, 0, 0}));
}

TEST(Crossover, WholeCutIsParent) {
  const std::vector<int> p1{3, 1, 4, 2, 5};
  const std::vector<int> p2{5, 4, 3, 2, 1};
  EXPECT_EQ(order_crossover(p1, p2, 0, 4), p1);
}

TEST(Crossover, IdenticalParents) {
  const auto inst = orchard::testing::random_instance(9, 2, 3.0);
  Rng rng(4);
  const auto parent = resplit(std::vector<int>{4, 2, 9, 1, 3, 8, 7, 5, 6}, inst, SplitPolicy::kGreedy);
  for (int i = 0; i < 20; ++i) {
    const auto [a, b] = crossover(parent, parent, inst, rng);
    EXPECT_EQ(a.task_order(), parent.task_order());
    EXPECT_EQ(b.task_order(), parent.task_order());
  }
}

TEST(Crossover, ProducesPermutation) {
  Rng rng(9);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<int> p1(12), p2(12);
    std::iota(p1.begin(), p1.end(), 1);
    std::iota(p2.begin(), p2.end(), 1);
    std::shuffle(p1.begin(), p1.end(), rng);
    std::shuffle(p2.begin(), p2.end(), rng);
    const std::size_t lo = static_cast<std::size_t>(rep % 12);
    const std::size_t hi = std::max(lo, static_cast<std::size_t>((rep * 7) % 12));
    auto child = order_crossover(p1, p2, lo, hi);
    for (std::size_t i = lo; i <= hi; ++i) EXPECT_EQ(child[i], p1[i]);
    std::sort(child.begin(), child.end());
    std::vector<int> want(12);
    std::iota(want.begin(), want.end(), 1);
    EXPECT_EQ(child, want);
  }
}

TEST(Mutate, ZeroRateIsIdentity) {
  const auto inst = orchard::testing::random_instance(9, 2, 3.0);
  Rng rng(4);
  const auto sol = resplit(std::vector<int>{4, 2, 9, 1, 3, 8, 7, 5, 6}, inst, SplitPolicy::kGreedy);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(mutate(sol, inst, rng, 0.0), sol);
}

TEST(Mutate, KeepsTasksAndCapacity) {
  const auto inst = orchard::testing::random_instance(15, 8, 4.0);
  Rng rng(4);
  TaskSequence order(15);
  std::iota(order.begin(), order.end(), 1);
  auto sol = resplit(order, inst, SplitPolicy::kOptimal);
  for (int i = 0; i < 100; ++i) {
    sol = mutate(sol, inst, rng, 1.0, i % 2 ? SplitPolicy::kGreedy : SplitPolicy::kOptimal);
    EXPECT_TRUE(evaluate(sol, inst).capacity_feasible);
    EXPECT_EQ(orchard::testing::sorted_tasks(sol.trips()), order);
  }
}

TEST(Selection, ElitistAndDistinct) {
  const auto inst = orchard::testing::random_instance(6, 1, 2.0);
  Rng rng(2);
  std::vector<Individual> parents;
  std::vector<Individual> offspring;
  std::mt19937_64 gen(7);
  for (int i = 0; i < 4; ++i) parents.push_back(make_individual(orchard::testing::random_solution(inst, gen), inst));
  std::sort(parents.begin(), parents.end(), better);
  for (auto ind : parents) {
    ind.energy += 1000.0;
    offspring.push_back(ind);
  }
  const auto kept = environmental_selection(parents, offspring, parents.size());
  ASSERT_EQ(kept.size(), parents.size());
  for (std::size_t i = 0; i < kept.size(); ++i) EXPECT_EQ(kept[i].energy, parents[i].energy);
  const auto one = environmental_selection(parents, offspring, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].energy, parents[0].energy);
}

TEST(Config, JsonRoundTrip) {
  SolverConfig cfg;
  cfg.budget_evaluations = 1234;
  cfg.makespan_bound = 99.5;
  cfg.framework = Framework::kRepairAtEnd;
  cfg.split = SplitPolicy::kOptimal;
  nlohmann::json j = cfg;
  const auto back = j.get<SolverConfig>();
  EXPECT_EQ(nlohmann::json(back), j);
  EXPECT_EQ(config_hash(back), config_hash(cfg));
  cfg.seed = 2;
  EXPECT_NE(config_hash(back), config_hash(cfg));
}

TEST(Config, RejectsUnknownKeyAndBadValues) {
  nlohmann::json j = SolverConfig{};
  j["bogus"] = 1;
  EXPECT_THROW(j.get<SolverConfig>(), ConfigError);
  SolverConfig cfg;
  cfg.population = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = SolverConfig{};
  cfg.crossover_rate = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Run, SingleTask) {
  Instance inst({{0, 0}, {3, 4}}, {6.0}, 9.0, 3.0);
  SolverConfig cfg;
  cfg.budget_evaluations = 100;
  const auto r = run_aedga(inst, cfg);
  EXPECT_EQ(r.best.tokens(), (std::vector<int>{0, 1, 0}));
  EXPECT_DOUBLE_EQ(r.energy, 5.0 * 3.0 + 5.0 * 9.0);
}

TEST(Run, ZeroBudgetReturnsInitialBest) {
  const auto inst = orchard::testing::random_instance(12, 3, 3.0);
  SolverConfig cfg;
  cfg.budget_generations = 0;
  const auto r = run_aedga(inst, cfg);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : init_population(inst, cfg.population)) {
    best = std::min(best, evaluate(s, inst).total);
  }
  EXPECT_DOUBLE_EQ(r.energy, best);
}

TEST(Run, DeterministicAndMonotone) {
  const auto inst = orchard::testing::random_instance(20, 5, 4.0);
  SolverConfig cfg;
  cfg.budget_evaluations = 3000;
  cfg.seed = 42;
  const auto a = run_aedga(inst, cfg);
  const auto b = run_aedga(inst, cfg);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(history_csv(a.history), history_csv(b.history));
  for (std::size_t i = 1; i < a.history.size(); ++i) {
    EXPECT_LE(a.history[i].best_energy, a.history[i - 1].best_energy);
    EXPECT_GE(a.history[i].evaluations, a.history[i - 1].evaluations);
  }
  EXPECT_DOUBLE_EQ(a.energy, evaluate(a.best, inst).total);
  EXPECT_TRUE(evaluate(a.best, inst).capacity_feasible);
  EXPECT_EQ(history_csv(a.history).substr(0, 36), "generation,best_z,evaluations,a1,a2,");
}

TEST(Run, InfiniteBoundMatchesPlainRun) {
  const auto inst = orchard::testing::random_instance(15, 6, 3.0);
  SolverConfig plain;
  plain.budget_evaluations = 1500;
  const auto base = run_aedga(inst, plain);
  for (const auto fr : {Framework::kRepairEachGeneration, Framework::kDiscardEachGeneration,
                        Framework::kRepairAtEnd}) {
    SolverConfig cfg = plain;
    cfg.framework = fr;
    cfg.robots = 2;
    cfg.makespan_bound = std::numeric_limits<double>::infinity();
    const auto r = run_aedga(inst, cfg);
    EXPECT_EQ(r.best, base.best);
    EXPECT_EQ(history_csv(r.history), history_csv(base.history));
  }
}
