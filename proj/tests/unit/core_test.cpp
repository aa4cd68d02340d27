#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "orchard/core.hpp"
#include "orchard/error.hpp"

using namespace orchard;
using orchard::testing::line_instance;

TEST(Distance, ThreeFourFive) {
  std::vector<Point> pts{{0, 0}, {3, 4}};
  const auto d = build_distance_matrix(pts);
  EXPECT_DOUBLE_EQ(d(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(d(1, 0), 5.0);
  EXPECT_DOUBLE_EQ(d(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(d(1, 1), 0.0);
}

TEST(Distance, Diagonal) {
  std::vector<Point> pts{{0, 0}, {1, 0}, {0, 1}};
  const auto d = build_distance_matrix(pts);
  EXPECT_NEAR(d(1, 2), std::sqrt(2.0), 1e-12);
}

TEST(Distance, EmptyIsError) {
  std::vector<Point> pts;
  EXPECT_THROW(build_distance_matrix(pts), ConfigError);
}

TEST(Decode, SplitsAtDepots) {
  std::vector<int> tokens{0, 2, 8, 0, 5, 0};
  // Tasks 1..8 must all appear for a full decode; use a custom count check.
  EXPECT_THROW(decode_trips(tokens, 8), RepresentationError);
  std::vector<int> full{0, 2, 8, 0, 5, 0, 1, 3, 4, 6, 7, 0};
  const auto trips = decode_trips(full, 8);
  ASSERT_EQ(trips.size(), 3u);
  EXPECT_EQ(trips[0], (TaskSequence{2, 8}));
  EXPECT_EQ(trips[1], (TaskSequence{5}));
}

TEST(Decode, SingletonAndSingleTrip) {
  std::vector<int> a{0, 1, 0};
  EXPECT_EQ(decode_trips(a, 1), (TripList{{1}}));
  std::vector<int> b{0, 1, 2, 3, 0};
  EXPECT_EQ(decode_trips(b, 3), (TripList{{1, 2, 3}}));
}

TEST(Decode, DuplicateOrMissing) {
  std::vector<int> dup{0, 1, 1, 0};
  EXPECT_THROW(decode_trips(dup, 2), RepresentationError);
  std::vector<int> unknown{0, 1, 3, 0};
  EXPECT_THROW(decode_trips(unknown, 2), RepresentationError);
}

TEST(GiantSolution, CanonicalTokens) {
  std::vector<int> messy{0, 0, 2, 0, 0, 1, 0};
  const auto sol = GiantSolution::from_tokens(messy, 2);
  EXPECT_EQ(sol.tokens(), (std::vector<int>{0, 2, 0, 1, 0}));
  EXPECT_EQ(sol.trip_count(), 2u);
  EXPECT_EQ(sol.task_order(), (TaskSequence{2, 1}));
}

TEST(TripEnergy, SingleTask) {
  const auto inst = line_instance(1, 5.0, 10.0, 20.0);
  std::vector<int> trip{1};
  EXPECT_DOUBLE_EQ(trip_energy(trip, inst), 450.0);
}

TEST(TripEnergy, TwoCollinearTasks) {
  const auto inst = line_instance(2, 5.0, 10.0, 20.0);
  std::vector<int> trip{1, 2};
  EXPECT_DOUBLE_EQ(trip_energy(trip, inst), 1050.0);
}

TEST(TripEnergy, Errors) {
  const auto inst = line_instance(2, 5.0, 10.0, 20.0);
  std::vector<int> empty;
  EXPECT_THROW(trip_energy(empty, inst), Error);
  std::vector<int> bad{3};
  EXPECT_THROW(trip_energy(bad, inst), Error);
}

TEST(TripEnergy, ZeroWeightsGiveZero) {
  std::vector<Point> pts{{0, 0}, {1, 2}, {3, 1}};
  DistanceMatrix d(pts);
  std::vector<double> q{0, 0, 0};
  std::vector<int> trip{1, 2};
  EXPECT_DOUBLE_EQ(route_energy(trip, d, q, 0.0), 0.0);
}

TEST(Evaluate, TwoTripsUnpenalized) {
  const auto inst = line_instance(2, 5.0, 10.0, 20.0);
  std::vector<int> tokens{0, 1, 0, 2, 0};
  const auto ev = evaluate(GiantSolution::from_tokens(tokens, 2), inst);
  EXPECT_DOUBLE_EQ(ev.total, 1350.0);
  EXPECT_FALSE(ev.penalized);
  EXPECT_TRUE(ev.capacity_feasible);
}

TEST(Evaluate, OverflowIsPenalized) {
  const auto inst = line_instance(2, 5.0, 8.0, 20.0);
  std::vector<int> tokens{0, 1, 2, 0};
  const auto ev = evaluate(GiantSolution::from_tokens(tokens, 2), inst);
  EXPECT_DOUBLE_EQ(ev.total, 1350.0);
  EXPECT_TRUE(ev.penalized);
  EXPECT_FALSE(ev.capacity_feasible);
  EXPECT_EQ(ev.scored_trips, (TripList{{1}, {2}}));
}

TEST(Evaluate, ZeroTasks) {
  Instance inst({{0, 0}}, {}, 10.0, 1.0);
  EXPECT_DOUBLE_EQ(evaluate(GiantSolution{}, inst).total, 0.0);
}

TEST(Instance, RejectsOversizedTask) {
  EXPECT_THROW(Instance({{0, 0}, {1, 1}}, {11.0}, 10.0, 1.0), Error);
  EXPECT_THROW(Instance({{0, 0}, {1, 1}}, {5.0}, 10.0, 0.0), Error);
  EXPECT_THROW(Instance({{0, 0}}, {5.0}, 10.0, 1.0), Error);
}

TEST(Split, GreedyAndOptimalAreFeasible) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const auto inst = orchard::testing::random_instance(9, rep, 3.0);
    TaskSequence order(9);
    for (int i = 0; i < 9; ++i) order[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(order.begin(), order.end(), rng);
    const auto g = split_greedy(order, inst);
    const auto o = split_optimal(order, inst);
    for (const auto& t : g) EXPECT_LE(trip_load(t, inst), inst.capacity());
    for (const auto& t : o) EXPECT_LE(trip_load(t, inst), inst.capacity());
    EXPECT_LE(total_energy(o, inst), total_energy(g, inst) + 1e-9);
  }
}

// Property: the total is the sum of the scored trips, and a feasible input
// is scored as given.
TEST(Evaluate, DecompositionProperty) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 300; ++rep) {
    const auto inst = orchard::testing::random_instance(1 + rep % 12, 100 + rep, 3.0);
    const auto sol = orchard::testing::random_solution(inst, rng);
    const auto ev = evaluate(sol, inst);
    double sum = 0.0;
    for (const auto& t : ev.scored_trips) {
      EXPECT_LE(trip_load(t, inst), inst.capacity());
      sum += trip_energy(t, inst);
    }
    EXPECT_NEAR(ev.total, sum, 1e-9 * std::max(1.0, sum));
    EXPECT_EQ(orchard::testing::sorted_tasks(ev.scored_trips).size(),
              static_cast<std::size_t>(inst.task_count()));
    if (ev.capacity_feasible) {
      EXPECT_FALSE(ev.penalized);
      EXPECT_EQ(ev.scored_trips, sol.trips());
      EXPECT_EQ(ev.total, total_energy(sol.trips(), inst));
    }
  }
}
