#include <gtest/gtest.h>

#include <limits>

#include "fixtures.hpp"
#include "orchard/error.hpp"
#include "orchard/oracle.hpp"
#include "orchard/scheduler.hpp"

using namespace orchard;

TEST(Assign, PerfectFit) {
  const std::vector<double> e{5, 5, 5};
  const auto s = makespan_assign(e, 3, 5.0);
  ASSERT_TRUE(s.has_value());
  EXPECT_DOUBLE_EQ(s->makespan(), 5.0);
  EXPECT_TRUE(validate_schedule(*s, e, 3, 5.0));
}

TEST(Assign, SumBound) {
  const std::vector<double> e{6, 5};
  EXPECT_FALSE(makespan_assign(e, 1, 10.0).has_value());
}

TEST(Assign, NeedsSearch) {
  const std::vector<double> e{4, 3, 3, 2, 2};
  const auto s = makespan_assign(e, 2, 7.0);
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(validate_schedule(*s, e, 2, 7.0));
  EXPECT_TRUE(exact_schedule(e, 2, 7.0));
}

TEST(Assign, Tolerance) {
  const std::vector<double> e{0.1, 0.2};
  EXPECT_TRUE(makespan_assign(e, 1, 0.3).has_value());
  EXPECT_TRUE(fits_bound(0.30000000000000004, 0.3));
  EXPECT_FALSE(fits_bound(0.301, 0.3));
}

TEST(Assign, ManyTripsFallback) {
  std::vector<double> e(30, 1.0);
  const auto s = makespan_assign(e, 3, 10.0);
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(validate_schedule(*s, e, 3, 10.0));
}

TEST(Assign, AgreesWithOracle) {
  Rng rng(17);
  std::uniform_int_distribution<int> trips(1, 10), robots(1, 4), val(1, 20);
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<double> e(static_cast<std::size_t>(trips(rng)));
    double total = 0.0;
    for (auto& v : e) total += v = val(rng);
    const int m = robots(rng);
    const double bound = std::max(1.0, std::round(total / m + val(rng) % 5 - 2));
    const auto s = makespan_assign(e, m, bound);
    EXPECT_EQ(s.has_value(), exact_schedule(e, m, bound));
    if (s) EXPECT_TRUE(validate_schedule(*s, e, m, bound));
  }
}

TEST(Validate, RejectsBrokenSchedules) {
  const std::vector<double> e{4, 3};
  Schedule s;
  s.robot_of_trip = {0, 0};
  s.robot_energy = {7.0, 0.0};
  EXPECT_TRUE(validate_schedule(s, e, 2, 7.0));
  EXPECT_FALSE(validate_schedule(s, e, 2, 6.0));
  s.robot_of_trip = {0, 2};
  EXPECT_FALSE(validate_schedule(s, e, 2, 7.0));
}

TEST(Repair, FeasibleInputUnchanged) {
  const auto inst = orchard::testing::line_instance(2, 5.0, 10.0, 20.0);
  const auto sol = GiantSolution::from_tokens(std::vector<int>{0, 1, 0, 2, 0}, 2);
  const auto r = repair(sol, inst, 2, 1000.0);
  EXPECT_EQ(r.status, RepairStatus::kRepaired);
  EXPECT_EQ(r.solution, sol);
  EXPECT_TRUE(r.moves.empty());
}

TEST(Repair, SplitsLongTrip) {
  const auto inst = orchard::testing::line_instance(2, 5.0, 10.0, 20.0);
  const auto sol = GiantSolution::from_tokens(std::vector<int>{0, 1, 2, 0}, 2);
  const auto r = repair(sol, inst, 2, 1000.0);
  EXPECT_EQ(r.status, RepairStatus::kRepaired);
  EXPECT_EQ(r.solution.trips(), (TripList{{1}, {2}}));
  ASSERT_EQ(r.moves.size(), 1u);
  EXPECT_EQ(r.moves[0].task, 2);
  EXPECT_DOUBLE_EQ(r.moves[0].pair_after, 1350.0);
  ASSERT_TRUE(r.schedule.has_value());
  EXPECT_DOUBLE_EQ(r.schedule->makespan(), 900.0);
}

TEST(Repair, UnsatisfiableBound) {
  const auto inst = orchard::testing::line_instance(2, 5.0, 10.0, 20.0);
  const auto sol = GiantSolution::from_tokens(std::vector<int>{0, 1, 2, 0}, 2);
  const auto r = repair(sol, inst, 2, 100.0);
  EXPECT_EQ(r.status, RepairStatus::kInfeasible);
  EXPECT_FALSE(r.schedule.has_value());
}

TEST(Repair, Properties) {
  std::mt19937_64 gen(23);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = orchard::testing::random_instance(12, seed, 3.0);
    TaskSequence order(12);
    for (int i = 0; i < 12; ++i) order[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(order.begin(), order.end(), gen);
    const auto sol = GiantSolution::from_trips(split_greedy(order, inst), 12);
    const double z = evaluate(sol, inst).total;
    const int m = 2 + static_cast<int>(seed % 3);
    const double bound = z / m * (seed % 2 ? 1.05 : 0.9);
    const auto r = repair(sol, inst, m, bound);
    const auto trips = r.solution.trips();
    EXPECT_EQ(orchard::testing::sorted_tasks(trips), (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}));
    for (const auto& t : trips) EXPECT_LE(trip_load(t, inst), inst.capacity());
    for (const auto& mv : r.moves) EXPECT_LE(mv.pair_after, mv.pair_before);
    std::vector<double> e;
    for (const auto& t : trips) e.push_back(trip_energy(t, inst));
    if (r.status == RepairStatus::kRepaired) {
      ASSERT_TRUE(r.schedule.has_value());
      EXPECT_TRUE(validate_schedule(*r.schedule, e, m, bound));
    } else {
      EXPECT_FALSE(r.schedule.has_value());
    }
  }
}

TEST(Framework, Parse) {
  EXPECT_EQ(parse_framework("fr2"), Framework::kDiscardEachGeneration);
  EXPECT_EQ(to_string(Framework::kRepairAtEnd), "Fr3");
  EXPECT_THROW(parse_framework("Fr4"), ConfigError);
}

TEST(Thresholds, Arithmetic) {
  auto t = thresholds(300.0, 2);
  EXPECT_DOUBLE_EQ(t.th1, 225.0);
  EXPECT_DOUBLE_EQ(t.th2, 255.0);
  t = thresholds(300.0, 5);
  EXPECT_DOUBLE_EQ(t.th1, 90.0);
  EXPECT_DOUBLE_EQ(t.th2, 102.0);
  EXPECT_THROW(thresholds(300.0, 0), ConfigError);
}

TEST(ScheduleJson, Shape) {
  const std::vector<double> e{4, 3, 3};
  const TripList trips{{1}, {2, 3}, {4}};
  const auto s = makespan_assign(e, 2, 7.0);
  ASSERT_TRUE(s.has_value());
  const auto j = schedule_to_json(*s, trips, e);
  ASSERT_EQ(j["robots"].size(), 2u);
  double sum = 0.0;
  std::size_t seen = 0;
  for (const auto& r : j["robots"]) {
    sum += r["energy"].get<double>();
    seen += r["trips"].size();
  }
  EXPECT_DOUBLE_EQ(sum, 10.0);
  EXPECT_EQ(seen, 3u);
  EXPECT_TRUE(j["exact"].get<bool>());
}
