#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "orchard/core.hpp"

namespace orchard::testing {

/// Depot at the origin, tasks at (10k, 0) for k = 1..count.
inline Instance line_instance(int count, double yield, double capacity, double weight) {
  std::vector<Point> pts{{0.0, 0.0}};
  std::vector<double> q;
  for (int k = 1; k <= count; ++k) {
    pts.push_back({10.0 * k, 0.0});
    q.push_back(yield);
  }
  return Instance(pts, q, capacity, weight);
}

/// Uniform tasks in a 20 x 20 square with integer yields in [40, 70].
/// `trips_forced` > 0 sets Q so that about that many trips are needed.
inline Instance random_instance(int n, std::uint64_t seed, double trips_forced = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  std::uniform_int_distribution<int> y(40, 70);
  std::vector<Point> pts{{u(rng), u(rng)}};
  std::vector<double> q;
  double total = 0.0;
  double largest = 0.0;
  for (int i = 0; i < n; ++i) {
    pts.push_back({u(rng), u(rng)});
    q.push_back(y(rng));
    total += q.back();
    largest = std::max(largest, q.back());
  }
  const double cap = trips_forced > 0.0 ? std::max(largest, std::ceil(total / trips_forced)) : 300.0;
  return Instance(pts, q, cap, cap / 3.0);
}

/// Random task order cut into trips at random positions (may overflow Q).
inline GiantSolution random_solution(const Instance& inst, std::mt19937_64& rng) {
  TaskSequence order(static_cast<std::size_t>(inst.task_count()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i) + 1;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> tokens{kDepot};
  std::bernoulli_distribution cut(0.3);
  for (const int t : order) {
    tokens.push_back(t);
    if (cut(rng)) tokens.push_back(kDepot);
  }
  tokens.push_back(kDepot);
  return GiantSolution::from_tokens(tokens, inst.task_count());
}

inline std::vector<int> sorted_tasks(const TripList& trips) {
  std::vector<int> all;
  for (const auto& t : trips) all.insert(all.end(), t.begin(), t.end());
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace orchard::testing
