#include "orchard/ilbim.hpp"

#include <algorithm>
#include <numeric>

#include "orchard/error.hpp"

namespace orchard {

namespace {

void check_weight(double beta1) {
  if (!(beta1 >= 0.0 && beta1 <= 1.0)) throw ConfigError("ranking weight must lie in [0, 1]");
}

/// Position (1-based) of each task in `order`, indexed by task id.
std::vector<int> positions(const std::vector<int>& order, int task_count) {
  std::vector<int> pos(static_cast<std::size_t>(task_count) + 1, 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    pos[static_cast<std::size_t>(order[k])] = static_cast<int>(k) + 1;
  }
  return pos;
}

}  // namespace

WeightPair WeightPair::from_distance_weight(double beta1) {
  check_weight(beta1);
  return WeightPair{beta1, 1.0 - beta1};
}

CompositeRanking composite_ranking(const Instance& inst, double beta1) {
  const auto w = WeightPair::from_distance_weight(beta1);
  const int n = inst.task_count();
  std::vector<int> tasks(static_cast<std::size_t>(n));
  std::iota(tasks.begin(), tasks.end(), 1);

  auto by_distance = tasks;
  std::stable_sort(by_distance.begin(), by_distance.end(), [&](int a, int b) {
    return inst.distance(kDepot, a) > inst.distance(kDepot, b);
  });
  auto by_yield = tasks;
  std::stable_sort(by_yield.begin(), by_yield.end(),
                   [&](int a, int b) { return inst.yield(a) < inst.yield(b); });

  const auto rank1 = positions(by_distance, n);
  const auto rank2 = positions(by_yield, n);
  std::vector<double> blended(static_cast<std::size_t>(n) + 1, 0.0);
  for (const int t : tasks) {
    const auto i = static_cast<std::size_t>(t);
    blended[i] = w.distance_weight * rank1[i] + w.yield_weight * rank2[i];
  }
  std::stable_sort(tasks.begin(), tasks.end(), [&](int a, int b) {
    return blended[static_cast<std::size_t>(a)] < blended[static_cast<std::size_t>(b)];
  });
  return tasks;
}

GiantSolution construct_solution(const CompositeRanking& ranking, double beta1,
                                 const Instance& inst) {
  const auto w = WeightPair::from_distance_weight(beta1);
  const double cap = inst.capacity();
  for (const int t : ranking) {
    if (inst.yield(t) > cap) {
      throw InfeasibleTaskError("task " + std::to_string(t) + " cannot fit an empty robot");
    }
  }

  std::vector<int> remaining = ranking;  // kept in ranking order
  TripList trips;
  std::vector<int> feasible;
  std::vector<double> blended(static_cast<std::size_t>(inst.node_count()), 0.0);

  while (!remaining.empty()) {
    int current = remaining.front();
    remaining.erase(remaining.begin());
    double load = inst.yield(current);
    TaskSequence trip{current};

    while (!remaining.empty()) {
      feasible.clear();
      for (const int j : remaining) {
        if (load + inst.yield(j) <= cap) feasible.push_back(j);
      }
      if (feasible.empty()) break;
      std::sort(feasible.begin(), feasible.end());

      // S1': proximity to the current task, nearest first.
      auto near = feasible;
      std::stable_sort(near.begin(), near.end(), [&](int a, int b) {
        return inst.distance(current, a) < inst.distance(current, b);
      });
      // S2': share of the remaining capacity, largest first.
      const double free = cap - load;
      auto share = feasible;
      std::stable_sort(share.begin(), share.end(), [&](int a, int b) {
        return inst.yield(a) / free > inst.yield(b) / free;
      });
      for (std::size_t k = 0; k < near.size(); ++k) {
        blended[static_cast<std::size_t>(near[k])] = w.distance_weight * static_cast<double>(k + 1);
      }
      for (std::size_t k = 0; k < share.size(); ++k) {
        blended[static_cast<std::size_t>(share[k])] += w.yield_weight * static_cast<double>(k + 1);
      }
      const int next = *std::min_element(feasible.begin(), feasible.end(), [&](int a, int b) {
        const double ra = blended[static_cast<std::size_t>(a)];
        const double rb = blended[static_cast<std::size_t>(b)];
        return ra < rb || (ra == rb && a < b);
      });

      if (inst.distance(current, kDepot) < inst.distance(current, next)) break;
      trip.push_back(next);
      load += inst.yield(next);
      remaining.erase(std::find(remaining.begin(), remaining.end(), next));
      current = next;
    }
    trips.push_back(std::move(trip));
  }
  return GiantSolution::from_trips(trips, inst.task_count());
}

double population_weight(int index, int size) {
  if (size < 1) throw ConfigError("population size must be at least 1");
  if (size == 1) return 0.5;
  return static_cast<double>(index) / static_cast<double>(size - 1);
}

std::vector<GiantSolution> init_population(const Instance& inst, int size) {
  if (size < 1) throw ConfigError("population size must be at least 1");
  std::vector<GiantSolution> population;
  population.reserve(static_cast<std::size_t>(size));
  for (int j = 0; j < size; ++j) {
    const double beta1 = population_weight(j, size);
    population.push_back(construct_solution(composite_ranking(inst, beta1), beta1, inst));
  }
  return population;
}

}  // namespace orchard
