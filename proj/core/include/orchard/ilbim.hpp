#pragma once

// Load-distance balanced construction of the initial population. Tasks far
// from the depot with small yields are served first; heavy tasks close to
// the depot are deferred to the end of trips.

#include <vector>

#include "orchard/core.hpp"

namespace orchard {

/// Complementary weights of the distance ranking and the yield ranking.
struct WeightPair {
  double distance_weight = 0.5;  // beta1
  double yield_weight = 0.5;     // beta2 = 1 - beta1

  static WeightPair from_distance_weight(double beta1);
};

/// Task ids ordered by ascending blended rank.
using CompositeRanking = std::vector<int>;

/// Blends the 1-based positions of each task in S1 (depot distance,
/// descending) and S2 (yield, ascending). Ties go to the smaller id.
CompositeRanking composite_ranking(const Instance& inst, double beta1);

/// Builds capacity-feasible trips from `ranking`: each trip is seeded with
/// the first unserved task, then grows toward the task with the best
/// blended rank of proximity and residual-capacity share, as long as that
/// task is no farther than the depot.
GiantSolution construct_solution(const CompositeRanking& ranking, double beta1,
                                 const Instance& inst);

/// Weight used by individual `index` (0-based) of a population of `size`.
double population_weight(int index, int size);

/// One individual per weight of the arithmetic sequence 0, 1/(P-1), ..., 1.
/// Deterministic. Throws ConfigError for size < 1.
std::vector<GiantSolution> init_population(const Instance& inst, int size);

}  // namespace orchard
