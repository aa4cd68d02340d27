#pragma once

// Exhaustive ground truth for tiny instances.

#include <span>

#include "orchard/core.hpp"

namespace orchard {

inline constexpr std::size_t kMaxExactTour = 12;
inline constexpr int kMaxExactTasks = 8;
inline constexpr std::size_t kMaxExactTrips = 10;
inline constexpr int kMaxExactRobots = 4;

struct TourResult {
  TaskSequence order;
  double energy = 0.0;
};

/// Held-Karp over visited subsets. The load on board depends only on the
/// visited set, so the load-dependent arc cost keeps the DP exact.
/// Throws SizeError above kMaxExactTour tasks.
TourResult exact_tour(std::span<const int> tasks, const Instance& inst);

struct OracleResult {
  double energy = 0.0;
  GiantSolution solution;
  long partitions = 0;  // subset/block combinations examined
};

/// Optimal route generation over all capacity-feasible set partitions,
/// each block ordered by exact_tour. Throws SizeError above 8 tasks.
OracleResult exact_route_generation(const Instance& inst);

/// Exhaustive robot labeling. Throws SizeError beyond 10 trips or 4 robots.
bool exact_schedule(std::span<const double> trip_energies, int robots, double bound);

}  // namespace orchard
