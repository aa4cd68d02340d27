#pragma once

// Clustering-based local search. The trip whose tasks form two clusters
// lying farthest apart is treated as the most stretched one; its tasks
// are pooled with the trip nearest to its outer cluster, re-split between
// the two trips, and both visiting orders are re-optimized by an ant colony.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "orchard/core.hpp"

namespace orchard {

/// Two-means partition of a point set. Member lists hold indices into the
/// clustered sequence (positions for kmeans_two, task ids for trips).
struct ClusterSplit {
  std::vector<int> members_a;
  std::vector<int> members_b;
  Point centroid_a;
  Point centroid_b;
  double separation = 0.0;
};

/// Lloyd iterations with k = 2, seeded with the two mutually farthest
/// points, until the assignment is stable (at most 100 rounds). Points
/// equidistant to both centroids keep their cluster. Needs >= 2 points.
ClusterSplit kmeans_two(std::span<const Point> points);

/// kmeans_two over the task coordinates of `trip`; members are task ids.
ClusterSplit cluster_trip(std::span<const int> trip, const Instance& inst);

struct TargetTrip {
  std::size_t trip_index = 0;
  ClusterSplit split;
};

/// Multi-task trip with the largest strictly positive centroid separation.
std::optional<TargetTrip> choose_target_trip(const TripList& trips, const Instance& inst);

/// Centroid of the cluster farther from the depot. On an exact tie the
/// cluster with the larger sum of task ids wins.
Point far_centroid(const ClusterSplit& split, const Instance& inst);

Point trip_centroid(std::span<const int> trip, const Instance& inst);

/// Trip other than `target` whose centroid is nearest to `far`.
std::optional<std::size_t> choose_candidate_trip(const TripList& trips, std::size_t target,
                                                 Point far, const Instance& inst);

/// Re-splits the union of two trips along a polar sweep around the pool
/// centroid: among circular arcs of the sweep whose two sides both fit in
/// one robot, picks the most load-balanced one (then the cheaper one).
/// Returns the inputs unchanged when no such arc exists.
std::pair<TaskSequence, TaskSequence> recombine(const TaskSequence& target,
                                                const TaskSequence& candidate,
                                                const Instance& inst);

struct AcoParams {
  int colony_size = 10;
  int iterations = 1;
  double alpha = 1.0;
  double beta = 2.0;
  double rho = 0.1;
  double tau_min = 0.01;
  double tau_max = 10.0;
  /// Polish each iteration's best ant with 2-opt and relocation moves.
  bool local_search = true;

  void validate() const;
};

/// Max-min ant system over the visiting order of one trip, scored by the
/// load-dependent trip energy. Never returns an order worse than `trip`.
TaskSequence aco_tour(const TaskSequence& trip, const Instance& inst, const AcoParams& params,
                      Rng& rng);

/// Iteration count ceil(items * sigma), at least 1.
int scaled_iterations(std::size_t items, double sigma);

struct ClsmParams {
  double sigma = 0.2;
  int colony_size = 10;
  /// Template for the per-trip colony; `iterations` is recomputed per trip.
  AcoParams aco;
};

struct ClsmResult {
  GiantSolution solution;
  double energy = 0.0;
  int rounds = 0;
  int evaluations = 0;
};

/// Runs ceil(trips * sigma) rounds of target/candidate selection,
/// recombination and tour re-optimization, and returns the cheapest
/// solution seen (the input included).
ClsmResult clsm_step(const GiantSolution& sol, const Instance& inst, const ClsmParams& params,
                     Rng& rng);

}  // namespace orchard
