#pragma once

// Domain types for multi-trip picking-robot routing and the load-dependent
// energy model. A robot of self-weight W carries the accumulated yield of
// the tasks it has visited on the current trip, so every arc costs
// distance * (W + load on board).

#include <compare>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace orchard {

using Rng = std::mt19937_64;

inline constexpr int kDepot = 0;

/// Ordered task ids of one depot-to-depot trip (depot not included).
using TaskSequence = std::vector<int>;
using TripList = std::vector<TaskSequence>;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double euclidean(Point a, Point b);

/// Dense symmetric matrix of full-precision Euclidean distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::span<const Point> coords);

  std::size_t size() const noexcept { return n_; }
  double operator()(int i, int j) const noexcept {
    return d_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Throws ConfigError when `coords` is empty (the depot is mandatory).
DistanceMatrix build_distance_matrix(std::span<const Point> coords);

/// A problem instance. Node 0 is the depot, nodes 1..n are tasks.
class Instance {
 public:
  Instance() = default;

  /// `task_yields[k]` is the yield of task k+1. Validates 0 < q <= Q,
  /// W > 0 and coords.size() == task_yields.size() + 1.
  Instance(std::vector<Point> coords, std::vector<double> task_yields,
           double capacity, double robot_weight);

  int task_count() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  int node_count() const noexcept { return static_cast<int>(coords_.size()); }

  const std::vector<Point>& coords() const noexcept { return coords_; }
  Point coord(int node) const { return coords_.at(static_cast<std::size_t>(node)); }
  const DistanceMatrix& distances() const noexcept { return dist_; }
  double distance(int i, int j) const noexcept { return dist_(i, j); }

  /// Yield of `node`; the depot has yield 0.
  double yield(int node) const noexcept { return yields_[static_cast<std::size_t>(node)]; }
  /// Indexed by node, element 0 is the depot.
  std::span<const double> yields() const noexcept { return yields_; }

  double capacity() const noexcept { return capacity_; }
  double robot_weight() const noexcept { return robot_weight_; }

  int fleet_size() const noexcept { return fleet_size_; }
  std::optional<double> makespan_bound() const noexcept { return makespan_bound_; }

  /// Copy with the route-scheduling parameters set. m >= 1, E_max > 0.
  Instance with_fleet(int fleet_size, std::optional<double> makespan_bound) const;

  std::string name;
  /// Free-form header lines carried through parse/emit.
  std::vector<std::string> comments;
  /// Where the numbers came from and how they were interpreted.
  std::string provenance;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Point> coords_;
  std::vector<double> yields_;
  DistanceMatrix dist_;
  double capacity_ = 0.0;
  double robot_weight_ = 0.0;
  int fleet_size_ = 1;
  std::optional<double> makespan_bound_;
};

/// Splits a token sequence at depot markers. Every task 1..task_count must
/// appear exactly once; throws RepresentationError otherwise.
TripList decode_trips(std::span<const int> tokens, int task_count);

/// Permutation of all tasks with depot separators (the unit of evolution).
/// Stored canonically: leading and trailing depot, no repeated depots.
class GiantSolution {
 public:
  GiantSolution() : tokens_{kDepot} {}

  static GiantSolution from_tokens(std::span<const int> tokens, int task_count);
  static GiantSolution from_trips(const TripList& trips, int task_count);

  const std::vector<int>& tokens() const noexcept { return tokens_; }
  TripList trips() const;
  /// Task ids in visiting order with the separators removed.
  TaskSequence task_order() const;
  std::size_t trip_count() const noexcept;
  std::string to_string() const;

  friend bool operator==(const GiantSolution&, const GiantSolution&) = default;
  friend auto operator<=>(const GiantSolution& a, const GiantSolution& b) {
    return a.tokens_ <=> b.tokens_;
  }

 private:
  std::vector<int> tokens_;
};

/// Load-dependent energy of one trip, independent of capacity feasibility.
/// `node_yields` is indexed by node id.
double route_energy(std::span<const int> tasks, const DistanceMatrix& dist,
                    std::span<const double> node_yields, double robot_weight);

/// Throws Error for an empty trip or an unknown task id.
double trip_energy(std::span<const int> tasks, const Instance& inst);

double trip_load(std::span<const int> tasks, const Instance& inst);

struct Trip {
  TaskSequence tasks;
  std::vector<double> cumulative_load;
  double load = 0.0;
  double energy = 0.0;

  bool capacity_feasible(double capacity) const noexcept { return load <= capacity; }
};

Trip make_trip(TaskSequence tasks, const Instance& inst);

/// Left-to-right split that starts a new trip right before the task whose
/// pickup would exceed capacity.
TripList split_greedy(std::span<const int> order, const Instance& inst);

/// Minimum-energy split of a fixed visiting order into capacity-feasible
/// trips (shortest path over split points).
TripList split_optimal(std::span<const int> order, const Instance& inst);

struct Evaluation {
  double total = 0.0;
  /// Trips actually charged, after overflow expansion.
  TripList scored_trips;
  std::vector<double> trip_energies;
  bool capacity_feasible = true;
  bool penalized = false;
};

/// Total energy. An overflowing trip is charged as if the robot unloads at
/// the depot right before the task that would overflow and then continues.
Evaluation evaluate(const GiantSolution& sol, const Instance& inst);

/// Sum of trip energies for trips known to be capacity-feasible.
double total_energy(const TripList& trips, const Instance& inst);

}  // namespace orchard
