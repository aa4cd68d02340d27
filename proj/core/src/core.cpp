#include "orchard/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orchard/error.hpp"

namespace orchard {

double euclidean(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

DistanceMatrix::DistanceMatrix(std::span<const Point> coords)
    : n_(coords.size()), d_(coords.size() * coords.size(), 0.0) {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = euclidean(coords[i], coords[j]);
      d_[i * n_ + j] = d;
      d_[j * n_ + i] = d;
    }
  }
}

DistanceMatrix build_distance_matrix(std::span<const Point> coords) {
  if (coords.empty()) {
    throw ConfigError("distance matrix needs at least the depot coordinate");
  }
  return DistanceMatrix(coords);
}

Instance::Instance(std::vector<Point> coords, std::vector<double> task_yields,
                   double capacity, double robot_weight)
    : coords_(std::move(coords)), capacity_(capacity), robot_weight_(robot_weight) {
  if (coords_.empty()) throw ConfigError("instance needs a depot coordinate");
  if (coords_.size() != task_yields.size() + 1) {
    throw ConfigError("instance has " + std::to_string(coords_.size()) +
                      " coordinates but " + std::to_string(task_yields.size()) +
                      " task yields");
  }
  if (!(capacity_ > 0.0)) throw ConfigError("capacity must be positive");
  if (!(robot_weight_ > 0.0)) throw ConfigError("robot weight must be positive");
  yields_.reserve(task_yields.size() + 1);
  yields_.push_back(0.0);
  for (std::size_t k = 0; k < task_yields.size(); ++k) {
    const double q = task_yields[k];
    if (!(q > 0.0)) {
      throw ConfigError("task " + std::to_string(k + 1) + " has non-positive yield");
    }
    if (q > capacity_) {
      throw InfeasibleTaskError("task " + std::to_string(k + 1) +
                                " yield exceeds robot capacity");
    }
    yields_.push_back(q);
  }
  dist_ = build_distance_matrix(coords_);
}

Instance Instance::with_fleet(int fleet_size, std::optional<double> makespan_bound) const {
  if (fleet_size < 1) throw ConfigError("fleet size must be at least 1");
  if (makespan_bound && !(*makespan_bound > 0.0)) {
    throw ConfigError("makespan bound must be positive");
  }
  Instance copy = *this;
  copy.fleet_size_ = fleet_size;
  copy.makespan_bound_ = makespan_bound;
  return copy;
}

TripList decode_trips(std::span<const int> tokens, int task_count) {
  TripList trips;
  std::vector<char> seen(static_cast<std::size_t>(task_count) + 1, 0);
  TaskSequence current;
  for (const int t : tokens) {
    if (t == kDepot) {
      if (!current.empty()) trips.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (t < 1 || t > task_count) {
      throw RepresentationError("unknown task id " + std::to_string(t));
    }
    if (seen[static_cast<std::size_t>(t)]) {
      throw RepresentationError("task " + std::to_string(t) + " appears more than once");
    }
    seen[static_cast<std::size_t>(t)] = 1;
    current.push_back(t);
  }
  if (!current.empty()) trips.push_back(std::move(current));
  for (int t = 1; t <= task_count; ++t) {
    if (!seen[static_cast<std::size_t>(t)]) {
      throw RepresentationError("task " + std::to_string(t) + " is missing");
    }
  }
  return trips;
}

GiantSolution GiantSolution::from_tokens(std::span<const int> tokens, int task_count) {
  return from_trips(decode_trips(tokens, task_count), task_count);
}

GiantSolution GiantSolution::from_trips(const TripList& trips, int task_count) {
  GiantSolution sol;
  for (const auto& trip : trips) {
    if (trip.empty()) continue;
    sol.tokens_.insert(sol.tokens_.end(), trip.begin(), trip.end());
    sol.tokens_.push_back(kDepot);
  }
  // Re-decode to validate coverage.
  (void)decode_trips(sol.tokens_, task_count);
  return sol;
}

TripList GiantSolution::trips() const {
  TripList trips;
  TaskSequence current;
  for (const int t : tokens_) {
    if (t == kDepot) {
      if (!current.empty()) trips.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(t);
    }
  }
  return trips;
}

TaskSequence GiantSolution::task_order() const {
  TaskSequence order;
  order.reserve(tokens_.size());
  for (const int t : tokens_) {
    if (t != kDepot) order.push_back(t);
  }
  return order;
}

std::size_t GiantSolution::trip_count() const noexcept {
  return tokens_.size() <= 1 ? 0 : static_cast<std::size_t>(
      std::count(tokens_.begin(), tokens_.end(), kDepot) - 1);
}

std::string GiantSolution::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) os << ',';
    os << tokens_[i];
  }
  os << ']';
  return os.str();
}

double route_energy(std::span<const int> tasks, const DistanceMatrix& dist,
                    std::span<const double> node_yields, double robot_weight) {
  if (tasks.empty()) return 0.0;
  double load = 0.0;
  int prev = kDepot;
  double energy = 0.0;
  for (const int t : tasks) {
    energy += dist(prev, t) * (robot_weight + load);
    load += node_yields[static_cast<std::size_t>(t)];
    prev = t;
  }
  energy += dist(prev, kDepot) * (robot_weight + load);
  return energy;
}

double trip_energy(std::span<const int> tasks, const Instance& inst) {
  if (tasks.empty()) throw Error("trip energy of an empty trip");
  for (const int t : tasks) {
    if (t < 1 || t > inst.task_count()) {
      throw Error("trip references unknown task id " + std::to_string(t));
    }
  }
  return route_energy(tasks, inst.distances(), inst.yields(), inst.robot_weight());
}

double trip_load(std::span<const int> tasks, const Instance& inst) {
  double load = 0.0;
  for (const int t : tasks) load += inst.yield(t);
  return load;
}

Trip make_trip(TaskSequence tasks, const Instance& inst) {
  Trip trip;
  trip.energy = trip_energy(tasks, inst);
  trip.cumulative_load.reserve(tasks.size());
  for (const int t : tasks) {
    trip.load += inst.yield(t);
    trip.cumulative_load.push_back(trip.load);
  }
  trip.tasks = std::move(tasks);
  return trip;
}

TripList split_greedy(std::span<const int> order, const Instance& inst) {
  TripList trips;
  TaskSequence current;
  double load = 0.0;
  for (const int t : order) {
    const double q = inst.yield(t);
    if (!current.empty() && load + q > inst.capacity()) {
      trips.push_back(std::move(current));
      current.clear();
      load = 0.0;
    }
    current.push_back(t);
    load += q;
  }
  if (!current.empty()) trips.push_back(std::move(current));
  return trips;
}

TripList split_optimal(std::span<const int> order, const Instance& inst) {
  const std::size_t n = order.size();
  const double w = inst.robot_weight();
  std::vector<double> best(n + 1, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> pred(n + 1, 0);
  best[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(best[i])) continue;
    double load = 0.0;
    double open = 0.0;  // energy from depot to order[j], not yet returned
    for (std::size_t j = i; j < n; ++j) {
      const int t = order[j];
      if (j == i) {
        open = inst.distance(kDepot, t) * w;
      } else {
        open += inst.distance(order[j - 1], t) * (w + load);
      }
      load += inst.yield(t);
      if (load > inst.capacity()) break;
      const double cost = best[i] + open + inst.distance(t, kDepot) * (w + load);
      if (cost < best[j + 1]) {
        best[j + 1] = cost;
        pred[j + 1] = i;
      }
    }
  }
  TripList trips;
  for (std::size_t j = n; j > 0; j = pred[j]) {
    trips.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(pred[j]),
                       order.begin() + static_cast<std::ptrdiff_t>(j));
  }
  std::reverse(trips.begin(), trips.end());
  return trips;
}

Evaluation evaluate(const GiantSolution& sol, const Instance& inst) {
  Evaluation ev;
  for (auto& trip : sol.trips()) {
    if (trip_load(trip, inst) <= inst.capacity()) {
      ev.trip_energies.push_back(trip_energy(trip, inst));
      ev.scored_trips.push_back(std::move(trip));
      continue;
    }
    ev.capacity_feasible = false;
    ev.penalized = true;
    for (auto& part : split_greedy(trip, inst)) {
      ev.trip_energies.push_back(trip_energy(part, inst));
      ev.scored_trips.push_back(std::move(part));
    }
  }
  for (const double e : ev.trip_energies) ev.total += e;
  return ev;
}

double total_energy(const TripList& trips, const Instance& inst) {
  double z = 0.0;
  for (const auto& trip : trips) {
    z += route_energy(trip, inst.distances(), inst.yields(), inst.robot_weight());
  }
  return z;
}

}  // namespace orchard
