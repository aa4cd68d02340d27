#include "orchard/clsm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "orchard/error.hpp"

namespace orchard {

namespace {

constexpr int kMaxLloydRounds = 100;

Point mean_of(std::span<const Point> points, const std::vector<int>& idx) {
  Point c;
  for (const int i : idx) {
    c.x += points[static_cast<std::size_t>(i)].x;
    c.y += points[static_cast<std::size_t>(i)].y;
  }
  c.x /= static_cast<double>(idx.size());
  c.y /= static_cast<double>(idx.size());
  return c;
}

double energy_of(std::span<const int> tasks, const Instance& inst) {
  return route_energy(tasks, inst.distances(), inst.yields(), inst.robot_weight());
}

/// First-improvement 2-opt and relocation on a visiting order.
void polish(TaskSequence& order, double& energy, const Instance& inst) {
  const std::size_t k = order.size();
  if (k < 3) return;
  TaskSequence trial;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 1 < k && !improved; ++i) {
      for (std::size_t j = i + 1; j < k && !improved; ++j) {
        trial = order;
        std::reverse(trial.begin() + static_cast<std::ptrdiff_t>(i),
                     trial.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        const double e = energy_of(trial, inst);
        if (e < energy - 1e-12 * std::abs(energy)) {
          order.swap(trial);
          energy = e;
          improved = true;
        }
      }
    }
    for (std::size_t from = 0; from < k && !improved; ++from) {
      for (std::size_t to = 0; to < k && !improved; ++to) {
        if (to == from) continue;
        trial = order;
        const int t = trial[from];
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(from));
        trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(to), t);
        const double e = energy_of(trial, inst);
        if (e < energy - 1e-12 * std::abs(energy)) {
          order.swap(trial);
          energy = e;
          improved = true;
        }
      }
    }
  }
}

}  // namespace

ClusterSplit kmeans_two(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (n < 2) throw ConfigError("two-means clustering needs at least two points");

  std::size_t seed_a = 0, seed_b = 1;
  double widest = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(points[i], points[j]);
      if (d > widest) {
        widest = d;
        seed_a = i;
        seed_b = j;
      }
    }
  }

  ClusterSplit split;
  if (widest == 0.0) {
    split.members_a = {0};
    for (std::size_t i = 1; i < n; ++i) split.members_b.push_back(static_cast<int>(i));
    split.centroid_a = split.centroid_b = points[0];
    return split;
  }

  Point ca = points[seed_a];
  Point cb = points[seed_b];
  std::vector<char> in_b(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    in_b[i] = euclidean(points[i], cb) < euclidean(points[i], ca) ? 1 : 0;
  }
  std::vector<int> a, b;
  for (int round = 0; round < kMaxLloydRounds; ++round) {
    a.clear();
    b.clear();
    for (std::size_t i = 0; i < n; ++i) (in_b[i] ? b : a).push_back(static_cast<int>(i));
    ca = mean_of(points, a);
    cb = mean_of(points, b);
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double da = euclidean(points[i], ca);
      const double db = euclidean(points[i], cb);
      const char next = da < db ? 0 : (db < da ? 1 : in_b[i]);
      if (next != in_b[i]) {
        in_b[i] = next;
        changed = true;
      }
    }
    if (!changed) break;
  }
  a.clear();
  b.clear();
  for (std::size_t i = 0; i < n; ++i) (in_b[i] ? b : a).push_back(static_cast<int>(i));
  split.members_a = std::move(a);
  split.members_b = std::move(b);
  split.centroid_a = mean_of(points, split.members_a);
  split.centroid_b = mean_of(points, split.members_b);
  split.separation = euclidean(split.centroid_a, split.centroid_b);
  return split;
}

ClusterSplit cluster_trip(std::span<const int> trip, const Instance& inst) {
  std::vector<Point> pts;
  pts.reserve(trip.size());
  for (const int t : trip) pts.push_back(inst.coord(t));
  ClusterSplit split = kmeans_two(pts);
  for (auto& m : split.members_a) m = trip[static_cast<std::size_t>(m)];
  for (auto& m : split.members_b) m = trip[static_cast<std::size_t>(m)];
  return split;
}

std::optional<TargetTrip> choose_target_trip(const TripList& trips, const Instance& inst) {
  std::optional<TargetTrip> best;
  double widest = 0.0;
  for (std::size_t r = 0; r < trips.size(); ++r) {
    if (trips[r].size() < 2) continue;
    ClusterSplit split = cluster_trip(trips[r], inst);
    if (split.separation > widest) {
      widest = split.separation;
      best = TargetTrip{r, std::move(split)};
    }
  }
  return best;
}

Point far_centroid(const ClusterSplit& split, const Instance& inst) {
  const Point depot = inst.coord(kDepot);
  const double da = euclidean(split.centroid_a, depot);
  const double db = euclidean(split.centroid_b, depot);
  if (da != db) return da > db ? split.centroid_a : split.centroid_b;
  const long sum_a = std::accumulate(split.members_a.begin(), split.members_a.end(), 0L);
  const long sum_b = std::accumulate(split.members_b.begin(), split.members_b.end(), 0L);
  return sum_b > sum_a ? split.centroid_b : split.centroid_a;
}

Point trip_centroid(std::span<const int> trip, const Instance& inst) {
  Point c;
  for (const int t : trip) {
    c.x += inst.coord(t).x;
    c.y += inst.coord(t).y;
  }
  c.x /= static_cast<double>(trip.size());
  c.y /= static_cast<double>(trip.size());
  return c;
}

std::optional<std::size_t> choose_candidate_trip(const TripList& trips, std::size_t target,
                                                 Point far, const Instance& inst) {
  std::optional<std::size_t> best;
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < trips.size(); ++r) {
    if (r == target || trips[r].empty()) continue;
    const double d = euclidean(far, trip_centroid(trips[r], inst));
    if (d < nearest) {
      nearest = d;
      best = r;
    }
  }
  return best;
}

std::pair<TaskSequence, TaskSequence> recombine(const TaskSequence& target,
                                                const TaskSequence& candidate,
                                                const Instance& inst) {
  if (target.empty() || candidate.empty()) throw Error("recombination needs two non-empty trips");
  TaskSequence pool = target;
  pool.insert(pool.end(), candidate.begin(), candidate.end());
  const double total = trip_load(pool, inst);
  const double cap = inst.capacity();
  if (total > 2.0 * cap) return {target, candidate};

  const Point c = trip_centroid(pool, inst);
  std::vector<std::pair<double, int>> keyed;
  keyed.reserve(pool.size());
  for (const int t : pool) {
    const Point p = inst.coord(t);
    keyed.emplace_back(std::atan2(p.y - c.y, p.x - c.x), t);
  }
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t k = 0; k < keyed.size(); ++k) pool[k] = keyed[k].second;

  const std::size_t m = pool.size();
  double best_gap = std::numeric_limits<double>::infinity();
  double best_energy = std::numeric_limits<double>::infinity();
  std::pair<TaskSequence, TaskSequence> best{target, candidate};
  TaskSequence first, second;
  for (std::size_t start = 0; start < m; ++start) {
    first.clear();
    double load = 0.0;
    for (std::size_t len = 1; len < m; ++len) {
      const int t = pool[(start + len - 1) % m];
      first.push_back(t);
      load += inst.yield(t);
      if (load > cap) break;
      const double rest = total - load;
      if (rest > cap) continue;
      const double gap = std::abs(load - rest);
      if (gap > best_gap) continue;
      second.clear();
      for (std::size_t k = len; k < m; ++k) second.push_back(pool[(start + k) % m]);
      const double e = energy_of(first, inst) + energy_of(second, inst);
      if (gap < best_gap || e < best_energy) {
        best_gap = gap;
        best_energy = e;
        best = {first, second};
      }
    }
  }
  return best;
}

void AcoParams::validate() const {
  if (colony_size < 1) throw ConfigError("colony size must be at least 1");
  if (iterations < 1) throw ConfigError("colony iterations must be at least 1");
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("evaporation rate must lie in (0, 1)");
  if (!(tau_min > 0.0 && tau_min <= tau_max)) throw ConfigError("invalid pheromone bounds");
}

TaskSequence aco_tour(const TaskSequence& trip, const Instance& inst, const AcoParams& params,
                      Rng& rng) {
  params.validate();
  const std::size_t k = trip.size();
  if (k <= 1) return trip;
  if (k == 2) {
    const TaskSequence flipped{trip[1], trip[0]};
    return energy_of(flipped, inst) < energy_of(trip, inst) ? flipped : trip;
  }

  // Local node 0 is the depot, node i (1..k) is trip[i-1].
  const std::size_t nodes = k + 1;
  auto node_id = [&](std::size_t local) { return local == 0 ? kDepot : trip[local - 1]; };
  std::vector<double> tau(nodes * nodes, params.tau_max);
  std::vector<double> eta(nodes * nodes, 0.0);
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = 0; j < nodes; ++j) {
      if (i == j) continue;
      eta[i * nodes + j] = 1.0 / (inst.distance(node_id(i), node_id(j)) + 1e-9);
    }
  }

  TaskSequence best = trip;
  double best_energy = energy_of(trip, inst);
  const double reference = best_energy > 0.0 ? best_energy : 1.0;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<char> visited(nodes, 0);
  std::vector<double> weight(nodes, 0.0);
  std::vector<std::size_t> path;
  TaskSequence tour;

  for (int it = 0; it < params.iterations; ++it) {
    TaskSequence iter_best;
    double iter_energy = std::numeric_limits<double>::infinity();
    for (int ant = 0; ant < params.colony_size; ++ant) {
      std::fill(visited.begin(), visited.end(), 0);
      path.assign(1, 0);
      std::size_t at = 0;
      for (std::size_t step = 0; step < k; ++step) {
        double sum = 0.0;
        for (std::size_t j = 1; j < nodes; ++j) {
          weight[j] = visited[j] ? 0.0
                                 : std::pow(tau[at * nodes + j], params.alpha) *
                                       std::pow(eta[at * nodes + j], params.beta);
          sum += weight[j];
        }
        double pick = unit(rng) * sum;
        std::size_t next = 0;
        for (std::size_t j = 1; j < nodes; ++j) {
          if (visited[j]) continue;
          next = j;
          pick -= weight[j];
          if (pick <= 0.0) break;
        }
        visited[next] = 1;
        path.push_back(next);
        at = next;
      }
      tour.clear();
      for (std::size_t s = 1; s < path.size(); ++s) tour.push_back(node_id(path[s]));
      const double e = energy_of(tour, inst);
      if (e < iter_energy) {
        iter_energy = e;
        iter_best = tour;
      }
    }
    if (params.local_search) polish(iter_best, iter_energy, inst);
    if (iter_energy < best_energy) {
      best_energy = iter_energy;
      best = iter_best;
    }

    for (auto& t : tau) t = std::max(params.tau_min, t * (1.0 - params.rho));
    // Reinforce the iteration-best tour, depot legs included.
    std::size_t prev = 0;
    const double deposit = reference / iter_energy;
    for (const int t : iter_best) {
      const auto pos = static_cast<std::size_t>(
          std::find(trip.begin(), trip.end(), t) - trip.begin()) + 1;
      double& cell = tau[prev * nodes + pos];
      cell = std::min(params.tau_max, cell + deposit);
      prev = pos;
    }
    double& back = tau[prev * nodes + 0];
    back = std::min(params.tau_max, back + deposit);
  }
  return best;
}

int scaled_iterations(std::size_t items, double sigma) {
  return std::max(1, static_cast<int>(std::ceil(static_cast<double>(items) * sigma - 1e-12)));
}

ClsmResult clsm_step(const GiantSolution& sol, const Instance& inst, const ClsmParams& params,
                     Rng& rng) {
  if (!(params.sigma > 0.0 && params.sigma <= 1.0)) throw ConfigError("sigma must lie in (0, 1]");
  TripList trips = sol.trips();
  ClsmResult result{sol, evaluate(sol, inst).total, 0, 0};
  const int rounds = scaled_iterations(trips.size(), params.sigma);

  for (int round = 0; round < rounds; ++round) {
    const auto target = choose_target_trip(trips, inst);
    if (!target) break;
    const Point far = far_centroid(target->split, inst);
    const auto candidate = choose_candidate_trip(trips, target->trip_index, far, inst);
    if (!candidate) break;
    ++result.rounds;

    auto [first, second] = recombine(trips[target->trip_index], trips[*candidate], inst);
    AcoParams aco = params.aco;
    aco.colony_size = params.colony_size;
    aco.iterations = scaled_iterations(first.size(), params.sigma);
    first = aco_tour(first, inst, aco, rng);
    aco.iterations = scaled_iterations(second.size(), params.sigma);
    second = aco_tour(second, inst, aco, rng);
    trips[target->trip_index] = std::move(first);
    trips[*candidate] = std::move(second);

    GiantSolution current = GiantSolution::from_trips(trips, inst.task_count());
    const double energy = evaluate(current, inst).total;
    ++result.evaluations;
    if (energy < result.energy) {
      result.energy = energy;
      result.solution = std::move(current);
    }
  }
  return result;
}

}  // namespace orchard
