#include "orchard/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "orchard/error.hpp"
#include "orchard/scheduler.hpp"

namespace orchard {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TourResult exact_tour(std::span<const int> tasks, const Instance& inst) {
  const std::size_t k = tasks.size();
  if (k == 0) throw SizeError("exact tour needs at least one task");
  if (k > kMaxExactTour) {
    throw SizeError("exact tour limited to " + std::to_string(kMaxExactTour) + " tasks");
  }
  for (const int t : tasks) {
    if (t < 1 || t > inst.task_count()) throw Error("unknown task id " + std::to_string(t));
  }
  const double w = inst.robot_weight();
  const std::size_t full = (std::size_t{1} << k) - 1;

  std::vector<double> load(full + 1, 0.0);
  for (std::size_t s = 1; s <= full; ++s) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(s));
    load[s] = load[s & (s - 1)] + inst.yield(tasks[low]);
  }

  std::vector<double> dp((full + 1) * k, kInf);
  std::vector<int> parent((full + 1) * k, -1);
  auto at = [k](std::size_t s, std::size_t last) { return s * k + last; };
  for (std::size_t j = 0; j < k; ++j) {
    dp[at(std::size_t{1} << j, j)] = inst.distance(kDepot, tasks[j]) * w;
  }
  for (std::size_t s = 1; s <= full; ++s) {
    for (std::size_t last = 0; last < k; ++last) {
      const double base = dp[at(s, last)];
      if (!(s >> last & 1U) || base == kInf) continue;
      const double carried = w + load[s];
      for (std::size_t j = 0; j < k; ++j) {
        if (s >> j & 1U) continue;
        const std::size_t next = s | (std::size_t{1} << j);
        const double cost = base + inst.distance(tasks[last], tasks[j]) * carried;
        if (cost < dp[at(next, j)]) {
          dp[at(next, j)] = cost;
          parent[at(next, j)] = static_cast<int>(last);
        }
      }
    }
  }

  double best = kInf;
  std::size_t best_last = 0;
  for (std::size_t last = 0; last < k; ++last) {
    const double cost = dp[at(full, last)] + inst.distance(tasks[last], kDepot) * (w + load[full]);
    if (cost < best) {
      best = cost;
      best_last = last;
    }
  }

  TourResult result;
  result.energy = best;
  std::size_t s = full;
  int last = static_cast<int>(best_last);
  while (last >= 0) {
    result.order.push_back(tasks[static_cast<std::size_t>(last)]);
    const int prev = parent[at(s, static_cast<std::size_t>(last))];
    s &= ~(std::size_t{1} << last);
    last = prev;
  }
  std::reverse(result.order.begin(), result.order.end());
  return result;
}

OracleResult exact_route_generation(const Instance& inst) {
  const int n = inst.task_count();
  if (n < 1) throw SizeError("instance has no tasks");
  if (n > kMaxExactTasks) {
    throw SizeError("exact route generation limited to " + std::to_string(kMaxExactTasks) +
                    " tasks");
  }
  const std::size_t full = (std::size_t{1} << n) - 1;

  // Optimal closed tour of every capacity-feasible block.
  std::vector<TourResult> block(full + 1);
  std::vector<char> feasible(full + 1, 0);
  for (std::size_t s = 1; s <= full; ++s) {
    TaskSequence members;
    double load = 0.0;
    for (int t = 0; t < n; ++t) {
      if (s >> t & 1U) {
        members.push_back(t + 1);
        load += inst.yield(t + 1);
      }
    }
    if (load > inst.capacity()) continue;
    feasible[s] = 1;
    block[s] = exact_tour(members, inst);
  }

  // Partitions enumerated by always placing the lowest remaining task in
  // the next block, so each partition is generated exactly once.
  OracleResult result;
  std::vector<double> best(full + 1, kInf);
  std::vector<std::size_t> choice(full + 1, 0);
  best[0] = 0.0;
  for (std::size_t s = 1; s <= full; ++s) {
    const std::size_t low = s & (~s + 1);
    const std::size_t rest = s & ~low;
    for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
      const std::size_t b = sub | low;
      ++result.partitions;
      if (feasible[b] && best[s & ~b] != kInf) {
        const double cost = block[b].energy + best[s & ~b];
        if (cost < best[s]) {
          best[s] = cost;
          choice[s] = b;
        }
      }
      if (sub == 0) break;
    }
  }

  TripList trips;
  for (std::size_t s = full; s != 0; s &= ~choice[s]) trips.push_back(block[choice[s]].order);
  result.energy = best[full];
  result.solution = GiantSolution::from_trips(trips, n);
  return result;
}

bool exact_schedule(std::span<const double> trip_energies, int robots, double bound) {
  if (robots < 1 || robots > kMaxExactRobots) {
    throw SizeError("exact schedule needs 1 to " + std::to_string(kMaxExactRobots) + " robots");
  }
  if (trip_energies.size() > kMaxExactTrips) {
    throw SizeError("exact schedule limited to " + std::to_string(kMaxExactTrips) + " trips");
  }
  const std::size_t t = trip_energies.size();
  std::size_t labelings = 1;
  for (std::size_t i = 0; i < t; ++i) labelings *= static_cast<std::size_t>(robots);

  std::vector<double> load(static_cast<std::size_t>(robots));
  for (std::size_t code = 0; code < labelings; ++code) {
    std::size_t c = code;
    std::fill(load.begin(), load.end(), 0.0);
    for (std::size_t i = 0; i < t; ++i) {
      load[c % static_cast<std::size_t>(robots)] += trip_energies[i];
      c /= static_cast<std::size_t>(robots);
    }
    bool ok = true;
    for (const double l : load) ok = ok && fits_bound(l, bound);
    if (ok) return true;
  }
  return false;
}

}  // namespace orchard
