#include "orchard/scheduler.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "orchard/error.hpp"

namespace orchard {

namespace {

constexpr long kSearchNodeBudget = 20'000'000;
constexpr int kHeuristicRestarts = 256;

std::vector<std::size_t> descending_order(std::span<const double> energies) {
  std::vector<std::size_t> order(energies.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return energies[a] > energies[b]; });
  return order;
}

/// First fit over `order`; returns robot per trip or empty on failure.
std::vector<int> first_fit(std::span<const double> energies, const std::vector<std::size_t>& order,
                           int robots, double bound) {
  std::vector<double> load(static_cast<std::size_t>(robots), 0.0);
  std::vector<int> robot_of(energies.size(), -1);
  for (const std::size_t r : order) {
    bool placed = false;
    for (int k = 0; k < robots; ++k) {
      auto& l = load[static_cast<std::size_t>(k)];
      if (fits_bound(l + energies[r], bound)) {
        l += energies[r];
        robot_of[r] = k;
        placed = true;
        break;
      }
    }
    if (!placed) return {};
  }
  return robot_of;
}

class ExactAssigner {
 public:
  ExactAssigner(std::span<const double> energies, int robots, double bound)
      : energies_(energies),
        order_(descending_order(energies)),
        bound_(bound),
        load_(static_cast<std::size_t>(robots), 0.0),
        robot_of_(energies.size(), -1) {}

  /// True when a feasible assignment exists; `exhausted()` tells whether
  /// the node budget ran out first.
  bool search() { return place(0); }
  bool exhausted() const noexcept { return nodes_ > kSearchNodeBudget; }
  const std::vector<int>& robot_of() const noexcept { return robot_of_; }

 private:
  bool place(std::size_t depth) {
    if (depth == order_.size()) return true;
    if (++nodes_ > kSearchNodeBudget) return false;
    const std::size_t r = order_[depth];
    const double e = energies_[r];
    for (std::size_t k = 0; k < load_.size(); ++k) {
      // Robots with equal load are interchangeable; try only the first.
      bool duplicate = false;
      for (std::size_t p = 0; p < k; ++p) {
        if (load_[p] == load_[k]) {
          duplicate = true;
          break;
        }
      }
      if (duplicate || !fits_bound(load_[k] + e, bound_)) continue;
      load_[k] += e;
      robot_of_[r] = static_cast<int>(k);
      if (place(depth + 1)) return true;
      load_[k] -= e;
      robot_of_[r] = -1;
      if (exhausted()) return false;
    }
    return false;
  }

  std::span<const double> energies_;
  std::vector<std::size_t> order_;
  double bound_;
  std::vector<double> load_;
  std::vector<int> robot_of_;
  long nodes_ = 0;
};

Schedule make_schedule(std::vector<int> robot_of, std::span<const double> energies, int robots,
                       bool exact) {
  Schedule s;
  s.robot_of_trip = std::move(robot_of);
  s.robot_energy.assign(static_cast<std::size_t>(robots), 0.0);
  for (std::size_t r = 0; r < energies.size(); ++r) {
    s.robot_energy[static_cast<std::size_t>(s.robot_of_trip[r])] += energies[r];
  }
  s.exact = exact;
  return s;
}

std::vector<double> energies_of(const TripList& trips, const Instance& inst) {
  std::vector<double> e;
  e.reserve(trips.size());
  for (const auto& t : trips) e.push_back(trip_energy(t, inst));
  return e;
}

}  // namespace

bool fits_bound(double energy, double bound) noexcept {
  return energy <= bound + kEnergyTolerance * std::max(1.0, std::abs(bound));
}

double Schedule::makespan() const noexcept {
  return robot_energy.empty() ? 0.0 : *std::max_element(robot_energy.begin(), robot_energy.end());
}

std::optional<Schedule> makespan_assign(std::span<const double> trip_energies, int robots,
                                        double bound) {
  if (robots < 1) throw ConfigError("at least one robot is required");
  double total = 0.0;
  for (const double e : trip_energies) {
    if (!(e >= 0.0)) throw ConfigError("trip energies must be non-negative");
    if (!fits_bound(e, bound)) return std::nullopt;
    total += e;
  }
  if (!fits_bound(total, bound * robots)) return std::nullopt;

  const auto order = descending_order(trip_energies);
  if (auto ffd = first_fit(trip_energies, order, robots, bound); !ffd.empty() ||
                                                                  trip_energies.empty()) {
    return make_schedule(std::move(ffd), trip_energies, robots, true);
  }

  if (trip_energies.size() <= kExactScheduleLimit) {
    ExactAssigner search(trip_energies, robots, bound);
    if (search.search()) return make_schedule(search.robot_of(), trip_energies, robots, true);
    if (!search.exhausted()) return std::nullopt;
  }

  // Heuristic fallback: first fit over shuffled orders.
  Rng rng(0x5eed);
  auto shuffled = order;
  for (int attempt = 0; attempt < kHeuristicRestarts; ++attempt) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    if (auto fit = first_fit(trip_energies, shuffled, robots, bound); !fit.empty()) {
      return make_schedule(std::move(fit), trip_energies, robots, false);
    }
  }
  return std::nullopt;
}

bool validate_schedule(const Schedule& schedule, std::span<const double> trip_energies,
                       int robots, double bound) {
  if (schedule.robot_of_trip.size() != trip_energies.size()) return false;
  std::vector<double> load(static_cast<std::size_t>(robots), 0.0);
  for (std::size_t r = 0; r < trip_energies.size(); ++r) {
    const int k = schedule.robot_of_trip[r];
    if (k < 0 || k >= robots) return false;
    load[static_cast<std::size_t>(k)] += trip_energies[r];
  }
  return std::all_of(load.begin(), load.end(), [&](double l) { return fits_bound(l, bound); });
}

std::string_view to_string(RepairStatus status) {
  return status == RepairStatus::kRepaired ? "Repaired" : "Infeasible";
}

RepairResult repair(const GiantSolution& sol, const Instance& inst, int robots, double bound) {
  struct Slot {
    TaskSequence tasks;
    int origin;  // index of the original trip, -1 for trips split off
  };
  RepairResult result;
  const TripList original = sol.trips();
  const auto original_energy = energies_of(original, inst);

  if (auto s = makespan_assign(original_energy, robots, bound)) {
    result.solution = sol;
    result.status = RepairStatus::kRepaired;
    result.schedule = std::move(s);
    return result;
  }

  std::vector<Slot> layout;
  for (std::size_t r = 0; r < original.size(); ++r) {
    layout.push_back({original[r], static_cast<int>(r)});
  }
  auto to_trips = [&] {
    TripList trips;
    for (const auto& s : layout) trips.push_back(s.tasks);
    return trips;
  };

  for (const std::size_t origin : descending_order(original_energy)) {
    auto pos = static_cast<std::size_t>(
        std::find_if(layout.begin(), layout.end(),
                     [&](const Slot& s) { return s.origin == static_cast<int>(origin); }) -
        layout.begin());
    TaskSequence a = layout[pos].tasks;
    TaskSequence b;
    double best_pair = std::numeric_limits<double>::infinity();
    bool b_inserted = false;

    while (a.size() > 1) {
      const int task = a.back();
      a.pop_back();
      b.insert(b.begin(), task);
      const double pair = trip_energy(a, inst) + trip_energy(b, inst);
      if (!(pair <= best_pair)) break;  // rejected transfer is discarded

      result.moves.push_back({task, best_pair, pair});
      best_pair = pair;
      layout[pos].tasks = a;
      if (!b_inserted) {
        layout.insert(layout.begin() + static_cast<std::ptrdiff_t>(pos) + 1, Slot{b, -1});
        b_inserted = true;
      } else {
        layout[pos + 1].tasks = b;
      }

      const TripList trips = to_trips();
      const auto energies = energies_of(trips, inst);
      if (auto s = makespan_assign(energies, robots, bound)) {
        result.solution = GiantSolution::from_trips(trips, inst.task_count());
        result.status = RepairStatus::kRepaired;
        result.schedule = std::move(s);
        return result;
      }
    }
  }

  result.solution = GiantSolution::from_trips(to_trips(), inst.task_count());
  result.status = RepairStatus::kInfeasible;
  return result;
}

std::string_view to_string(Framework fr) {
  switch (fr) {
    case Framework::kRepairEachGeneration: return "Fr1";
    case Framework::kDiscardEachGeneration: return "Fr2";
    case Framework::kRepairAtEnd: return "Fr3";
  }
  return "Fr1";
}

Framework parse_framework(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "fr1") return Framework::kRepairEachGeneration;
  if (t == "fr2") return Framework::kDiscardEachGeneration;
  if (t == "fr3") return Framework::kRepairAtEnd;
  throw ConfigError("unknown framework '" + std::string(text) + "' (expected Fr1, Fr2 or Fr3)");
}

Thresholds thresholds(double mean_energy, int robots) {
  if (!(mean_energy > 0.0)) throw ConfigError("mean energy must be positive");
  if (robots < 1) throw ConfigError("at least one robot is required");
  return {1.5 * mean_energy / robots, 1.7 * mean_energy / robots};
}

nlohmann::json schedule_to_json(const Schedule& schedule, const TripList& trips,
                                std::span<const double> trip_energies) {
  nlohmann::json robots = nlohmann::json::array();
  for (int k = 0; k < schedule.robot_count(); ++k) {
    nlohmann::json assigned = nlohmann::json::array();
    for (std::size_t r = 0; r < trips.size(); ++r) {
      if (schedule.robot_of_trip[r] == k) {
        assigned.push_back({{"tasks", trips[r]}, {"energy", trip_energies[r]}});
      }
    }
    robots.push_back({{"robot", k},
                      {"energy", schedule.robot_energy[static_cast<std::size_t>(k)]},
                      {"trips", std::move(assigned)}});
  }
  return {{"robots", std::move(robots)},
          {"makespan", schedule.makespan()},
          {"exact", schedule.exact}};
}

}  // namespace orchard
