#pragma once

// Route scheduling: trips produced by route generation are distributed over
// m robots so that no robot's cumulative trip energy exceeds E_max.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orchard/core.hpp"

namespace orchard {

/// Relative slack used when comparing summed energies against E_max.
inline constexpr double kEnergyTolerance = 1e-9;

bool fits_bound(double energy, double bound) noexcept;

struct Schedule {
  /// robot_of_trip[r] is the robot executing trip r.
  std::vector<int> robot_of_trip;
  std::vector<double> robot_energy;
  /// False when the trip count exceeded the exact-search limit and the
  /// witness came from the heuristic fallback.
  bool exact = true;

  int robot_count() const noexcept { return static_cast<int>(robot_energy.size()); }
  double makespan() const noexcept;
};

/// Largest trip count decided exactly by depth-first search.
inline constexpr std::size_t kExactScheduleLimit = 22;

/// Decides whether the trip energies fit onto `robots` robots under
/// `bound`: first-fit decreasing first, then exhaustive search with
/// interchangeable-robot pruning (exact up to kExactScheduleLimit trips,
/// heuristic restarts beyond). Returns a witness or nothing.
std::optional<Schedule> makespan_assign(std::span<const double> trip_energies, int robots,
                                        double bound);

/// Checks every trip is assigned once and no robot exceeds `bound`, by
/// re-summing the energies.
bool validate_schedule(const Schedule& schedule, std::span<const double> trip_energies,
                       int robots, double bound);

enum class RepairStatus { kRepaired, kInfeasible };

std::string_view to_string(RepairStatus status);

/// One accepted transfer of a task from the end of trip A to the front of
/// trip B. `pair_before` is the best combined energy of A and B so far
/// (infinity before the first transfer).
struct RepairMove {
  int task = 0;
  double pair_before = 0.0;
  double pair_after = 0.0;
};

struct RepairResult {
  GiantSolution solution;
  RepairStatus status = RepairStatus::kInfeasible;
  std::optional<Schedule> schedule;
  std::vector<RepairMove> moves;
};

/// Infeasibility repair. Trips are visited by descending energy; each one
/// sheds its last tasks into a fresh trip placed right after it while the
/// pair's combined energy does not increase, checking schedulability after
/// every transfer and stopping at the first feasible layout.
RepairResult repair(const GiantSolution& sol, const Instance& inst, int robots, double bound);

enum class Framework {
  /// Schedule and repair every individual each generation.
  kRepairEachGeneration,
  /// Schedule every generation and discard infeasible individuals.
  kDiscardEachGeneration,
  /// Only repair the final population.
  kRepairAtEnd,
};

std::string_view to_string(Framework fr);
/// Accepts "Fr1", "Fr2", "Fr3" (case-insensitive).
Framework parse_framework(std::string_view text);

struct Thresholds {
  double th1 = 0.0;
  double th2 = 0.0;
};

/// TH1 = 1.5 Z / m and TH2 = 1.7 Z / m.
Thresholds thresholds(double mean_energy, int robots);

/// Robots -> ordered trips -> ordered task ids, with per-robot energy.
nlohmann::json schedule_to_json(const Schedule& schedule, const TripList& trips,
                                std::span<const double> trip_energies);

}  // namespace orchard
