#pragma once

// Outer genetic loop: adaptive choice of the local-search target, order
// crossover and permutation mutation over giant tours, elitist survival,
// and the route-scheduling hooks.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "orchard/clsm.hpp"
#include "orchard/core.hpp"
#include "orchard/scheduler.hpp"

namespace orchard {

/// Success counts of the rank windows 0.1, 0.2, ..., p.
struct Archive {
  std::vector<double> ranges;
  std::vector<long> counts;
  double c = 0.1;

  /// Windows 0.1 .. p in steps of 0.1 and c = 1 / population.
  static Archive make(double p, int population);
};

inline constexpr int kNoRange = -1;

/// Success weights smoothed toward their Lehmer mean, normalized to sum 1.
std::vector<double> selection_probabilities(const Archive& archive);

struct Selection {
  std::size_t individual = 0;  // index into the energy-sorted population
  int range_index = kNoRange;
};

/// Round 1 picks the best individual. Later rounds sample a window w from
/// the archive and pick uniformly among the best ceil(w * P).
Selection eass_select(std::size_t population, const Archive& archive, int round, Rng& rng);

void update_archive(Archive& archive, int range_index, bool improved_best);

enum class SplitPolicy { kGreedy, kOptimal };

std::string_view to_string(SplitPolicy policy);
SplitPolicy parse_split_policy(std::string_view text);

/// Rebuilds depot separators for a task order.
GiantSolution resplit(std::span<const int> order, const Instance& inst, SplitPolicy policy);

/// OX on the separator-free task orders with cut points [lo, hi].
TaskSequence order_crossover(std::span<const int> p1, std::span<const int> p2, std::size_t lo,
                             std::size_t hi);

std::pair<GiantSolution, GiantSolution> crossover(const GiantSolution& parent1,
                                                  const GiantSolution& parent2,
                                                  const Instance& inst, Rng& rng,
                                                  SplitPolicy policy = SplitPolicy::kGreedy);

/// With probability `rate`, swaps two tasks, reverses a segment, or
/// relocates one task; the result is re-split.
GiantSolution mutate(const GiantSolution& sol, const Instance& inst, Rng& rng, double rate,
                     SplitPolicy policy = SplitPolicy::kGreedy);

struct Individual {
  GiantSolution solution;
  /// Infinite when the route-scheduling phase declared it infeasible.
  double energy = 0.0;
  std::optional<Schedule> schedule;
};

Individual make_individual(GiantSolution sol, const Instance& inst);

/// Ascending energy, then fewer trips, then token order.
bool better(const Individual& a, const Individual& b);

/// Best `size` of parents and offspring combined.
std::vector<Individual> environmental_selection(std::vector<Individual> parents,
                                                std::vector<Individual> offspring,
                                                std::size_t size);

enum class InitMode { kIlbim, kRandom };

std::string_view to_string(InitMode mode);
InitMode parse_init_mode(std::string_view text);

struct SolverConfig {
  int population = 10;
  double p = 0.6;
  double sigma = 0.2;
  std::optional<double> budget_seconds;
  std::optional<long> budget_evaluations;
  std::optional<int> budget_generations;
  Framework framework = Framework::kRepairEachGeneration;
  double crossover_rate = 0.9;
  double mutation_rate = 0.3;
  std::uint64_t seed = 1;
  InitMode init = InitMode::kIlbim;
  bool local_search = true;
  SplitPolicy split = SplitPolicy::kGreedy;
  int colony_size = 10;
  /// Route-scheduling phase; skipped when `makespan_bound` is empty.
  int robots = 1;
  std::optional<double> makespan_bound;
  /// Fresh-population attempts when a discard framework empties it.
  int refill_attempts = 20;

  void validate() const;
};

void to_json(nlohmann::json& j, const SolverConfig& cfg);
void from_json(const nlohmann::json& j, SolverConfig& cfg);

/// FNV-1a of the canonical JSON form.
std::uint64_t config_hash(const SolverConfig& cfg);

struct GenerationRecord {
  int generation = 0;
  double best_energy = 0.0;
  long evaluations = 0;
  std::vector<long> archive_counts;
};

enum class RunStatus { kOk, kInfeasible };

std::string_view to_string(RunStatus status);

struct RunResult {
  GiantSolution best;
  /// Energy of `best`; infinite when no schedulable solution was found.
  double energy = 0.0;
  RunStatus status = RunStatus::kOk;
  std::optional<Schedule> schedule;
  std::vector<GenerationRecord> history;
  long evaluations = 0;
  int generations = 0;
  Archive archive;
};

/// Full solver run. Deterministic for a fixed seed unless a wall-clock
/// budget is what stops it. Without any budget set, runs n seconds.
RunResult run_aedga(const Instance& inst, const SolverConfig& cfg, Rng& rng);
RunResult run_aedga(const Instance& inst, const SolverConfig& cfg);

/// generation,best_z,evaluations,a1..ak
std::string history_csv(const std::vector<GenerationRecord>& history);

}  // namespace orchard
