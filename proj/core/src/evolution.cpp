#include "orchard/evolution.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "orchard/error.hpp"
#include "orchard/ilbim.hpp"
#include "orchard/instances.hpp"

namespace orchard {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string lower(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return t;
}

std::size_t uniform_index(std::size_t size, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

bool coin(double probability, Rng& rng) {
  if (probability <= 0.0) return false;
  if (probability >= 1.0) return true;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < probability;
}

std::vector<double> energies_of(const TripList& trips, const Instance& inst) {
  std::vector<double> e;
  e.reserve(trips.size());
  for (const auto& t : trips) e.push_back(trip_energy(t, inst));
  return e;
}

}  // namespace

Archive Archive::make(double p, int population) {
  if (!(p >= 0.1 - 1e-12 && p <= 1.0 + 1e-12)) throw ConfigError("p must lie in [0.1, 1]");
  if (population < 1) throw ConfigError("population size must be at least 1");
  Archive a;
  const int windows = static_cast<int>(std::floor(p * 10.0 + 1e-9));
  for (int i = 1; i <= windows; ++i) a.ranges.push_back(i / 10.0);
  a.counts.assign(a.ranges.size(), 0);
  a.c = 1.0 / population;
  return a;
}

std::vector<double> selection_probabilities(const Archive& archive) {
  const std::size_t k = archive.counts.size();
  if (k == 0) return {};
  const long total = std::accumulate(archive.counts.begin(), archive.counts.end(), 0L);
  std::vector<double> base(k);
  for (std::size_t i = 0; i < k; ++i) {
    base[i] = total == 0 ? 1.0 / static_cast<double>(k)
                         : static_cast<double>(archive.counts[i]) / static_cast<double>(total);
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double f : base) {
    sum += f;
    sum_sq += f * f;
  }
  const double lehmer = sum_sq / sum;
  std::vector<double> weights(k);
  double norm = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    weights[i] = (1.0 - archive.c) * base[i] + archive.c * lehmer;
    norm += weights[i];
  }
  for (auto& w : weights) w /= norm;
  return weights;
}

Selection eass_select(std::size_t population, const Archive& archive, int round, Rng& rng) {
  if (population == 0) throw ConfigError("cannot select from an empty population");
  if (round <= 1 || archive.counts.empty()) return {0, kNoRange};
  const auto probs = selection_probabilities(archive);
  std::discrete_distribution<int> pick(probs.begin(), probs.end());
  const int index = pick(rng);
  // ceil(w * P) with w = (index + 1) / 10, in integers.
  const auto top = std::clamp<std::size_t>(
      (static_cast<std::size_t>(index + 1) * population + 9) / 10, 1, population);
  return {uniform_index(top, rng), index};
}

void update_archive(Archive& archive, int range_index, bool improved_best) {
  if (!improved_best || range_index == kNoRange) return;
  if (range_index < 0 || static_cast<std::size_t>(range_index) >= archive.counts.size()) {
    throw ConfigError("archive index out of range");
  }
  ++archive.counts[static_cast<std::size_t>(range_index)];
}

std::string_view to_string(SplitPolicy policy) {
  return policy == SplitPolicy::kGreedy ? "greedy" : "optimal";
}

SplitPolicy parse_split_policy(std::string_view text) {
  const auto t = lower(text);
  if (t == "greedy") return SplitPolicy::kGreedy;
  if (t == "optimal") return SplitPolicy::kOptimal;
  throw ConfigError("unknown split policy '" + std::string(text) + "'");
}

GiantSolution resplit(std::span<const int> order, const Instance& inst, SplitPolicy policy) {
  const TripList trips =
      policy == SplitPolicy::kGreedy ? split_greedy(order, inst) : split_optimal(order, inst);
  return GiantSolution::from_trips(trips, inst.task_count());
}

TaskSequence order_crossover(std::span<const int> p1, std::span<const int> p2, std::size_t lo,
                             std::size_t hi) {
  const std::size_t n = p1.size();
  if (p2.size() != n || lo > hi || (n > 0 && hi >= n)) {
    throw ConfigError("invalid crossover operands");
  }
  if (n == 0) return {};
  TaskSequence child(n, kDepot);
  std::vector<char> taken;
  for (std::size_t i = lo; i <= hi; ++i) {
    const auto t = static_cast<std::size_t>(p1[i]);
    if (t >= taken.size()) taken.resize(t + 1, 0);
    taken[t] = 1;
    child[i] = p1[i];
  }
  std::size_t write = (hi + 1) % n;
  for (std::size_t step = 0; step < n; ++step) {
    const int t = p2[(hi + 1 + step) % n];
    const auto ti = static_cast<std::size_t>(t);
    if (ti < taken.size() && taken[ti]) continue;
    child[write] = t;
    write = (write + 1) % n;
  }
  return child;
}

std::pair<GiantSolution, GiantSolution> crossover(const GiantSolution& parent1,
                                                  const GiantSolution& parent2,
                                                  const Instance& inst, Rng& rng,
                                                  SplitPolicy policy) {
  const auto a = parent1.task_order();
  const auto b = parent2.task_order();
  if (a.size() != b.size()) throw ConfigError("parents cover different task sets");
  if (a.size() < 2) return {resplit(a, inst, policy), resplit(b, inst, policy)};
  std::size_t lo = uniform_index(a.size(), rng);
  std::size_t hi = uniform_index(a.size(), rng);
  if (lo > hi) std::swap(lo, hi);
  return {resplit(order_crossover(a, b, lo, hi), inst, policy),
          resplit(order_crossover(b, a, lo, hi), inst, policy)};
}

GiantSolution mutate(const GiantSolution& sol, const Instance& inst, Rng& rng, double rate,
                     SplitPolicy policy) {
  if (!coin(rate, rng)) return sol;
  auto order = sol.task_order();
  if (order.size() >= 2) {
    std::size_t i = uniform_index(order.size(), rng);
    std::size_t j = uniform_index(order.size(), rng);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0:
        std::swap(order[i], order[j]);
        break;
      case 1:
        if (i > j) std::swap(i, j);
        std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i),
                     order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        break;
      default: {
        const int task = order[i];
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(i));
        order.insert(order.begin() + static_cast<std::ptrdiff_t>(std::min(j, order.size())), task);
        break;
      }
    }
  }
  return resplit(order, inst, policy);
}

Individual make_individual(GiantSolution sol, const Instance& inst) {
  const double energy = evaluate(sol, inst).total;
  return {std::move(sol), energy, std::nullopt};
}

bool better(const Individual& a, const Individual& b) {
  if (a.energy != b.energy) return a.energy < b.energy;
  const auto ta = a.solution.trip_count();
  const auto tb = b.solution.trip_count();
  if (ta != tb) return ta < tb;
  return a.solution.tokens() < b.solution.tokens();
}

std::vector<Individual> environmental_selection(std::vector<Individual> parents,
                                                std::vector<Individual> offspring,
                                                std::size_t size) {
  parents.insert(parents.end(), std::make_move_iterator(offspring.begin()),
                 std::make_move_iterator(offspring.end()));
  if (parents.size() < size) throw ConfigError("not enough individuals to select from");
  std::stable_sort(parents.begin(), parents.end(), better);
  // Clones are pushed behind distinct solutions and only fill leftover slots.
  std::vector<Individual> kept;
  std::vector<Individual> clones;
  for (auto& ind : parents) {
    if (!kept.empty() && kept.back().solution == ind.solution) {
      clones.push_back(std::move(ind));
    } else {
      kept.push_back(std::move(ind));
    }
  }
  for (std::size_t i = 0; kept.size() < size; ++i) kept.push_back(std::move(clones[i]));
  kept.resize(size);
  return kept;
}

std::string_view to_string(InitMode mode) {
  return mode == InitMode::kIlbim ? "ilbim" : "random";
}

InitMode parse_init_mode(std::string_view text) {
  const auto t = lower(text);
  if (t == "ilbim") return InitMode::kIlbim;
  if (t == "random") return InitMode::kRandom;
  throw ConfigError("unknown init mode '" + std::string(text) + "'");
}

void SolverConfig::validate() const {
  if (population < 2) throw ConfigError("population must be at least 2");
  if (!(p >= 0.1 - 1e-12 && p <= 1.0 + 1e-12)) throw ConfigError("p must lie in [0.1, 1]");
  if (!(sigma > 0.0 && sigma <= 1.0)) throw ConfigError("sigma must lie in (0, 1]");
  if (budget_seconds && !(*budget_seconds >= 0.0)) throw ConfigError("negative time budget");
  if (budget_evaluations && *budget_evaluations < 0) throw ConfigError("negative evaluation budget");
  if (budget_generations && *budget_generations < 0) throw ConfigError("negative generation budget");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw ConfigError("crossover rate must lie in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw ConfigError("mutation rate must lie in [0, 1]");
  if (colony_size < 1) throw ConfigError("colony size must be at least 1");
  if (robots < 1) throw ConfigError("at least one robot is required");
  if (makespan_bound && !(*makespan_bound > 0.0)) throw ConfigError("makespan bound must be positive");
  if (refill_attempts < 0) throw ConfigError("refill attempts must be non-negative");
}

void to_json(nlohmann::json& j, const SolverConfig& cfg) {
  j = nlohmann::json{{"population", cfg.population},
                     {"p", cfg.p},
                     {"sigma", cfg.sigma},
                     {"framework", to_string(cfg.framework)},
                     {"crossover_rate", cfg.crossover_rate},
                     {"mutation_rate", cfg.mutation_rate},
                     {"seed", cfg.seed},
                     {"init", to_string(cfg.init)},
                     {"local_search", cfg.local_search},
                     {"split", to_string(cfg.split)},
                     {"colony_size", cfg.colony_size},
                     {"robots", cfg.robots},
                     {"refill_attempts", cfg.refill_attempts}};
  j["budget_seconds"] = cfg.budget_seconds ? nlohmann::json(*cfg.budget_seconds) : nlohmann::json(nullptr);
  j["budget_evaluations"] =
      cfg.budget_evaluations ? nlohmann::json(*cfg.budget_evaluations) : nlohmann::json(nullptr);
  j["budget_generations"] =
      cfg.budget_generations ? nlohmann::json(*cfg.budget_generations) : nlohmann::json(nullptr);
  j["makespan_bound"] = cfg.makespan_bound ? nlohmann::json(*cfg.makespan_bound) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, SolverConfig& cfg) {
  static const std::vector<std::string> known = {
      "population",   "p",          "sigma",          "framework",          "crossover_rate",
      "mutation_rate", "seed",      "init",           "local_search",       "split",
      "colony_size",  "robots",     "refill_attempts", "budget_seconds",    "budget_evaluations",
      "budget_generations", "makespan_bound"};
  if (!j.is_object()) throw ConfigError("solver config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown solver config key '" + key + "'");
    }
  }
  SolverConfig c;
  try {
    c.population = j.value("population", c.population);
    c.p = j.value("p", c.p);
    c.sigma = j.value("sigma", c.sigma);
    if (j.contains("framework")) c.framework = parse_framework(j.at("framework").get<std::string>());
    c.crossover_rate = j.value("crossover_rate", c.crossover_rate);
    c.mutation_rate = j.value("mutation_rate", c.mutation_rate);
    c.seed = j.value("seed", c.seed);
    if (j.contains("init")) c.init = parse_init_mode(j.at("init").get<std::string>());
    c.local_search = j.value("local_search", c.local_search);
    if (j.contains("split")) c.split = parse_split_policy(j.at("split").get<std::string>());
    c.colony_size = j.value("colony_size", c.colony_size);
    c.robots = j.value("robots", c.robots);
    c.refill_attempts = j.value("refill_attempts", c.refill_attempts);
    auto opt = [&](const char* key, auto& field) {
      if (j.contains(key) && !j.at(key).is_null()) {
        field = j.at(key).get<typename std::remove_reference_t<decltype(field)>::value_type>();
      }
    };
    opt("budget_seconds", c.budget_seconds);
    opt("budget_evaluations", c.budget_evaluations);
    opt("budget_generations", c.budget_generations);
    opt("makespan_bound", c.makespan_bound);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad solver config: ") + e.what());
  }
  c.validate();
  cfg = c;
}

std::uint64_t config_hash(const SolverConfig& cfg) {
  const std::string text = nlohmann::json(cfg).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string_view to_string(RunStatus status) {
  return status == RunStatus::kOk ? "ok" : "infeasible";
}

namespace {

class Solver {
 public:
  Solver(const Instance& inst, const SolverConfig& cfg, Rng& rng)
      : inst_(inst), cfg_(cfg), rng_(rng), archive_(Archive::make(cfg.p, cfg.population)) {
    clsm_.sigma = cfg.sigma;
    clsm_.colony_size = cfg.colony_size;
  }

  RunResult run() {
    const auto start = std::chrono::steady_clock::now();
    const double seconds = cfg_.budget_seconds.value_or(
        cfg_.budget_evaluations || cfg_.budget_generations ? kInf
                                                           : static_cast<double>(inst_.task_count()));
    auto budget_left = [&] {
      if (cfg_.budget_evaluations && evaluations_ >= *cfg_.budget_evaluations) return false;
      if (cfg_.budget_generations && generation_ > *cfg_.budget_generations) return false;
      if (std::isfinite(seconds)) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        if (elapsed.count() >= seconds) return false;
      }
      return true;
    };

    generation_ = 1;
    population_ = initial_population();
    constrained_hook(population_);
    refill(population_);
    if (population_.empty()) return infeasible_result();
    population_ = environmental_selection(std::move(population_), {},
                                          static_cast<std::size_t>(cfg_.population));
    track_best();
    record();

    while (budget_left()) {
      ++generation_;
      // The first local-search round always targets the best individual.
      const Selection sel = eass_select(population_.size(), archive_, generation_ - 1, rng_);
      std::vector<Individual> offspring;
      if (cfg_.local_search) {
        const auto ls = clsm_step(population_[sel.individual].solution, inst_, clsm_, rng_);
        evaluations_ += ls.evaluations;
        offspring.push_back(make_individual(ls.solution, inst_));
      }
      vary(offspring);
      constrained_hook(offspring);
      population_ = environmental_selection(std::move(population_), std::move(offspring),
                                            static_cast<std::size_t>(cfg_.population));
      const double before = best_.energy;
      track_best();
      update_archive(archive_, sel.range_index, best_.energy < before);
      record();
    }
    return finish();
  }

 private:
  bool constrained() const { return cfg_.makespan_bound.has_value(); }

  std::vector<Individual> initial_population() {
    std::vector<Individual> pop;
    if (cfg_.init == InitMode::kIlbim) {
      for (auto& s : init_population(inst_, cfg_.population)) {
        pop.push_back(make_individual(std::move(s), inst_));
      }
    } else {
      TaskSequence order(static_cast<std::size_t>(inst_.task_count()));
      std::iota(order.begin(), order.end(), 1);
      for (int i = 0; i < cfg_.population; ++i) {
        std::shuffle(order.begin(), order.end(), rng_);
        pop.push_back(make_individual(resplit(order, inst_, cfg_.split), inst_));
      }
    }
    evaluations_ += static_cast<long>(pop.size());
    return pop;
  }

  Individual tournament() {
    const std::size_t a = uniform_index(population_.size(), rng_);
    const std::size_t b = uniform_index(population_.size(), rng_);
    return population_[std::min(a, b)];  // population is kept sorted
  }

  void vary(std::vector<Individual>& offspring) {
    const auto pairs = static_cast<std::size_t>((cfg_.population + 1) / 2);
    for (std::size_t k = 0; k < pairs; ++k) {
      const Individual p1 = tournament();
      const Individual p2 = tournament();
      GiantSolution c1 = p1.solution;
      GiantSolution c2 = p2.solution;
      if (coin(cfg_.crossover_rate, rng_)) {
        std::tie(c1, c2) = crossover(p1.solution, p2.solution, inst_, rng_, cfg_.split);
      }
      c1 = mutate(c1, inst_, rng_, cfg_.mutation_rate, cfg_.split);
      c2 = mutate(c2, inst_, rng_, cfg_.mutation_rate, cfg_.split);
      offspring.push_back(make_individual(std::move(c1), inst_));
      offspring.push_back(make_individual(std::move(c2), inst_));
      evaluations_ += 2;
    }
  }

  /// Per-generation scheduling policy.
  void constrained_hook(std::vector<Individual>& group) {
    if (!constrained()) return;
    const double bound = *cfg_.makespan_bound;
    if (cfg_.framework == Framework::kRepairEachGeneration) {
      for (auto& ind : group) repair_individual(ind, bound);
    } else if (cfg_.framework == Framework::kDiscardEachGeneration) {
      std::erase_if(group, [&](Individual& ind) { return !schedule_individual(ind, bound); });
    }
  }

  bool schedule_individual(Individual& ind, double bound) {
    const auto energies = energies_of(ind.solution.trips(), inst_);
    ind.schedule = makespan_assign(energies, cfg_.robots, bound);
    return ind.schedule.has_value();
  }

  void repair_individual(Individual& ind, double bound) {
    if (!std::isfinite(ind.energy)) return;
    auto r = repair(ind.solution, inst_, cfg_.robots, bound);
    if (r.status == RepairStatus::kRepaired) {
      if (!(r.solution == ind.solution)) ind = make_individual(std::move(r.solution), inst_);
      ind.schedule = std::move(r.schedule);
    } else {
      ind.energy = kInf;
      ind.schedule.reset();
    }
  }

  /// Fills a discarded population back to size: clones of the survivors,
  /// or fresh constructed individuals when nothing survived.
  void refill(std::vector<Individual>& pop) {
    const auto target = static_cast<std::size_t>(cfg_.population);
    if (pop.size() >= target) return;
    const double bound = cfg_.makespan_bound.value_or(kInf);
    for (int attempt = 0; pop.empty() && attempt < cfg_.refill_attempts; ++attempt) {
      for (auto& s : init_population(inst_, cfg_.population)) {
        Individual ind = make_individual(mutate(s, inst_, rng_, 1.0, cfg_.split), inst_);
        ++evaluations_;
        if (schedule_individual(ind, bound)) pop.push_back(std::move(ind));
      }
    }
    if (pop.empty()) return;
    std::stable_sort(pop.begin(), pop.end(), better);
    for (std::size_t k = 0; pop.size() < target; ++k) pop.push_back(pop[k]);
  }

  void track_best() {
    for (const auto& ind : population_) {
      if (std::isfinite(ind.energy) && (!have_best_ || better(ind, best_))) {
        best_ = ind;
        have_best_ = true;
      }
    }
    if (!have_best_) best_.energy = kInf;
  }

  void record() {
    history_.push_back({generation_, best_.energy, evaluations_, archive_.counts});
  }

  RunResult infeasible_result() {
    RunResult r;
    r.energy = kInf;
    r.status = RunStatus::kInfeasible;
    r.evaluations = evaluations_;
    r.generations = generation_;
    r.archive = archive_;
    history_.push_back({generation_, kInf, evaluations_, archive_.counts});
    r.history = history_;
    return r;
  }

  RunResult finish() {
    RunResult r;
    r.history = history_;
    r.evaluations = evaluations_;
    r.generations = generation_;
    r.archive = archive_;

    if (constrained() && cfg_.framework == Framework::kRepairAtEnd) {
      bool found = false;
      Individual chosen;
      for (auto ind : population_) {
        repair_individual(ind, *cfg_.makespan_bound);
        if (std::isfinite(ind.energy) && (!found || better(ind, chosen))) {
          chosen = std::move(ind);
          found = true;
        }
      }
      if (!found) {
        r.best = population_.front().solution;
        r.energy = kInf;
        r.status = RunStatus::kInfeasible;
        return r;
      }
      best_ = std::move(chosen);
      have_best_ = true;
    }

    if (!have_best_) {
      r.best = population_.front().solution;
      r.energy = kInf;
      r.status = RunStatus::kInfeasible;
      return r;
    }
    r.best = best_.solution;
    r.energy = best_.energy;
    if (constrained()) {
      r.schedule = best_.schedule;
      if (!r.schedule) {
        r.schedule = makespan_assign(energies_of(best_.solution.trips(), inst_), cfg_.robots,
                                     *cfg_.makespan_bound);
      }
      if (!r.schedule) {
        r.energy = kInf;
        r.status = RunStatus::kInfeasible;
      }
    }
    return r;
  }

  const Instance& inst_;
  const SolverConfig& cfg_;
  Rng& rng_;
  Archive archive_;
  ClsmParams clsm_;
  std::vector<Individual> population_;
  Individual best_;
  bool have_best_ = false;
  std::vector<GenerationRecord> history_;
  long evaluations_ = 0;
  int generation_ = 0;
};

}  // namespace

RunResult run_aedga(const Instance& inst, const SolverConfig& cfg, Rng& rng) {
  cfg.validate();
  if (inst.task_count() < 1) throw ConfigError("instance has no tasks");
  return Solver(inst, cfg, rng).run();
}

RunResult run_aedga(const Instance& inst, const SolverConfig& cfg) {
  Rng rng(cfg.seed);
  return run_aedga(inst, cfg, rng);
}

std::string history_csv(const std::vector<GenerationRecord>& history) {
  std::ostringstream out;
  out << "generation,best_z,evaluations";
  const std::size_t k = history.empty() ? 0 : history.front().archive_counts.size();
  for (std::size_t i = 0; i < k; ++i) out << ",a" << (i + 1);
  out << '\n';
  for (const auto& g : history) {
    out << g.generation << ',' << (std::isfinite(g.best_energy) ? format_number(g.best_energy) : "inf")
        << ',' << g.evaluations;
    for (const long c : g.archive_counts) out << ',' << c;
    out << '\n';
  }
  return out.str();
}

}  // namespace orchard
