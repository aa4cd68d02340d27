#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "orchard/core.hpp"
#include "orchard/error.hpp"
#include "orchard/evolution.hpp"
#include "orchard/instances.hpp"
#include "orchard/oracle.hpp"
#include "orchard/scheduler.hpp"
#include "orchard/stats.hpp"

namespace orchard::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  const fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

json energy_json(double e) { return std::isfinite(e) ? json(e) : json(nullptr); }

std::string scientific(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, digits - 1);
  return std::string(buf, res.ptr);
}

int thread_cap(std::optional<int> requested) {
  int cap = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv(kThreadsEnv)) {
    int v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
      throw ConfigError(std::string(kThreadsEnv) + " must be a positive integer");
    }
    cap = std::min(cap, v);
  }
  if (requested) cap = std::min(cap, std::max(1, *requested));
  return cap;
}

/// Flags shared by solve and bench that override the JSON config.
struct SolverFlags {
  std::string config_path;
  std::optional<int> population;
  std::optional<double> p;
  std::optional<double> sigma;
  std::optional<long> budget_evals;
  std::optional<double> budget_seconds;
  std::optional<int> budget_generations;
  std::optional<std::string> framework;
  std::optional<int> robots;
  std::optional<double> emax;
  std::optional<double> crossover_rate;
  std::optional<double> mutation_rate;
  std::optional<std::string> init;
  std::optional<std::string> split;
  std::optional<int> colony;
  bool no_local_search = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "Solver config JSON file");
    app->add_option("--population", population, "Population size P");
    app->add_option("--p", p, "Largest EASS rank window");
    app->add_option("--sigma", sigma, "Local-search scaling factor");
    app->add_option("--budget-evals", budget_evals, "Evaluation budget");
    app->add_option("--budget-seconds", budget_seconds, "Wall-clock budget");
    app->add_option("--budget-generations", budget_generations, "Generation budget");
    app->add_option("--framework", framework, "Fr1, Fr2 or Fr3");
    app->add_option("--robots", robots, "Fleet size m");
    app->add_option("--emax", emax, "Per-robot energy bound");
    app->add_option("--crossover-rate", crossover_rate);
    app->add_option("--mutation-rate", mutation_rate);
    app->add_option("--init", init, "ilbim or random");
    app->add_option("--split", split, "greedy or optimal");
    app->add_option("--colony", colony, "Ant colony size");
    app->add_flag("--no-local-search", no_local_search, "Disable the clustering local search");
  }

  SolverConfig build() const {
    SolverConfig cfg;
    if (!config_path.empty()) {
      try {
        cfg = json::parse(read_file(config_path)).get<SolverConfig>();
      } catch (const json::parse_error& e) {
        throw ConfigError(config_path + ": " + e.what());
      }
    }
    if (population) cfg.population = *population;
    if (p) cfg.p = *p;
    if (sigma) cfg.sigma = *sigma;
    if (budget_evals) cfg.budget_evaluations = *budget_evals;
    if (budget_seconds) cfg.budget_seconds = *budget_seconds;
    if (budget_generations) cfg.budget_generations = *budget_generations;
    if (framework) cfg.framework = parse_framework(*framework);
    if (robots) cfg.robots = *robots;
    if (emax) cfg.makespan_bound = *emax;
    if (crossover_rate) cfg.crossover_rate = *crossover_rate;
    if (mutation_rate) cfg.mutation_rate = *mutation_rate;
    if (init) cfg.init = parse_init_mode(*init);
    if (split) cfg.split = parse_split_policy(*split);
    if (colony) cfg.colony_size = *colony;
    if (no_local_search) cfg.local_search = false;
    cfg.validate();
    return cfg;
  }
};

std::string hex(std::uint64_t v) {
  char buf[17];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, 16);
  return std::string(buf, res.ptr);
}

json trips_json(const TripList& trips) {
  json a = json::array();
  for (const auto& t : trips) a.push_back(t);
  return a;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  OrchardSpec spec;
  std::string config_path;
  std::string suite;
  std::string out_dir = ".";
  std::string manifest = "manifest.csv";
};

std::string manifest_row(const std::string& file, const Instance& inst) {
  const auto s = instance_stats(inst);
  std::ostringstream row;
  row << file << ',' << s.n << ',' << format_number(s.mean_depot_distance) << ','
      << format_number(s.max_depot_distance) << ',' << format_number(s.mean_yield) << ','
      << format_number(s.max_yield) << ',' << format_number(s.capacity) << '\n';
  return row.str();
}

int cmd_gen(const GenOptions& opt, CLI::App* app, std::ostream& out) {
  std::vector<OrchardSpec> specs;
  if (!opt.suite.empty()) {
    if (opt.suite != "paper18") throw ConfigError("unknown suite '" + opt.suite + "'");
    specs = orchard_suite(opt.spec.seed);
  } else {
    OrchardSpec spec = opt.spec;
    if (!opt.config_path.empty()) {
      spec = json::parse(read_file(opt.config_path)).get<OrchardSpec>();
      // Explicit flags still win over the file.
      for (const auto* o : app->get_options()) {
        if (o->count() == 0) continue;
        const auto& name = o->get_name();
        if (name == "--side") spec.side_length = opt.spec.side_length;
        if (name == "--trees") spec.tree_count = opt.spec.tree_count;
        if (name == "--maturity") spec.maturity_rate = opt.spec.maturity_rate;
        if (name == "--yield-low") spec.yield_low = opt.spec.yield_low;
        if (name == "--yield-high") spec.yield_high = opt.spec.yield_high;
        if (name == "--capacity") spec.capacity = opt.spec.capacity;
        if (name == "--seed") spec.seed = opt.spec.seed;
        if (name == "--grid") spec.grid = opt.spec.grid;
      }
    }
    specs.push_back(spec);
  }

  std::string manifest = "Pro,n,μ_d,λ_d,μ_y,λ_y,Q\n";
  for (const auto& spec : specs) {
    const Instance inst = generate_orchard(spec);
    const std::string file = inst.name + ".vrp";
    write_file((fs::path(opt.out_dir) / file).string(), emit_instance(inst));
    manifest += manifest_row(file, inst);
    out << (fs::path(opt.out_dir) / file).string() << '\n';
  }
  write_file((fs::path(opt.out_dir) / opt.manifest).string(), manifest);
  return kExitOk;
}

// ---------------------------------------------------------------- solve

struct SolveOptions {
  SolverFlags flags;
  std::optional<std::uint64_t> seed;
  std::string instance;
  std::string out;
  std::string trace;
  std::string record;
  std::string schedule_out;
};

json result_json(const Instance& inst, const SolverConfig& cfg, const RunResult& r) {
  const TripList trips = r.best.trips();
  std::vector<double> energies;
  for (const auto& t : trips) energies.push_back(trip_energy(t, inst));
  json j{{"instance", inst.name},
         {"tasks", inst.task_count()},
         {"config", cfg},
         {"status", to_string(r.status)},
         {"energy", energy_json(r.energy)},
         {"tokens", r.best.tokens()},
         {"trips", trips_json(trips)},
         {"trip_energies", energies},
         {"evaluations", r.evaluations},
         {"generations", r.generations}};
  j["schedule"] = r.schedule ? schedule_to_json(*r.schedule, trips, energies) : json(nullptr);
  return j;
}

int cmd_solve(const SolveOptions& opt, std::ostream& out) {
  const Instance inst = read_instance_file(opt.instance);
  SolverConfig cfg = opt.flags.build();
  if (opt.seed) cfg.seed = *opt.seed;

  const auto start = std::chrono::steady_clock::now();
  const RunResult r = run_aedga(inst, cfg);
  const std::chrono::duration<double> runtime = std::chrono::steady_clock::now() - start;

  const json result = result_json(inst, cfg, r);
  const std::string text = result.dump(2) + "\n";
  if (opt.out.empty()) {
    out << text;
  } else {
    write_file(opt.out, text);
  }
  if (!opt.trace.empty()) write_file(opt.trace, history_csv(r.history));
  if (!opt.schedule_out.empty() && !result["schedule"].is_null()) {
    write_file(opt.schedule_out, result["schedule"].dump(2) + "\n");
  }
  if (!opt.record.empty()) {
    json rec{{"instance", inst.name},
             {"seed", cfg.seed},
             {"config_hash", hex(config_hash(cfg))},
             {"config", cfg},
             {"best_z", energy_json(r.energy)},
             {"runtime_seconds", runtime.count()},
             {"trace", opt.trace.empty() ? json(nullptr) : json(opt.trace)},
             {"schedule", opt.schedule_out.empty() ? json(nullptr) : json(opt.schedule_out)}};
    write_file(opt.record, rec.dump(2) + "\n");
  }
  return r.status == RunStatus::kOk ? kExitOk : kExitInfeasible;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  SolverFlags flags;
  std::vector<std::string> instances;
  std::string methods = "aedga";
  int runs = 10;
  std::uint64_t seed = 1;
  std::optional<int> threads;
  std::string out;
  std::string runs_out;
  int digits = 6;
};

/// Named variants of the base configuration.
SolverConfig method_config(const std::string& method, SolverConfig base) {
  if (method == "aedga") return base;
  if (method == "aedga-randinit") {
    base.init = InitMode::kRandom;
    return base;
  }
  if (method == "aedga-nols") {
    base.local_search = false;
    return base;
  }
  if (method == "ga") {
    base.init = InitMode::kRandom;
    base.local_search = false;
    return base;
  }
  if (method.rfind("aedga-fr", 0) == 0) {
    base.framework = parse_framework(method.substr(6));
    return base;
  }
  throw ConfigError("unknown method '" + method + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.instances.empty()) throw ConfigError("bench needs at least one instance");
  if (opt.runs < 1) throw ConfigError("runs must be at least 1");
  const auto methods = split_list(opt.methods);
  if (methods.empty()) throw ConfigError("no methods given");
  const SolverConfig base = opt.flags.build();
  std::vector<SolverConfig> configs;
  for (const auto& m : methods) configs.push_back(method_config(m, base));

  std::vector<Instance> instances;
  for (const auto& path : opt.instances) instances.push_back(read_instance_file(path));

  struct Job {
    std::size_t instance;
    std::size_t method;
    int run;
    double energy = 0.0;
    std::string error;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t m = 0; m < methods.size(); ++m) {
      for (int r = 0; r < opt.runs; ++r) jobs.push_back(Job{i, m, r, 0.0, {}});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      Job& job = jobs[k];
      SolverConfig cfg = configs[job.method];
      cfg.seed = opt.seed + static_cast<std::uint64_t>(job.run);
      try {
        job.energy = run_aedga(instances[job.instance], cfg).energy;
      } catch (const std::exception& e) {
        job.error = e.what();
      }
    }
  };
  const int threads = std::min<int>(thread_cap(opt.threads), static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream matrix;
  matrix << "problem";
  for (const auto& m : methods) matrix << ',' << m;
  matrix << '\n';
  std::ostringstream raw;
  raw << "problem,method,run,seed,energy\n";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    matrix << instances[i].name;
    for (std::size_t m = 0; m < methods.size(); ++m) {
      std::vector<double> values;
      for (const auto& job : jobs) {
        if (job.instance != i || job.method != m) continue;
        raw << instances[i].name << ',' << methods[m] << ',' << job.run << ','
            << opt.seed + static_cast<std::uint64_t>(job.run) << ','
            << (job.error.empty() ? scientific(job.energy, 17) : "") << '\n';
        if (!job.error.empty()) {
          err << "warning: " << instances[i].name << " / " << methods[m] << " run " << job.run
              << " failed: " << job.error << '\n';
          continue;
        }
        values.push_back(job.energy);
      }
      matrix << ',';
      if (values.empty()) continue;
      double mean = 0.0;
      for (const double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double var = 0.0;
      if (std::isfinite(mean)) {
        for (const double v : values) var += (v - mean) * (v - mean);
        if (values.size() > 1) var /= static_cast<double>(values.size() - 1);
      }
      matrix << scientific(mean, opt.digits) << " ("
             << (std::isfinite(mean) ? scientific(std::sqrt(var), opt.digits) : "inf") << ')';
    }
    matrix << '\n';
  }

  if (opt.out.empty()) {
    out << matrix.str();
  } else {
    write_file(opt.out, matrix.str());
  }
  if (!opt.runs_out.empty()) write_file(opt.runs_out, raw.str());
  return kExitOk;
}

// ---------------------------------------------------------------- stats

struct StatsOptions {
  std::string matrix;
  std::string test = "wilcoxon";
  std::string baseline;
  double tolerance = 0.005;
  std::string format = "markdown";
};

int cmd_stats(const StatsOptions& opt, std::ostream& out, std::ostream& err) {
  const ResultMatrix m = parse_matrix_csv(read_file(opt.matrix));
  const bool markdown = opt.format == "markdown";
  if (opt.test == "wilcoxon") {
    if (opt.baseline.empty()) throw ConfigError("wilcoxon needs --baseline");
    const auto rows = compare_to_baseline(m, opt.baseline, opt.tolerance);
    for (const auto& c : rows) {
      if (c.skipped > 0) {
        err << "warning: " << c.skipped << " problem(s) without results excluded for "
            << c.opponent << '\n';
      }
    }
    out << (markdown ? comparisons_markdown(rows) : comparisons_csv(rows));
    return kExitOk;
  }
  if (opt.test == "friedman") {
    std::vector<std::vector<double>> complete;
    for (std::size_t i = 0; i < m.values.size(); ++i) {
      const auto& row = m.values[i];
      if (std::any_of(row.begin(), row.end(), [](double v) { return std::isnan(v); })) {
        err << "warning: problem " << m.problems[i] << " has missing results, excluded\n";
        continue;
      }
      complete.push_back(row);
    }
    const auto f = friedman(complete);
    out << (markdown ? friedman_markdown(m, f) : friedman_csv(m, f));
    return kExitOk;
  }
  throw ConfigError("unknown test '" + opt.test + "'");
}

// ---------------------------------------------------------------- oracle

int cmd_oracle(const std::string& path, std::ostream& out) {
  const Instance inst = read_instance_file(path);
  const auto r = exact_route_generation(inst);
  json j{{"instance", inst.name},
         {"tasks", inst.task_count()},
         {"energy", r.energy},
         {"tokens", r.solution.tokens()},
         {"trips", trips_json(r.solution.trips())},
         {"partitions", r.partitions}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- export-routes

struct ExportOptions {
  std::string instance;
  std::string solution;
  std::string tokens;
  std::string out;
};

int cmd_export(const ExportOptions& opt, std::ostream& out) {
  const Instance inst = read_instance_file(opt.instance);
  std::vector<int> tokens;
  json schedule;
  if (!opt.solution.empty()) {
    const json result = json::parse(read_file(opt.solution));
    tokens = result.at("tokens").get<std::vector<int>>();
    if (result.contains("schedule")) schedule = result["schedule"];
  } else if (!opt.tokens.empty()) {
    std::stringstream ss(opt.tokens);
    std::string item;
    while (ss >> item) {
      std::replace(item.begin(), item.end(), ',', ' ');
      std::stringstream inner(item);
      int v = 0;
      while (inner >> v) tokens.push_back(v);
    }
  } else {
    throw ConfigError("export-routes needs --solution or --tokens");
  }
  const GiantSolution sol = GiantSolution::from_tokens(tokens, inst.task_count());
  const TripList trips = sol.trips();

  std::vector<int> robot_of(trips.size(), -1);
  if (schedule.is_object()) {
    // Schedules list trips per robot; map them back by task sequence.
    for (const auto& robot : schedule.at("robots")) {
      for (const auto& t : robot.at("trips")) {
        const auto tasks = t.at("tasks").get<TaskSequence>();
        for (std::size_t r = 0; r < trips.size(); ++r) {
          if (trips[r] == tasks && robot_of[r] < 0) {
            robot_of[r] = robot.at("robot").get<int>();
            break;
          }
        }
      }
    }
  }

  const Point depot = inst.coord(kDepot);
  json routes = json::array();
  for (std::size_t r = 0; r < trips.size(); ++r) {
    json line = json::array({json::array({depot.x, depot.y})});
    for (const int t : trips[r]) {
      const Point p = inst.coord(t);
      line.push_back(json::array({p.x, p.y}));
    }
    line.push_back(json::array({depot.x, depot.y}));
    json route{{"trip", r},
               {"tasks", trips[r]},
               {"energy", trip_energy(trips[r], inst)},
               {"load", trip_load(trips[r], inst)},
               {"polyline", std::move(line)}};
    route["robot"] = robot_of[r] >= 0 ? json(robot_of[r]) : json(nullptr);
    routes.push_back(std::move(route));
  }
  const json j{{"instance", inst.name},
               {"depot", json::array({depot.x, depot.y})},
               {"energy", evaluate(sol, inst).total},
               {"routes", std::move(routes)}};
  if (opt.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_file(opt.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-trip picking-robot routing solver"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate orchard instances");
  gen_cmd->add_option("--side", gen.spec.side_length, "Orchard side length");
  gen_cmd->add_option("--trees", gen.spec.tree_count, "Number of trees");
  gen_cmd->add_option("--maturity", gen.spec.maturity_rate, "Probability a tree is ripe");
  gen_cmd->add_option("--yield-low", gen.spec.yield_low);
  gen_cmd->add_option("--yield-high", gen.spec.yield_high);
  gen_cmd->add_option("--capacity", gen.spec.capacity, "Robot capacity Q");
  gen_cmd->add_option("--seed", gen.spec.seed, "Generator seed (base seed for suites)");
  gen_cmd->add_flag("--grid", gen.spec.grid, "Plant trees on a lattice");
  gen_cmd->add_option("--config", gen.config_path, "OrchardSpec JSON file");
  gen_cmd->add_option("--suite", gen.suite, "Named suite (paper18)");
  gen_cmd->add_option("--out", gen.out_dir, "Output directory");
  gen_cmd->add_option("--manifest", gen.manifest, "Manifest file name");

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  solve.flags.attach(solve_cmd);
  solve_cmd->add_option("--seed", solve.seed, "Random seed");
  solve_cmd->add_option("--out", solve.out, "Result JSON path (default stdout)");
  solve_cmd->add_option("--trace", solve.trace, "Generation trace CSV path");
  solve_cmd->add_option("--record", solve.record, "Run record JSON path");
  solve_cmd->add_option("--schedule-out", solve.schedule_out, "Schedule JSON path");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run methods x seeds over instances");
  bench_cmd->add_option("instances", bench.instances, "Instance files")->required();
  bench.flags.attach(bench_cmd);
  bench_cmd->add_option("--methods", bench.methods,
                        "Comma list: aedga, aedga-randinit, aedga-nols, ga, aedga-fr1..3");
  bench_cmd->add_option("--runs", bench.runs, "Runs per instance and method");
  bench_cmd->add_option("--seed", bench.seed, "Seed of the first run");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads");
  bench_cmd->add_option("--out", bench.out, "Matrix CSV path (default stdout)");
  bench_cmd->add_option("--runs-out", bench.runs_out, "Per-run CSV path");
  bench_cmd->add_option("--digits", bench.digits, "Significant digits per cell")
      ->check(CLI::Range(1, 17));

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Wilcoxon or Friedman over a result matrix");
  stats_cmd->add_option("matrix", stats.matrix, "Matrix CSV")->required();
  stats_cmd->add_option("--test", stats.test, "wilcoxon or friedman")
      ->check(CLI::IsMember({"wilcoxon", "friedman"}));
  stats_cmd->add_option("--baseline", stats.baseline, "Baseline column");
  stats_cmd->add_option("--tolerance", stats.tolerance, "Relative tolerance for '='");
  stats_cmd->add_option("--format", stats.format, "markdown or csv")
      ->check(CLI::IsMember({"markdown", "csv"}));

  std::string oracle_path;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum of a tiny instance");
  oracle_cmd->add_option("instance", oracle_path, "Instance file")->required();

  ExportOptions exp;
  auto* export_cmd = app.add_subcommand("export-routes", "Route geometry as JSON polylines");
  export_cmd->add_option("instance", exp.instance, "Instance file")->required();
  export_cmd->add_option("--solution", exp.solution, "Result JSON from solve");
  export_cmd->add_option("--tokens", exp.tokens, "Token sequence, e.g. \"0 1 2 0 3 0\"");
  export_cmd->add_option("--out", exp.out, "Output path (default stdout)");

  std::vector<std::string> reversed;
  for (std::size_t i = args.size(); i > 1; --i) reversed.push_back(args[i - 1]);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, gen_cmd, out);
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*bench_cmd) return cmd_bench(bench, out, err);
    if (*stats_cmd) return cmd_stats(stats, out, err);
    if (*oracle_cmd) return cmd_oracle(oracle_path, out);
    if (*export_cmd) return cmd_export(exp, out);
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace orchard::cli
