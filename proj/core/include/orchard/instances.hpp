#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orchard/core.hpp"

namespace orchard {

/// Parameters of a synthetic orchard. Trees are scattered over a square of
/// `side_length` meters; each tree is ripe with probability
/// `maturity_rate`, and ripe trees become picking tasks.
struct OrchardSpec {
  double side_length = 20.0;
  int tree_count = 100;
  double maturity_rate = 0.4;
  int yield_low = 40;
  int yield_high = 70;
  double capacity = 300.0;
  std::uint64_t seed = 0;
  /// Plant trees on a regular lattice instead of uniformly at random.
  bool grid = false;

  void validate() const;
};

void to_json(nlohmann::json& j, const OrchardSpec& spec);
void from_json(const nlohmann::json& j, OrchardSpec& spec);

/// Summary columns of a benchmark instance table.
struct InstanceStats {
  int n = 0;
  double mean_depot_distance = 0.0;  // mu_d
  double max_depot_distance = 0.0;   // lambda_d
  double mean_yield = 0.0;           // mu_y
  double max_yield = 0.0;            // lambda_y
  double capacity = 0.0;             // Q
};

/// Reads the TSPLIB CVRP subset (NAME, DIMENSION, CAPACITY, EUC_2D,
/// NODE_COORD_SECTION, DEMAND_SECTION, DEPOT_SECTION). Node 1 is the depot.
/// Distances are never rounded. Robot weight is set to capacity / 3.
Instance parse_instance(std::string_view text);

Instance read_instance_file(const std::string& path);

/// Inverse of parse_instance; numbers are written in shortest round-trip form.
std::string emit_instance(const Instance& inst);

/// Deterministic in `spec` (seed included). Retries internally while the
/// drawn orchard has no ripe tree, then throws ConfigError.
Instance generate_orchard(const OrchardSpec& spec);

/// Requires at least one task.
InstanceStats instance_stats(const Instance& inst);

/// The 18-instance suite: six orchard sizes times three maturity rates.
std::vector<OrchardSpec> orchard_suite(std::uint64_t base_seed);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace orchard
