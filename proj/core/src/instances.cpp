#include "orchard/instances.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "orchard/error.hpp"

namespace orchard {

namespace {

constexpr const char* kProvenance =
    "TSPLIB EUC_2D coordinates; distances kept at full precision (no integer rounding)";
constexpr int kMaxGenerationAttempts = 64;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_num(std::string_view s, int line, const std::string& field) {
  T value{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, field, "expected a number, got '" + std::string(s) + "'");
  }
  return value;
}

enum class Section { kHeader, kCoords, kDemands, kDepots, kDone };

}  // namespace

void OrchardSpec::validate() const {
  if (!(side_length > 0.0)) throw ConfigError("side_length must be positive");
  if (tree_count < 1) throw ConfigError("tree_count must be at least 1");
  if (!(maturity_rate > 0.0 && maturity_rate <= 1.0)) {
    throw ConfigError("maturity_rate must lie in (0, 1]");
  }
  if (yield_low < 1 || yield_low > yield_high) {
    throw ConfigError("yield range must satisfy 1 <= yield_low <= yield_high");
  }
  if (!(capacity >= yield_high)) throw ConfigError("capacity must hold the largest yield");
}

void to_json(nlohmann::json& j, const OrchardSpec& s) {
  j = nlohmann::json{{"side_length", s.side_length}, {"tree_count", s.tree_count},
                     {"maturity_rate", s.maturity_rate}, {"yield_low", s.yield_low},
                     {"yield_high", s.yield_high},     {"capacity", s.capacity},
                     {"seed", s.seed},                 {"grid", s.grid}};
}

void from_json(const nlohmann::json& j, OrchardSpec& s) {
  s = OrchardSpec{};
  if (j.contains("side_length")) j.at("side_length").get_to(s.side_length);
  if (j.contains("tree_count")) j.at("tree_count").get_to(s.tree_count);
  if (j.contains("maturity_rate")) j.at("maturity_rate").get_to(s.maturity_rate);
  if (j.contains("yield_low")) j.at("yield_low").get_to(s.yield_low);
  if (j.contains("yield_high")) j.at("yield_high").get_to(s.yield_high);
  if (j.contains("capacity")) j.at("capacity").get_to(s.capacity);
  if (j.contains("seed")) j.at("seed").get_to(s.seed);
  if (j.contains("grid")) j.at("grid").get_to(s.grid);
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

Instance parse_instance(std::string_view text) {
  std::string name;
  std::vector<std::string> comments;
  std::optional<int> dimension;
  std::optional<double> capacity;
  bool saw_coords = false, saw_demands = false, saw_depots = false;
  std::map<int, Point> coords;
  std::map<int, double> demands;
  std::vector<int> depots;
  Section section = Section::kHeader;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (line == "NODE_COORD_SECTION") {
      section = Section::kCoords;
      saw_coords = true;
      continue;
    }
    if (line == "DEMAND_SECTION") {
      section = Section::kDemands;
      saw_demands = true;
      continue;
    }
    if (line == "DEPOT_SECTION") {
      section = Section::kDepots;
      saw_depots = true;
      continue;
    }
    if (line == "EOF") break;

    const auto colon = line.find(':');
    const bool is_keyword = colon != std::string_view::npos &&
                            std::isalpha(static_cast<unsigned char>(line.front()));
    if (is_keyword) {
      const std::string key(trim(line.substr(0, colon)));
      const std::string_view value = trim(line.substr(colon + 1));
      section = Section::kHeader;
      if (key == "NAME") {
        name = std::string(value);
      } else if (key == "COMMENT") {
        comments.emplace_back(value);
      } else if (key == "TYPE") {
        if (value != "CVRP") throw ParseError(line_no, key, "unsupported problem type");
      } else if (key == "DIMENSION") {
        dimension = parse_num<int>(value, line_no, key);
        if (*dimension < 1) throw ParseError(line_no, key, "dimension must be at least 1");
      } else if (key == "CAPACITY") {
        capacity = parse_num<double>(value, line_no, key);
        if (!(*capacity > 0.0)) throw ParseError(line_no, key, "capacity must be positive");
      } else if (key == "EDGE_WEIGHT_TYPE") {
        if (value != "EUC_2D") {
          throw ParseError(line_no, key, "only EUC_2D is supported");
        }
      } else {
        throw ParseError(line_no, key, "unsupported keyword");
      }
      continue;
    }

    const auto fields = split_ws(line);
    switch (section) {
      case Section::kCoords: {
        const std::string field = "NODE_COORD_SECTION";
        if (fields.size() != 3) throw ParseError(line_no, field, "expected 'id x y'");
        const int id = parse_num<int>(fields[0], line_no, field);
        if (!dimension || id < 1 || id > *dimension) {
          throw ParseError(line_no, field, "node id out of range");
        }
        const Point p{parse_num<double>(fields[1], line_no, field),
                      parse_num<double>(fields[2], line_no, field)};
        if (!coords.emplace(id, p).second) {
          throw ParseError(line_no, field, "duplicate node id " + std::to_string(id));
        }
        break;
      }
      case Section::kDemands: {
        const std::string field = "DEMAND_SECTION";
        if (fields.size() != 2) throw ParseError(line_no, field, "expected 'id demand'");
        const int id = parse_num<int>(fields[0], line_no, field);
        if (!dimension || id < 1 || id > *dimension) {
          throw ParseError(line_no, field, "node id out of range");
        }
        const double q = parse_num<double>(fields[1], line_no, field);
        if (id == 1 && q != 0.0) throw ParseError(line_no, field, "non-zero depot demand");
        if (id != 1 && !(q > 0.0)) throw ParseError(line_no, field, "demand must be positive");
        if (!capacity) throw ParseError(line_no, field, "CAPACITY must precede demands");
        if (q > *capacity) throw ParseError(line_no, field, "demand exceeds capacity");
        if (!demands.emplace(id, q).second) {
          throw ParseError(line_no, field, "duplicate node id " + std::to_string(id));
        }
        break;
      }
      case Section::kDepots: {
        const std::string field = "DEPOT_SECTION";
        if (fields.size() != 1) throw ParseError(line_no, field, "expected one id per line");
        const int id = parse_num<int>(fields[0], line_no, field);
        if (id == -1) {
          section = Section::kDone;
        } else {
          depots.push_back(id);
        }
        break;
      }
      default:
        throw ParseError(line_no, "line", "unexpected content '" + std::string(line) + "'");
    }
  }

  if (!dimension) throw ParseError(line_no, "DIMENSION", "missing");
  if (!capacity) throw ParseError(line_no, "CAPACITY", "missing");
  if (!saw_coords) throw ParseError(line_no, "NODE_COORD_SECTION", "missing section");
  if (!saw_demands) throw ParseError(line_no, "DEMAND_SECTION", "missing section");
  if (!saw_depots) throw ParseError(line_no, "DEPOT_SECTION", "missing section");
  if (static_cast<int>(coords.size()) != *dimension) {
    throw ParseError(line_no, "NODE_COORD_SECTION", "expected " + std::to_string(*dimension) +
                                                        " nodes, found " +
                                                        std::to_string(coords.size()));
  }
  if (static_cast<int>(demands.size()) != *dimension) {
    throw ParseError(line_no, "DEMAND_SECTION", "expected " + std::to_string(*dimension) +
                                                    " demands, found " +
                                                    std::to_string(demands.size()));
  }
  if (depots != std::vector<int>{1}) {
    throw ParseError(line_no, "DEPOT_SECTION", "exactly one depot with id 1 is supported");
  }

  std::vector<Point> pts;
  std::vector<double> yields;
  for (const auto& [id, p] : coords) pts.push_back(p);
  for (const auto& [id, q] : demands) {
    if (id != 1) yields.push_back(q);
  }
  Instance inst(std::move(pts), std::move(yields), *capacity, *capacity / 3.0);
  inst.name = std::move(name);
  inst.comments = std::move(comments);
  inst.provenance = kProvenance;
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string emit_instance(const Instance& inst) {
  std::ostringstream os;
  os << "NAME : " << inst.name << '\n';
  for (const auto& c : inst.comments) os << "COMMENT : " << c << '\n';
  os << "TYPE : CVRP\n";
  os << "DIMENSION : " << inst.node_count() << '\n';
  os << "EDGE_WEIGHT_TYPE : EUC_2D\n";
  os << "CAPACITY : " << format_number(inst.capacity()) << '\n';
  os << "NODE_COORD_SECTION\n";
  for (int i = 0; i < inst.node_count(); ++i) {
    const Point p = inst.coord(i);
    os << i + 1 << ' ' << format_number(p.x) << ' ' << format_number(p.y) << '\n';
  }
  os << "DEMAND_SECTION\n";
  for (int i = 0; i < inst.node_count(); ++i) {
    os << i + 1 << ' ' << format_number(inst.yield(i)) << '\n';
  }
  os << "DEPOT_SECTION\n1\n-1\nEOF\n";
  return os.str();
}

Instance generate_orchard(const OrchardSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::uniform_real_distribution<double> coord(0.0, spec.side_length);
  std::bernoulli_distribution ripe(spec.maturity_rate);
  std::uniform_int_distribution<int> yield(spec.yield_low, spec.yield_high);
  std::uniform_int_distribution<int> edge(0, 3);

  const int lattice = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(spec.tree_count))));
  const double spacing = spec.side_length / lattice;

  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    std::vector<Point> tasks;
    std::vector<double> yields;
    for (int t = 0; t < spec.tree_count; ++t) {
      Point p;
      if (spec.grid) {
        p = {(t % lattice + 0.5) * spacing, (t / lattice + 0.5) * spacing};
      } else {
        p.x = coord(rng);
        p.y = coord(rng);
      }
      if (ripe(rng)) {
        tasks.push_back(p);
        yields.push_back(static_cast<double>(yield(rng)));
      }
    }
    const double along = coord(rng);
    Point depot;
    switch (edge(rng)) {
      case 0: depot = {along, 0.0}; break;
      case 1: depot = {spec.side_length, along}; break;
      case 2: depot = {along, spec.side_length}; break;
      default: depot = {0.0, along}; break;
    }
    if (tasks.empty()) continue;

    std::vector<Point> coords;
    coords.reserve(tasks.size() + 1);
    coords.push_back(depot);
    coords.insert(coords.end(), tasks.begin(), tasks.end());
    Instance inst(std::move(coords), std::move(yields), spec.capacity, spec.capacity / 3.0);
    std::ostringstream name;
    name << "orchard-s" << format_number(spec.side_length) << "-t" << spec.tree_count << "-r"
         << format_number(spec.maturity_rate) << "-seed" << spec.seed;
    inst.name = name.str();
    inst.comments.push_back("generator " + nlohmann::json(spec).dump());
    inst.provenance = "generated orchard";
    return inst;
  }
  throw ConfigError("orchard generation produced no ripe tree after " +
                    std::to_string(kMaxGenerationAttempts) + " attempts");
}

InstanceStats instance_stats(const Instance& inst) {
  const int n = inst.task_count();
  if (n < 1) throw ConfigError("instance statistics need at least one task");
  InstanceStats s;
  s.n = n;
  s.capacity = inst.capacity();
  for (int i = 1; i <= n; ++i) {
    const double d = inst.distance(kDepot, i);
    s.mean_depot_distance += d;
    s.max_depot_distance = std::max(s.max_depot_distance, d);
    s.mean_yield += inst.yield(i);
    s.max_yield = std::max(s.max_yield, inst.yield(i));
  }
  s.mean_depot_distance /= n;
  s.mean_yield /= n;
  return s;
}

std::vector<OrchardSpec> orchard_suite(std::uint64_t base_seed) {
  constexpr std::array<int, 6> kTrees{100, 225, 400, 625, 900, 1225};
  constexpr std::array<double, 3> kRates{0.4, 0.6, 0.8};
  std::vector<OrchardSpec> suite;
  for (std::size_t s = 0; s < kTrees.size(); ++s) {
    for (const double rate : kRates) {
      OrchardSpec spec;
      spec.side_length = 20.0 + 10.0 * static_cast<double>(s);
      spec.tree_count = kTrees[s];
      spec.maturity_rate = rate;
      spec.seed = base_seed + suite.size();
      suite.push_back(spec);
    }
  }
  return suite;
}

}  // namespace orchard
