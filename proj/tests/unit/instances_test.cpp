#include <gtest/gtest.h>

#include <string>

#include "orchard/error.hpp"
#include "orchard/instances.hpp"

using namespace orchard;

namespace {

std::string minimal_file(const std::string& demand) {
  return "NAME : tiny\n"
         "TYPE : CVRP\n"
         "DIMENSION : 2\n"
         "EDGE_WEIGHT_TYPE : EUC_2D\n"
         "CAPACITY : 10\n"
         "NODE_COORD_SECTION\n"
         "1 0 0\n"
         "2 3 4\n"
         "DEMAND_SECTION\n"
         "1 0\n"
         "2 " + demand + "\n"
         "DEPOT_SECTION\n"
         "1\n"
         "-1\n"
         "EOF\n";
}

}  // namespace

TEST(Parse, MinimalFile) {
  const auto inst = parse_instance(minimal_file("4"));
  EXPECT_EQ(inst.task_count(), 1);
  EXPECT_DOUBLE_EQ(inst.distance(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(inst.capacity(), 10.0);
  EXPECT_DOUBLE_EQ(inst.robot_weight(), 10.0 / 3.0);
  EXPECT_DOUBLE_EQ(inst.yield(1), 4.0);
  EXPECT_EQ(inst.name, "tiny");
}

TEST(Parse, DemandExceedsCapacity) {
  try {
    parse_instance(minimal_file("11"));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "DEMAND_SECTION");
    EXPECT_EQ(e.line(), 11);
    EXPECT_NE(std::string(e.what()).find("demand exceeds capacity"), std::string::npos);
  }
}

TEST(Parse, MissingSection) {
  std::string text = minimal_file("4");
  text = text.substr(0, text.find("DEPOT_SECTION")) + "EOF\n";
  EXPECT_THROW(parse_instance(text), ParseError);
}

TEST(Parse, DuplicateNode) {
  std::string text = minimal_file("4");
  text.replace(text.find("2 3 4"), 5, "1 3 4");
  EXPECT_THROW(parse_instance(text), ParseError);
}

TEST(Parse, NonZeroDepotDemand) {
  std::string text = minimal_file("4");
  text.replace(text.find("1 0\n"), 4, "1 2\n");
  EXPECT_THROW(parse_instance(text), ParseError);
}

TEST(Parse, RoundTripFixpoint) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    OrchardSpec spec;
    spec.seed = seed;
    spec.tree_count = 30;
    auto inst = generate_orchard(spec);
    inst.name = "rt" + std::to_string(seed);
    const std::string once = emit_instance(inst);
    const auto back = parse_instance(once);
    EXPECT_EQ(emit_instance(back), once);
    EXPECT_EQ(back.coords(), inst.coords());
    for (int i = 0; i < inst.node_count(); ++i) EXPECT_EQ(back.yield(i), inst.yield(i));
  }
}

TEST(Generate, AllRipe) {
  OrchardSpec spec;
  spec.maturity_rate = 1.0;
  spec.tree_count = 100;
  EXPECT_EQ(generate_orchard(spec).task_count(), 100);
}

TEST(Generate, Deterministic) {
  OrchardSpec spec;
  spec.seed = 7;
  EXPECT_EQ(emit_instance(generate_orchard(spec)), emit_instance(generate_orchard(spec)));
  spec.grid = true;
  EXPECT_EQ(emit_instance(generate_orchard(spec)), emit_instance(generate_orchard(spec)));
}

TEST(Generate, ExpectedTaskCount) {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    OrchardSpec spec;
    spec.seed = seed;
    total += generate_orchard(spec).task_count();
  }
  EXPECT_NEAR(total / 200.0, 40.0, 3.0);
}

TEST(Generate, YieldsAndBounds) {
  OrchardSpec spec;
  spec.seed = 3;
  const auto inst = generate_orchard(spec);
  for (int i = 1; i < inst.node_count(); ++i) {
    EXPECT_GE(inst.yield(i), 40.0);
    EXPECT_LE(inst.yield(i), 70.0);
    EXPECT_GE(inst.coord(i).x, 0.0);
    EXPECT_LE(inst.coord(i).x, 20.0);
  }
  EXPECT_DOUBLE_EQ(inst.capacity(), 300.0);
}

TEST(Generate, InvalidSpec) {
  OrchardSpec spec;
  spec.maturity_rate = 1.5;
  EXPECT_THROW(generate_orchard(spec), ConfigError);
  spec = OrchardSpec{};
  spec.yield_high = 500;
  EXPECT_THROW(generate_orchard(spec), ConfigError);
}

TEST(Stats, TwoTasks) {
  Instance inst({{0, 0}, {3, 4}, {6, 8}}, {40.0, 70.0}, 300.0, 100.0);
  const auto s = instance_stats(inst);
  EXPECT_EQ(s.n, 2);
  EXPECT_DOUBLE_EQ(s.mean_yield, 55.0);
  EXPECT_DOUBLE_EQ(s.max_yield, 70.0);
  EXPECT_DOUBLE_EQ(s.mean_depot_distance, 7.5);
  EXPECT_DOUBLE_EQ(s.max_depot_distance, 10.0);
  EXPECT_DOUBLE_EQ(s.capacity, 300.0);
}

TEST(Stats, Singleton) {
  Instance inst({{0, 0}, {3, 4}}, {10.0}, 300.0, 100.0);
  const auto s = instance_stats(inst);
  EXPECT_DOUBLE_EQ(s.mean_depot_distance, 5.0);
  EXPECT_DOUBLE_EQ(s.max_depot_distance, 5.0);
}

TEST(Suite, EighteenInstances) {
  const auto suite = orchard_suite(1);
  EXPECT_EQ(suite.size(), 18u);
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(5.0), "5");
  const double v = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_number(v)), v);
}
