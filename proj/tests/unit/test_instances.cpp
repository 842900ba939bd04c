#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "spanex/errors.hpp"
#include "spanex/instances.hpp"

using namespace spanex;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) { return std::string(SPANEX_GOLDEN_DIR) + "/" + name; }

}  // namespace

TEST_CASE("comb structure") {
  CombInstance c = gen_comb_lower_bound(25, Rational(3));
  CHECK(c.graph.vertex_count() == 100);
  CHECK(c.graph.edge_count() == 99);
  CHECK(c.heavy_weight == Rational(13, 2));
  CHECK(c.start == 0);
  CHECK(c.warnings.empty());
  CHECK(is_connected(c.graph));
  // Tree weight 2k-1 + k + k(k+1)/(1+delta); the optimum tour doubles it.
  const Rational w = Rational(49 + 25) + Rational(25 * 26, 4);
  CHECK(c.graph.total_weight() == w);
  CHECK(comb_optimal_tour_cost(25, Rational(3)) == Rational(2) * w);
  CHECK(comb_ratio_lower_bound(25, Rational(3)) == Rational(625) / (Rational(2) * (Rational(625, 4) + Rational(74))));
  for (std::uint32_t k : {1u, 4u, 9u}) {
    CombInstance ck = gen_comb_lower_bound(k, Rational(3, 2));
    CHECK(ck.graph.total_weight() * Rational(2) == comb_optimal_tour_cost(k, Rational(3, 2)));
  }
}

TEST_CASE("comb degenerate parameters warn or fail") {
  CombInstance c = gen_comb_lower_bound(1, Rational(1));
  CHECK(c.graph.vertex_count() == 4);
  CHECK(c.heavy_weight == Rational(1));
  CHECK_FALSE(c.warnings.empty());
  CHECK_THROWS_AS(gen_comb_lower_bound(0, Rational(1)), ArgumentError);
  CHECK_THROWS_AS(gen_comb_lower_bound(3, Rational(0)), ArgumentError);
}

TEST_CASE("planar generator") {
  Graph tri = gen_random_planar(3, 1);
  CHECK(tri.vertex_count() == 3);
  CHECK(tri.edge_count() == 3);
  CHECK_THROWS_AS(gen_random_planar(2, 1), ArgumentError);

  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    PlanarPointSet ps = gen_random_planar_points(20 + seed * 7, seed);
    const std::size_t n = ps.points.size();
    CHECK(ps.edges.size() <= 3 * n - 6);
    CHECK(oracle::straight_line_crossing_free(ps.points, ps.edges));
    Graph g = gen_random_planar(n, seed);
    CHECK(is_connected(g));
    CHECK(g.edge_count() == ps.edges.size());
  }
}

TEST_CASE("delaunay of collinear points") {
  std::vector<GridPoint> line{{0, 0}, {1, 1}, {2, 2}, {5, 5}};
  CHECK_FALSE(delaunay_edges(line).has_value());
  std::vector<GridPoint> square{{0, 0}, {10, 0}, {0, 10}, {10, 10}};
  auto e = delaunay_edges(square);
  REQUIRE(e.has_value());
  CHECK(e->size() == 5);
}

TEST_CASE("snapped lengths are exact multiples of 2^-30") {
  const std::int64_t one = std::int64_t{1} << kPlanarCoordinateBits;
  CHECK(snapped_length({0, 0}, {one, 0}) == Rational(1));
  CHECK(snapped_length({0, 0}, {3 * one / 8, one / 2}) == Rational(5, 8));
  Rational diag = snapped_length({0, 0}, {one, one});
  CHECK((diag * Rational(spanex::Int128{1} << kPlanarWeightBits, 1)).is_integer());
  CHECK(std::abs(diag.to_double() - std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("grids, tori and trees") {
  Graph t33 = gen_toroidal_grid(3, 3, WeightDistribution::Uniform, 1);
  CHECK(t33.vertex_count() == 9);
  CHECK(t33.edge_count() == 18);
  for (VertexId v = 0; v < 9; ++v) CHECK(t33.incident(v).size() == 4);
  for (const auto& e : t33.edges()) {
    CHECK(e.weight >= Rational(1));
    CHECK(e.weight <= Rational(2));
  }
  Graph t44 = gen_toroidal_grid(4, 4, WeightDistribution::Unit, 0);
  CHECK(minimum_spanning_tree(t44).weight(t44) == Rational(15));
  Graph sq = gen_grid(2, 2, WeightDistribution::Unit, 0);
  CHECK(sq.edge_count() == 4);
  CHECK(minimum_spanning_tree(sq).weight(sq) == Rational(3));
  Graph tree = gen_random_tree(10, 5);
  CHECK(tree.edge_count() == 9);
  CHECK(is_connected(tree));
  CHECK_THROWS_AS(gen_toroidal_grid(2, 5, WeightDistribution::Unit, 0), ArgumentError);
}

TEST_CASE("erdos-renyi is connected and fails when it cannot be") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(is_connected(gen_erdos_renyi(15, 0.3, seed)));
  CHECK_THROWS_AS(gen_erdos_renyi(20, 0.0, 1), GenerationError);
  CHECK(gen_erdos_renyi(1, 0.0, 1).edge_count() == 0);
}

TEST_CASE("generators are deterministic in the seed") {
  CHECK(format_graph(gen_random_planar(40, 9)) == format_graph(gen_random_planar(40, 9)));
  CHECK(format_graph(gen_random_planar(40, 9)) != format_graph(gen_random_planar(40, 10)));
  CHECK(format_graph(gen_erdos_renyi(12, 0.4, 2)) == format_graph(gen_erdos_renyi(12, 0.4, 2)));
  CHECK(format_graph(gen_toroidal_grid(4, 5, WeightDistribution::Uniform, 8)) ==
        format_graph(gen_toroidal_grid(4, 5, WeightDistribution::Uniform, 8)));
}

TEST_CASE("edge-list parsing") {
  Graph g = parse_graph(std::string("2 1\n0 1 3 2"));
  CHECK(g.edge_count() == 1);
  CHECK(g.weight(0) == Rational(3, 2));

  Graph c = parse_graph(std::string("# comment\n\n3 2  # trailing\n0 1 1 1\n1 2 4 2\n"));
  CHECK(c.weight(1) == Rational(2));

  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("1 0 x\n") == 1);
  CHECK(line_of("2 1\n0 1 1 0\n") == 2);
  CHECK(line_of("2 1\n0 1 -1 1\n") == 2);
  CHECK(line_of("2 1\n0 2 1 1\n") == 2);
  CHECK(line_of("2 1\n1 1 1 1\n") == 2);
  CHECK(line_of("2 1\n0 1 1\n") == 2);
  CHECK(line_of("2 1\n0 1 a 1\n") == 2);
  CHECK(line_of("2 2\n0 1 1 1\n") != 0);
  CHECK(line_of("2 1\n0 1 1 1\n0 1 1 1\n") == 3);
  CHECK_THROWS_AS(parse_graph(std::string("# only a comment\n")), ParseError);
}

TEST_CASE("round trip through files is byte-identical") {
  for (Graph g : {gen_random_planar(30, 4), gen_erdos_renyi(14, 0.3, 4), gen_toroidal_grid(3, 4, WeightDistribution::Uniform, 4),
                  gen_comb_lower_bound(4, Rational(3, 2)).graph}) {
    std::string text = format_graph(g);
    CHECK(format_graph(parse_graph(text)) == text);
  }
  const std::string path = "spanex_roundtrip_test.txt";
  Graph g = gen_random_tree(17, 3);
  write_graph(path, g);
  CHECK(format_graph(read_graph(path)) == format_graph(g));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_graph("/nonexistent/graph.txt"), ArgumentError);
}

TEST_CASE("golden generator snapshots") {
  CHECK(format_graph(gen_random_planar(50, 20240501)) == slurp(golden("random_planar_50_seed20240501.txt")));
  CHECK(format_graph(gen_erdos_renyi(30, 0.2, 7)) == slurp(golden("erdos_renyi_30_p0.2_seed7.txt")));
  CHECK(format_graph(gen_toroidal_grid(5, 6, WeightDistribution::Uniform, 3)) ==
        slurp(golden("toroidal_grid_5x6_seed3.txt")));
}

TEST_CASE("comb traversal costs match the frozen snapshot") {
  std::istringstream in(slurp(golden("comb_k25_delta3_costs.txt")));
  std::string name, cost;
  std::map<std::string, Rational> frozen;
  while (in >> name >> cost) frozen[name] = Rational::parse(cost);
  CombInstance comb = gen_comb_lower_bound(25, Rational(3));
  ExplorationParams p;
  p.delta = Rational(3);
  p.tie_break = TieBreak::adversarial(comb.script);
  CHECK(run_blocking(comb.graph, p).total_cost == frozen.at("blocking"));
  CHECK(run_nearest_neighbor(comb.graph, comb.start).total_cost == frozen.at("nearest_neighbor"));
}

TEST_CASE("instance specs") {
  InstanceSpec s = parse_instance_spec(nlohmann::json::parse(R"({"family":"toroidal_grid","params":{"p":4,"q":5},"seed":3})"));
  CHECK(s.family == Family::ToroidalGrid);
  CHECK(instance_label(s) == "toroidal_grid{p=4,q=5}#3");
  Instance inst = build_instance(s);
  CHECK(inst.genus == 1);
  CHECK(inst.graph.edge_count() == 40);
  CHECK(parse_instance_spec(to_json(s)).params == s.params);

  CHECK_THROWS_AS(parse_instance_spec(nlohmann::json::parse(R"({"family":"moebius"})")), ArgumentError);
  CHECK_THROWS_AS(parse_instance_spec(nlohmann::json::parse(R"({"family":"grid","colour":1})")), ArgumentError);
  CHECK_THROWS_AS(build_instance(parse_instance_spec(nlohmann::json::parse(R"({"family":"grid","params":{"p":3}})"))),
                  ArgumentError);
  CHECK_THROWS_AS(
      build_instance(parse_instance_spec(nlohmann::json::parse(R"({"family":"grid","params":{"p":3,"q":-1}})"))),
      ArgumentError);

  Instance comb = build_instance(
      parse_instance_spec(nlohmann::json::parse(R"({"family":"comb_lower_bound","params":{"k":5,"delta":"3/2"}})")));
  CHECK(comb.tie_break.has_value());
  CHECK(comb.tie_break->kind == TieBreakKind::Adversarial);
  CHECK(comb.genus == 0);
  CHECK_FALSE(build_instance(parse_instance_spec(
                                 nlohmann::json::parse(R"({"family":"erdos_renyi","params":{"n":8,"p":0.5}})")))
                  .genus.has_value());
}
