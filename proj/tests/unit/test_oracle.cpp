#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "spanex/errors.hpp"
#include "spanex/instances.hpp"
#include "spanex/oracle.hpp"
#include "spanex/spanner.hpp"

using namespace spanex;

namespace {

Graph cycle(std::uint32_t n) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1});
  return Graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("exact tsp small cases") {
  Graph e(2, {{0, 1, Rational(5, 2)}});
  CHECK(exact_tsp(e).cost == Rational(5));
  TourResult t = exact_tsp(cycle(3));
  CHECK(t.cost == Rational(3));
  CHECK(t.order == std::vector<VertexId>{0, 1, 2});
  CHECK(exact_tsp(Graph(1, {})).cost == Rational(0));
  CHECK_THROWS_AS(exact_tsp(gen_grid(4, 4, WeightDistribution::Unit, 0)), ResourceError);
}

TEST_CASE("tsp on a tree is twice its weight") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph t = gen_random_tree(9, seed);
    CHECK(exact_tsp(t).cost == Rational(2) * t.total_weight());
    MstBounds b = mst_bounds(t);
    CHECK(b.lower == t.total_weight());
    CHECK(b.upper == Rational(2) * t.total_weight());
  }
}

TEST_CASE("comb optimum equals the exact tour") {
  for (std::uint32_t k = 1; k <= 3; ++k)
    for (Rational delta : {Rational(1, 2), Rational(1), Rational(3)})
      CHECK(exact_tsp(gen_comb_lower_bound(k, delta).graph).cost == comb_optimal_tour_cost(k, delta));
}

TEST_CASE("unit triangle bounds bracket the optimum") {
  MstBounds b = mst_bounds(cycle(3));
  CHECK(b.lower == Rational(2));
  CHECK(b.upper == Rational(4));
}

TEST_CASE("exact tsp agrees with permutation enumeration") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 60; ++round) {
    Graph g = oracle::random_connected(rng, 1 + rng() % 8, rng() % 8);
    TourResult exact = exact_tsp(g);
    CHECK(exact.cost == oracle::tsp_by_permutation(g));
    CHECK(exact.cost == permutation_tsp(g).cost);
    MstBounds b = mst_bounds(g);
    CHECK(b.lower <= exact.cost);
    CHECK(exact.cost <= b.upper);
  }
}

TEST_CASE("optspan examples") {
  CHECK(brute_force_optspan(gen_random_tree(8, 2), Rational(1)) == Rational(1));
  CHECK(brute_force_optspan(cycle(4), Rational(1)) == Rational(4, 3));
  CHECK(brute_force_optspan(cycle(4), Rational(2)) == Rational(1));
  CHECK_THROWS_AS(brute_force_optspan(gen_grid(4, 5, WeightDistribution::Unit, 0), Rational(1)), ResourceError);
}

TEST_CASE("optspan matches full subset sweep and lower-bounds greedy") {
  std::mt19937_64 rng(404);
  for (int round = 0; round < 40; ++round) {
    Graph g = oracle::random_connected(rng, 2 + rng() % 6, rng() % 6);
    for (Rational eps : {Rational(1, 2), Rational(1), Rational(2)}) {
      Rational opt = brute_force_optspan(g, eps);
      Rational mst = minimum_spanning_tree(g).weight(g);
      CHECK(opt == oracle::optspan_weight_by_subsets(g, eps) / mst);
      CHECK(opt <= greedy_spanner(g, eps).lightness);
    }
  }
}

TEST_CASE("cycle enumeration check") {
  Graph tree = gen_random_tree(10, 1);
  CycleCheckReport t = enumerate_cycles_check(tree, Rational(5));
  CHECK(t.passed());
  CHECK(t.cycles_checked == 0);

  CycleCheckReport c4 = enumerate_cycles_check(cycle(4), Rational(2));
  CHECK(c4.passed());
  CHECK(c4.cycles_checked == 1);
  CHECK(c4.cyclomatic == 1);
  CHECK_FALSE(enumerate_cycles_check(cycle(4), Rational(3)).passed());

  CHECK_THROWS_AS(enumerate_cycles_check(gen_grid(5, 5, WeightDistribution::Unit, 0), Rational(1)), ResourceError);
}

TEST_CASE("cycle enumeration agrees with DFS cycles and the detour check") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 60; ++round) {
    Graph g = oracle::random_connected(rng, 2 + rng() % 8, rng() % 6);
    const Rational factor = std::vector<Rational>{Rational(1), Rational(3, 2), Rational(3)}[round % 3];
    CycleCheckReport r = enumerate_cycles_check(g, factor);
    CHECK(r.cycles_checked == oracle::simple_cycles(g).size());
    CHECK(r.violating_edges == oracle::short_cycle_edges(g, factor));
    DetourReport d = check_long_detours(g, EdgeSubset::all(g), factor);
    std::vector<EdgeId> dv = d.violations;
    std::sort(dv.begin(), dv.end());
    CHECK(dv == r.violating_edges);
  }
}
