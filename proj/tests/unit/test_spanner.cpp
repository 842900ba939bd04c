#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "spanex/errors.hpp"
#include "spanex/instances.hpp"
#include "spanex/spanner.hpp"

using namespace spanex;

namespace {

Graph cycle(std::uint32_t n) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1});
  return Graph(n, std::move(edges));
}

Graph complete(std::uint32_t n) {
  std::vector<Edge> edges;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) edges.push_back({a, b, 1});
  return Graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("greedy spanner of a tree is the tree") {
  Graph t = gen_random_tree(20, 9);
  SpannerResult r = greedy_spanner(t, Rational(1, 2));
  CHECK(r.edges == EdgeSubset::all(t));
  CHECK(r.lightness == Rational(1));
  CHECK(verify_spanner_minimality(t, Rational(1, 2)).passed());
  CHECK(verify_mst_containment(t, r.edges).passed());
}

TEST_CASE("unit triangle with epsilon 1/2 keeps all three edges") {
  Graph t = cycle(3);
  SpannerResult r = greedy_spanner(t, Rational(1, 2));
  CHECK(r.edges.size() == 3);
  CHECK(greedy_spanner(t, Rational(1)).edges.size() == 2);
}

TEST_CASE("unit C4 with epsilon 1") {
  Graph c4 = cycle(4);
  SpannerResult r = greedy_spanner(c4, Rational(1));
  CHECK(r.edges.size() == 4);
  CHECK(r.lightness == Rational(4, 3));
  DetourReport m = verify_spanner_minimality(c4, Rational(1));
  CHECK(m.passed());
  CHECK(m.entries[0].detour == Rational(3));
  CHECK(m.entries[0].bound == Rational(2));
}

TEST_CASE("lightness") {
  Graph c4 = cycle(4);
  CHECK(lightness(c4, minimum_spanning_tree(c4)) == Rational(1));
  CHECK(lightness(c4, EdgeSubset::all(c4)) == Rational(4, 3));
  CombInstance comb = gen_comb_lower_bound(5, Rational(2));
  CHECK(lightness(comb.graph, EdgeSubset::all(comb.graph)) == Rational(1));
  Graph zero(2, {{0, 1, 0}});
  CHECK_THROWS_AS(lightness(zero, EdgeSubset::all(zero)), DegenerateInstanceError);
}

TEST_CASE("stretch verification") {
  Graph c4 = cycle(4);
  CHECK(verify_spanner_stretch(c4, EdgeSubset::all(c4), Rational(1), StretchMode::all_pairs()).max_ratio ==
        Rational(1));

  // Wheel: hub 0 with spokes of weight 1, rim edges of weight 1/4. The MST
  // is one spoke plus rim edges; neighbours across the dropped rim edge are
  // far apart.
  const std::uint32_t rim = 8;
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= rim; ++v) edges.push_back({0, v, 1});
  for (VertexId v = 1; v <= rim; ++v) edges.push_back({v, v % rim + 1, Rational(1, 4)});
  Graph wheel(rim + 1, std::move(edges));
  StretchReport mst_only =
      verify_spanner_stretch(wheel, minimum_spanning_tree(wheel), Rational(1), StretchMode::all_pairs());
  CHECK_FALSE(mst_only.passed());
  CHECK(mst_only.max_ratio > Rational(2));

  SpannerResult r = greedy_spanner(wheel, Rational(1));
  StretchReport ok = verify_spanner_stretch(wheel, r.edges, Rational(1), StretchMode::all_pairs());
  CHECK(ok.passed());
  CHECK(ok.max_ratio <= r.stretch_certificate);

  StretchReport sampled = verify_spanner_stretch(wheel, r.edges, Rational(1), StretchMode::sampled(3, 40));
  CHECK(sampled.pairs_checked > 0);
  CHECK(sampled.passed());

  Graph big = gen_grid(50, 41, WeightDistribution::Unit, 0);
  CHECK_THROWS_AS(verify_spanner_stretch(big, EdgeSubset::all(big), Rational(1), StretchMode::all_pairs()),
                  ResourceError);
}

TEST_CASE("all-equal K5 keeps MST weight") {
  Graph k5 = complete(5);
  SpannerResult r = greedy_spanner(k5, Rational(1));
  MstContainmentReport m = verify_mst_containment(k5, r.edges);
  CHECK(m.weight_equal);
  CHECK(m.mst_weight_h == Rational(4));
  CHECK(m.passed());
}

TEST_CASE("epsilon must be positive") {
  Graph c4 = cycle(4);
  CHECK_THROWS_AS(greedy_spanner(c4, Rational(0)), ArgumentError);
  CHECK_THROWS_AS(greedy_spanner(c4, Rational(-1)), ArgumentError);
}

TEST_CASE("greedy spanner verifications on random graphs") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 40; ++round) {
    Graph g = oracle::random_connected(rng, 2 + rng() % 9, rng() % 12);
    for (Rational eps : {Rational(1, 2), Rational(1), Rational(2)}) {
      SpannerResult r = greedy_spanner(g, eps);
      CHECK(verify_spanner_stretch(g, r.edges, eps, StretchMode::all_pairs()).passed());
      CHECK(r.stretch_certificate <= Rational(1) + eps);
      Subgraph sub = edge_subgraph(g, r.edges);
      DetourReport m = verify_spanner_minimality(sub.graph, eps, sub.parent_edge);
      CHECK(m.passed());
      // Brute-force twin: no simple cycle of H is short relative to one of its edges.
      CHECK(oracle::short_cycle_edges(sub.graph, Rational(1) + eps).empty());
      CHECK(verify_mst_containment(g, r.edges).passed());
    }
  }
}

TEST_CASE("monotonicity probe in epsilon") {
  std::mt19937_64 rng(31337);
  std::size_t probes = 0, counterexamples = 0;
  for (int round = 0; round < 200; ++round) {
    Graph g = oracle::random_connected(rng, 3 + rng() % 10, rng() % 20, 12);
    Rational previous = Rational::infinity();
    for (Rational eps : {Rational(1, 4), Rational(1, 2), Rational(1), Rational(2), Rational(4)}) {
      Rational w = greedy_spanner(g, eps).edges.weight(g);
      ++probes;
      if (w > previous) {
        ++counterexamples;
        MESSAGE("weight increased with epsilon " << eps << ": " << previous << " -> " << w);
      }
      previous = w;
    }
  }
  MESSAGE("monotonicity probe: " << counterexamples << " counterexamples in " << probes << " steps");
}
