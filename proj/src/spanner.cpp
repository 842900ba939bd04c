#include "spanex/spanner.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "spanex/errors.hpp"

namespace spanex {

SpannerResult greedy_spanner(const Graph& g, const Rational& epsilon) {
  if (epsilon.is_infinite() || epsilon.sign() <= 0) throw ArgumentError("epsilon must be positive");
  require_connected(g);
  const Rational stretch = Rational(1) + epsilon;

  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return g.weight(a) < g.weight(b); });

  std::vector<char> in_h(g.edge_count(), 0);
  auto in_spanner = [&](EdgeId id) { return in_h[id] != 0; };
  Rational certificate(1);
  std::vector<EdgeId> kept;
  for (EdgeId e : order) {
    const Edge& ed = g.edge(e);
    Rational bound = stretch * ed.weight;
    Rational d = pair_distance(g, ed.u, ed.v, in_spanner, bound);
    if (d > bound) {
      in_h[e] = 1;
      kept.push_back(e);
    } else if (ed.weight.sign() > 0) {
      certificate = std::max(certificate, d / ed.weight);
    }
  }
  EdgeSubset h(g, std::move(kept));
  Rational light = lightness(g, h);
  return SpannerResult{std::move(h), epsilon, std::move(light), std::move(certificate)};
}

Rational lightness(const Graph& g, const EdgeSubset& h) {
  h.require_parent(g);
  Rational mst = minimum_spanning_tree(g).weight(g);
  if (mst.sign() == 0) throw DegenerateInstanceError("lightness undefined: minimum spanning tree has weight 0");
  return h.weight(g) / mst;
}

StretchReport verify_spanner_stretch(const Graph& g, const EdgeSubset& h, const Rational& epsilon, StretchMode mode) {
  h.require_parent(g);
  const Rational stretch = Rational(1) + epsilon;
  auto in_h = [&](EdgeId id) { return h.contains(id); };
  StretchReport report;

  auto check_pair = [&](VertexId s, VertexId t, const Rational& dg, const Rational& dh) {
    if (s == t || dg.is_infinite()) return;
    ++report.pairs_checked;
    if (dg.sign() == 0) {
      if (dh.sign() != 0) report.violations.emplace_back(s, t);
      return;
    }
    if (dh.is_infinite()) {
      report.max_ratio = Rational::infinity();
      report.violations.emplace_back(s, t);
      return;
    }
    Rational ratio = dh / dg;
    if (ratio > report.max_ratio) report.max_ratio = ratio;
    if (dh > stretch * dg) report.violations.emplace_back(s, t);
  };

  if (mode.exact) {
    if (g.vertex_count() > kExactStretchVertexLimit)
      throw ResourceError("exact stretch check limited to " + std::to_string(kExactStretchVertexLimit) +
                          " vertices; use sampled mode");
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      auto dg = shortest_path_distances(g, s);
      auto dh = shortest_path_distances(g, s, in_h);
      for (VertexId t = s + 1; t < g.vertex_count(); ++t) check_pair(s, t, dg.dist[t], dh.dist[t]);
    }
  } else {
    std::mt19937_64 rng(mode.seed);
    const auto n = g.vertex_count();
    for (std::size_t i = 0; i < mode.count && n > 1; ++i) {
      auto s = static_cast<VertexId>(rng() % n);
      auto t = static_cast<VertexId>(rng() % n);
      if (s == t) t = static_cast<VertexId>((t + 1) % n);
      check_pair(s, t, pair_distance(g, s, t), pair_distance(g, s, t, in_h));
    }
  }
  return report;
}

DetourReport verify_spanner_minimality(const Graph& h_graph, const Rational& epsilon,
                                       const std::vector<EdgeId>& parent_ids) {
  if (!parent_ids.empty() && parent_ids.size() != h_graph.edge_count())
    throw ArgumentError("parent id map does not match the spanner graph");
  DetourReport report = check_long_detours(h_graph, EdgeSubset::all(h_graph), Rational(1) + epsilon);
  if (!parent_ids.empty()) {
    for (auto& entry : report.entries) entry.edge = parent_ids[entry.edge];
    for (auto& e : report.violations) e = parent_ids[e];
  }
  return report;
}

MstContainmentReport verify_mst_containment(const Graph& g, const EdgeSubset& h) {
  h.require_parent(g);
  MstContainmentReport report;
  EdgeSubset tree = minimum_spanning_tree(g);
  report.mst_weight_g = tree.weight(g);
  Subgraph sub = edge_subgraph(g, h);
  if (is_connected(sub.graph)) {
    report.mst_weight_h = minimum_spanning_tree(sub.graph).weight(sub.graph);
  } else {
    report.mst_weight_h = Rational::infinity();
  }
  report.weight_equal = report.mst_weight_h == report.mst_weight_g;
  for (EdgeId e : tree.ids())
    if (!h.contains(e)) report.missing_tree_edges.push_back(e);
  report.kruskal_tree_contained = report.missing_tree_edges.empty();
  return report;
}

}  // namespace spanex
