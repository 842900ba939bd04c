#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spanex/graph.hpp"
#include "spanex/rational.hpp"

namespace spanex {

struct SpannerResult {
  EdgeSubset edges;
  Rational epsilon;
  Rational lightness;
  /// Upper bound on the stretch: max over input edges (u, v) of d_H(u, v) / w(uv),
  /// with d_H taken when the edge was processed. Every shortest path is a
  /// sequence of edges, so this bounds d_H / d_G for all pairs.
  Rational stretch_certificate;
};

/// Greedy (1 + epsilon)-spanner: edges in (weight, id) order, each kept iff
/// the current d_H(u, v) exceeds (1 + epsilon) w(e).
SpannerResult greedy_spanner(const Graph& g, const Rational& epsilon);

/// w(h) / w(MST(g)). Throws DegenerateInstanceError when w(MST) = 0.
Rational lightness(const Graph& g, const EdgeSubset& h);

struct StretchMode {
  bool exact = true;
  std::uint64_t seed = 0;
  std::size_t count = 0;

  static StretchMode all_pairs() { return {}; }
  static StretchMode sampled(std::uint64_t seed, std::size_t count) { return {false, seed, count}; }
};

inline constexpr std::size_t kExactStretchVertexLimit = 2000;

struct StretchReport {
  Rational max_ratio{1};  ///< over checked pairs with d_G > 0
  std::size_t pairs_checked = 0;
  std::vector<std::pair<VertexId, VertexId>> violations;  ///< d_H > (1 + eps) d_G
  bool passed() const { return violations.empty(); }
};

/// Exact mode checks all pairs (n <= kExactStretchVertexLimit, otherwise
/// ResourceError); sampled mode checks `count` seeded random pairs.
StretchReport verify_spanner_stretch(const Graph& g, const EdgeSubset& h, const Rational& epsilon, StretchMode mode);

/// Minimality on H as its own graph: every edge e = (u, v) of h_graph has
/// d_{H - e}(u, v) > (1 + epsilon) w(e). `parent_ids`, when given, maps
/// h_graph's edge ids back to the input graph's for reporting.
DetourReport verify_spanner_minimality(const Graph& h_graph, const Rational& epsilon,
                                       const std::vector<EdgeId>& parent_ids = {});

struct MstContainmentReport {
  Rational mst_weight_g;
  Rational mst_weight_h;  ///< infinity if h does not span
  bool weight_equal = false;
  bool kruskal_tree_contained = false;
  std::vector<EdgeId> missing_tree_edges;
  bool passed() const { return weight_equal && kruskal_tree_contained; }
};

MstContainmentReport verify_mst_containment(const Graph& g, const EdgeSubset& h);

}  // namespace spanex
