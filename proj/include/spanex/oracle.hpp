#pragma once

#include <cstddef>
#include <vector>

#include "spanex/graph.hpp"
#include "spanex/rational.hpp"

namespace spanex {

/// Closed tour over the metric closure: `order` lists every vertex once
/// starting at 0, consecutive vertices (and the last back to 0) joined by
/// shortest paths.
struct TourResult {
  std::vector<VertexId> order;
  Rational cost;
};

inline constexpr std::size_t kExactTspVertexLimit = 15;
inline constexpr std::size_t kOptSpanEdgeLimit = 20;
inline constexpr std::size_t kCycleEnumerationLimit = 12;

/// Held-Karp. Among optimal tours returns the lexicographically smallest
/// order. ResourceError above kExactTspVertexLimit vertices.
TourResult exact_tsp(const Graph& g);

/// Reference tour by enumerating every vertex order after 0 (n <= 9).
TourResult permutation_tsp(const Graph& g);

struct MstBounds {
  Rational lower;  ///< w(MST)
  Rational upper;  ///< 2 w(MST)
};

MstBounds mst_bounds(const Graph& g);

/// Minimum lightness over all spanning subgraphs H with
/// d_H(u, v) <= (1 + epsilon) d_G(u, v). Exhaustive branch and bound;
/// ResourceError above kOptSpanEdgeLimit edges.
Rational brute_force_optspan(const Graph& g, const Rational& epsilon);

struct CycleViolation {
  std::vector<EdgeId> cycle;  ///< sorted edge ids
  EdgeId edge;
  Rational rest;   ///< w(C) - w(e)
  Rational bound;  ///< factor * w(e)
};

struct CycleCheckReport {
  std::size_t cyclomatic = 0;
  std::size_t cycles_checked = 0;
  std::vector<CycleViolation> violations;
  std::vector<EdgeId> violating_edges;  ///< sorted, unique
  bool passed() const { return violations.empty(); }
};

/// Enumerates every simple cycle C of `g` and checks
/// w(C) - w(e) > factor * w(e) for each e in C. ResourceError when the
/// cyclomatic number exceeds kCycleEnumerationLimit.
CycleCheckReport enumerate_cycles_check(const Graph& g, const Rational& factor);

}  // namespace spanex
