#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spanex/rational.hpp"

namespace spanex {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

struct Edge {
  VertexId u;
  VertexId v;
  Rational weight;
};

struct Incidence {
  EdgeId edge;
  VertexId neighbor;
};

/// Immutable weighted undirected multigraph. Edge ids are the positions in
/// the constructor's edge list. Self-loops, negative and infinite weights are
/// rejected; parallel edges are allowed.
class Graph {
 public:
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Edge& edge(EdgeId e) const;
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Incidence> incident(VertexId v) const;
  VertexId other_endpoint(EdgeId e, VertexId from) const;
  const Rational& weight(EdgeId e) const { return edge(e).weight; }

  bool has_vertex(VertexId v) const noexcept { return v < vertex_count_; }
  void require_vertex(VertexId v) const;

  Rational total_weight() const;

  /// Identity shared by copies of the same graph; subsets carry it so that
  /// a subset is never applied to a foreign graph.
  std::uint64_t token() const noexcept { return token_; }

 private:
  std::size_t vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidences_;
  std::uint64_t token_;
};

/// Sorted set of edge ids of one parent graph.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  EdgeSubset(const Graph& parent, std::vector<EdgeId> ids);

  static EdgeSubset all(const Graph& parent);

  bool contains(EdgeId e) const noexcept { return e < member_.size() && member_[e]; }
  std::span<const EdgeId> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  std::uint64_t parent_token() const noexcept { return token_; }

  Rational weight(const Graph& parent) const;
  bool is_subset_of(const EdgeSubset& other) const;
  EdgeSubset unite(const EdgeSubset& other) const;

  /// Throws ArgumentError unless this subset belongs to `g`.
  void require_parent(const Graph& g) const;

  friend bool operator==(const EdgeSubset& a, const EdgeSubset& b) {
    return a.token_ == b.token_ && a.ids_ == b.ids_;
  }

 private:
  std::uint64_t token_ = 0;
  std::vector<EdgeId> ids_;
  std::vector<bool> member_;
};

/// The subgraph (V, h) as a graph of its own, plus the map back to parent ids.
struct Subgraph {
  Graph graph;
  std::vector<EdgeId> parent_edge;
};

Subgraph edge_subgraph(const Graph& g, const EdgeSubset& h);

using EdgeFilter = std::function<bool(EdgeId)>;

struct DistanceTable {
  VertexId source;
  std::vector<Rational> dist;      ///< Rational::infinity() when unreachable
  std::vector<EdgeId> parent_edge; ///< kNoEdge for the source and unreached
  std::string restriction;

  bool reachable(VertexId v) const { return dist.at(v).is_finite(); }
  /// Edge ids from source to `target` in walking order; empty if unreachable.
  std::vector<EdgeId> path_to(const Graph& g, VertexId target) const;
};

/// Dijkstra over the edges admitted by `filter` (all edges when empty).
DistanceTable shortest_path_distances(const Graph& g, VertexId source, const EdgeFilter& filter = {});

/// Single-pair distance with early exit. Returns infinity if `target` is
/// unreachable, or if its distance exceeds `cutoff` (when given).
Rational pair_distance(const Graph& g, VertexId source, VertexId target, const EdgeFilter& filter = {},
                       std::optional<Rational> cutoff = std::nullopt);

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t set_count() const noexcept { return sets_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::size_t sets_;
};

/// Component label per vertex (labels are 0..k-1 in order of smallest vertex).
std::vector<std::uint32_t> connected_components(const Graph& g, const EdgeFilter& filter = {});
bool is_connected(const Graph& g);
/// Throws StructuralError naming a vertex unreachable from vertex 0.
void require_connected(const Graph& g);

/// Kruskal, ties broken by ascending edge id.
EdgeSubset minimum_spanning_tree(const Graph& g);

/// A minimum spanning tree sharing as many edges as possible with `preferred`
/// (Kruskal over (weight asc, preferred first, id asc)).
EdgeSubset mst_maximizing_overlap(const Graph& g, const EdgeSubset& preferred);

/// The cycle closed by non-tree edge `e` in spanning tree `tree`: starts with
/// e (walked u -> v), then the tree path from v back to u.
std::vector<EdgeId> fundamental_cycle(const Graph& g, const EdgeSubset& tree, EdgeId e);

bool is_spanning_tree(const Graph& g, const EdgeSubset& tree);

/// Per-edge "long detour" check shared by the Blocking cycle property and
/// spanner minimality: for each e = (u, v) of `subset`, d_{subset - e}(u, v)
/// must exceed factor * w(e).
struct DetourEntry {
  EdgeId edge;
  Rational detour;  ///< d_{subset - e}(u, v); infinity when e is a bridge
  Rational bound;   ///< factor * w(e)
  bool ok() const { return detour > bound; }
};

struct DetourReport {
  std::vector<DetourEntry> entries;
  std::vector<EdgeId> violations;
  bool passed() const { return violations.empty(); }
};

DetourReport check_long_detours(const Graph& g, const EdgeSubset& subset, const Rational& factor);

}  // namespace spanex
