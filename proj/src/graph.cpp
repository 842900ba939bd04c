#include "spanex/graph.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <queue>

#include "spanex/errors.hpp"

namespace spanex {
namespace {

std::uint64_t next_token() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

struct HeapItem {
  Rational dist;
  VertexId vertex;
};

// Min-heap on (dist, vertex) so pop order is deterministic.
struct HeapGreater {
  bool operator()(const HeapItem& a, const HeapItem& b) const {
    if (auto c = a.dist <=> b.dist; c != 0) return c > 0;
    return a.vertex > b.vertex;
  }
};

using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, HeapGreater>;

}  // namespace

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)), token_(next_token()) {
  if (vertex_count_ == 0) throw ArgumentError("graph needs at least one vertex");
  if (edges_.size() >= kNoEdge) throw ArgumentError("too many edges");
  std::vector<std::size_t> degree(vertex_count_, 0);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.u >= vertex_count_ || e.v >= vertex_count_)
      throw ArgumentError("edge " + std::to_string(id) + " has an endpoint outside 0.." +
                          std::to_string(vertex_count_ - 1));
    if (e.u == e.v) throw ArgumentError("edge " + std::to_string(id) + " is a self-loop");
    if (e.weight.is_infinite() || e.weight.sign() < 0)
      throw ArgumentError("edge " + std::to_string(id) + " has weight " + e.weight.str() +
                          "; weights must be finite and non-negative");
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(vertex_count_ + 1, 0);
  for (std::size_t v = 0; v < vertex_count_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  incidences_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    incidences_[fill[e.u]++] = {static_cast<EdgeId>(id), e.v};
    incidences_[fill[e.v]++] = {static_cast<EdgeId>(id), e.u};
  }
}

const Edge& Graph::edge(EdgeId e) const {
  if (e >= edges_.size()) throw ArgumentError("invalid edge id " + std::to_string(e));
  return edges_[e];
}

std::span<const Incidence> Graph::incident(VertexId v) const {
  require_vertex(v);
  return std::span<const Incidence>(incidences_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

VertexId Graph::other_endpoint(EdgeId e, VertexId from) const {
  const Edge& ed = edge(e);
  if (ed.u == from) return ed.v;
  if (ed.v == from) return ed.u;
  throw ArgumentError("vertex " + std::to_string(from) + " is not an endpoint of edge " + std::to_string(e));
}

void Graph::require_vertex(VertexId v) const {
  if (v >= vertex_count_)
    throw ArgumentError("invalid vertex id " + std::to_string(v) + " (graph has " +
                        std::to_string(vertex_count_) + " vertices)");
}

Rational Graph::total_weight() const {
  Rational sum;
  for (const Edge& e : edges_) sum += e.weight;
  return sum;
}

// ---------------------------------------------------------------------------

EdgeSubset::EdgeSubset(const Graph& parent, std::vector<EdgeId> ids)
    : token_(parent.token()), ids_(std::move(ids)), member_(parent.edge_count(), false) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  for (EdgeId e : ids_) {
    if (e >= parent.edge_count()) throw ArgumentError("edge id " + std::to_string(e) + " not in parent graph");
    member_[e] = true;
  }
}

EdgeSubset EdgeSubset::all(const Graph& parent) {
  std::vector<EdgeId> ids(parent.edge_count());
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  return EdgeSubset(parent, std::move(ids));
}

void EdgeSubset::require_parent(const Graph& g) const {
  if (token_ != g.token()) throw ArgumentError("edge subset belongs to a different graph");
}

Rational EdgeSubset::weight(const Graph& parent) const {
  require_parent(parent);
  Rational sum;
  for (EdgeId e : ids_) sum += parent.weight(e);
  return sum;
}

bool EdgeSubset::is_subset_of(const EdgeSubset& other) const {
  return std::all_of(ids_.begin(), ids_.end(), [&](EdgeId e) { return other.contains(e); });
}

EdgeSubset EdgeSubset::unite(const EdgeSubset& other) const {
  if (token_ != other.token_) throw ArgumentError("union of subsets of different graphs");
  EdgeSubset out;
  out.token_ = token_;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(out.ids_));
  out.member_.assign(std::max(member_.size(), other.member_.size()), false);
  for (EdgeId e : out.ids_) out.member_[e] = true;
  return out;
}

Subgraph edge_subgraph(const Graph& g, const EdgeSubset& h) {
  h.require_parent(g);
  std::vector<Edge> edges;
  edges.reserve(h.size());
  for (EdgeId e : h.ids()) edges.push_back(g.edge(e));
  return Subgraph{Graph(g.vertex_count(), std::move(edges)), std::vector<EdgeId>(h.ids().begin(), h.ids().end())};
}

// ---------------------------------------------------------------------------

std::vector<EdgeId> DistanceTable::path_to(const Graph& g, VertexId target) const {
  std::vector<EdgeId> path;
  if (!reachable(target)) return path;
  for (VertexId v = target; v != source;) {
    EdgeId e = parent_edge[v];
    path.push_back(e);
    v = g.other_endpoint(e, v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

DistanceTable shortest_path_distances(const Graph& g, VertexId source, const EdgeFilter& filter) {
  g.require_vertex(source);
  DistanceTable table{source, std::vector<Rational>(g.vertex_count(), Rational::infinity()),
                      std::vector<EdgeId>(g.vertex_count(), kNoEdge), filter ? "filtered edges" : "all edges"};
  std::vector<char> done(g.vertex_count(), 0);
  MinHeap heap;
  table.dist[source] = Rational(0);
  heap.push({Rational(0), source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const Incidence& inc : g.incident(u)) {
      if (filter && !filter(inc.edge)) continue;
      if (done[inc.neighbor]) continue;
      Rational nd = d + g.weight(inc.edge);
      if (nd < table.dist[inc.neighbor]) {
        table.dist[inc.neighbor] = nd;
        table.parent_edge[inc.neighbor] = inc.edge;
        heap.push({std::move(nd), inc.neighbor});
      }
    }
  }
  return table;
}

Rational pair_distance(const Graph& g, VertexId source, VertexId target, const EdgeFilter& filter,
                       std::optional<Rational> cutoff) {
  g.require_vertex(source);
  g.require_vertex(target);
  if (source == target) return Rational(0);
  std::vector<Rational> dist(g.vertex_count(), Rational::infinity());
  std::vector<char> done(g.vertex_count(), 0);
  MinHeap heap;
  dist[source] = Rational(0);
  heap.push({Rational(0), source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    if (cutoff && d > *cutoff) break;
    if (u == target) return d;
    done[u] = 1;
    for (const Incidence& inc : g.incident(u)) {
      if (filter && !filter(inc.edge)) continue;
      if (done[inc.neighbor]) continue;
      Rational nd = d + g.weight(inc.edge);
      if (cutoff && nd > *cutoff) continue;
      if (nd < dist[inc.neighbor]) {
        dist[inc.neighbor] = nd;
        heap.push({std::move(nd), inc.neighbor});
      }
    }
  }
  return Rational::infinity();
}

// ---------------------------------------------------------------------------

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0), sets_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  --sets_;
  return true;
}

std::vector<std::uint32_t> connected_components(const Graph& g, const EdgeFilter& filter) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(g.vertex_count(), kUnset);
  std::uint32_t next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.incident(u)) {
        if (filter && !filter(inc.edge)) continue;
        if (label[inc.neighbor] == kUnset) {
          label[inc.neighbor] = next;
          stack.push_back(inc.neighbor);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  auto label = connected_components(g);
  return std::all_of(label.begin(), label.end(), [](std::uint32_t l) { return l == 0; });
}

void require_connected(const Graph& g) {
  auto label = connected_components(g);
  auto it = std::find_if(label.begin(), label.end(), [](std::uint32_t l) { return l != 0; });
  if (it == label.end()) return;
  auto separated = static_cast<std::size_t>(it - label.begin());
  auto size = std::count(label.begin(), label.end(), *it);
  throw StructuralError("graph is disconnected: vertex " + std::to_string(separated) +
                        " is unreachable from vertex 0 (its component has " + std::to_string(size) + " vertices)");
}

namespace {

EdgeSubset kruskal(const Graph& g, std::vector<EdgeId> order) {
  require_connected(g);
  DisjointSets sets(g.vertex_count());
  std::vector<EdgeId> tree;
  tree.reserve(g.vertex_count() - 1);
  for (EdgeId e : order) {
    const Edge& ed = g.edge(e);
    if (sets.unite(ed.u, ed.v)) {
      tree.push_back(e);
      if (tree.size() + 1 == g.vertex_count()) break;
    }
  }
  return EdgeSubset(g, std::move(tree));
}

}  // namespace

EdgeSubset minimum_spanning_tree(const Graph& g) {
  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return g.weight(a) < g.weight(b); });
  return kruskal(g, std::move(order));
}

EdgeSubset mst_maximizing_overlap(const Graph& g, const EdgeSubset& preferred) {
  preferred.require_parent(g);
  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    if (auto c = g.weight(a) <=> g.weight(b); c != 0) return c < 0;
    return preferred.contains(a) && !preferred.contains(b);
  });
  return kruskal(g, std::move(order));
}

bool is_spanning_tree(const Graph& g, const EdgeSubset& tree) {
  if (tree.parent_token() != g.token()) return false;
  if (tree.size() + 1 != g.vertex_count()) return false;
  DisjointSets sets(g.vertex_count());
  for (EdgeId e : tree.ids())
    if (!sets.unite(g.edge(e).u, g.edge(e).v)) return false;
  return true;
}

std::vector<EdgeId> fundamental_cycle(const Graph& g, const EdgeSubset& tree, EdgeId e) {
  tree.require_parent(g);
  if (!is_spanning_tree(g, tree)) throw ArgumentError("fundamental_cycle needs a spanning tree");
  if (tree.contains(e)) throw ArgumentError("edge " + std::to_string(e) + " is a tree edge and closes no cycle");
  const Edge& closing = g.edge(e);
  auto table = shortest_path_distances(g, closing.v, [&](EdgeId id) { return tree.contains(id); });
  std::vector<EdgeId> cycle{e};
  auto path = table.path_to(g, closing.u);
  cycle.insert(cycle.end(), path.begin(), path.end());
  return cycle;
}

DetourReport check_long_detours(const Graph& g, const EdgeSubset& subset, const Rational& factor) {
  subset.require_parent(g);
  DetourReport report;
  report.entries.reserve(subset.size());
  for (EdgeId e : subset.ids()) {
    const Edge& ed = g.edge(e);
    Rational detour = pair_distance(g, ed.u, ed.v, [&](EdgeId id) { return id != e && subset.contains(id); });
    DetourEntry entry{e, std::move(detour), factor * ed.weight};
    if (!entry.ok()) report.violations.push_back(e);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace spanex
