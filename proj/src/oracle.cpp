#include "spanex/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "spanex/errors.hpp"

namespace spanex {

TourResult exact_tsp(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kExactTspVertexLimit)
    throw ResourceError("exact_tsp limited to " + std::to_string(kExactTspVertexLimit) +
                        " vertices; use mst_bounds for larger graphs");
  require_connected(g);
  if (n == 1) return TourResult{{0}, Rational(0)};

  std::vector<std::vector<Rational>> d(n);
  for (VertexId s = 0; s < n; ++s) d[s] = shortest_path_distances(g, s).dist;

  // rest[S][j]: cheapest way to start at j having visited S (j in S, 0 in S),
  // visit everything else and return to 0. Filled from full sets downwards so
  // the tour can be read off forwards, taking the smallest optimal next vertex.
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<std::vector<Rational>> rest(full + 1, std::vector<Rational>(n, Rational::infinity()));
  for (VertexId j = 0; j < n; ++j) rest[full][j] = d[j][0];
  for (std::size_t s = full; s-- > 1;) {
    if (!(s & 1)) continue;
    for (VertexId j = 0; j < n; ++j) {
      if (!(s >> j & 1)) continue;
      Rational best = Rational::infinity();
      for (VertexId k = 0; k < n; ++k) {
        if (s >> k & 1) continue;
        Rational c = d[j][k] + rest[s | (std::size_t{1} << k)][k];
        if (c < best) best = c;
      }
      rest[s][j] = best;
    }
  }

  TourResult tour{{0}, rest[1][0]};
  std::size_t s = 1;
  VertexId at = 0;
  while (s != full) {
    for (VertexId k = 0; k < n; ++k) {
      if (s >> k & 1) continue;
      if (d[at][k] + rest[s | (std::size_t{1} << k)][k] == rest[s][at]) {
        tour.order.push_back(k);
        s |= std::size_t{1} << k;
        at = k;
        break;
      }
    }
  }
  return tour;
}

TourResult permutation_tsp(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 9) throw ResourceError("permutation_tsp limited to 9 vertices");
  require_connected(g);
  std::vector<std::vector<Rational>> d(n);
  for (VertexId s = 0; s < n; ++s) d[s] = shortest_path_distances(g, s).dist;
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  TourResult best{order, Rational::infinity()};
  do {
    Rational c(0);
    for (std::size_t i = 0; i < n; ++i) c += d[order[i]][order[(i + 1) % n]];
    if (c < best.cost) best = {order, c};
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return best;
}

MstBounds mst_bounds(const Graph& g) {
  Rational w = minimum_spanning_tree(g).weight(g);
  return MstBounds{w, Rational(2) * w};
}

namespace {

class OptSpanSearch {
 public:
  OptSpanSearch(const Graph& g, const Rational& epsilon) : g_(g), stretch_(Rational(1) + epsilon) {
    order_.resize(g.edge_count());
    std::iota(order_.begin(), order_.end(), EdgeId{0});
    std::stable_sort(order_.begin(), order_.end(), [&](EdgeId a, EdgeId b) { return g.weight(b) < g.weight(a); });
    excluded_.assign(g.edge_count(), 0);
    best_ = g.total_weight();
  }

  Rational run() {
    search(0, Rational(0), g_.total_weight());
    return best_;
  }

 private:
  // Every excluded edge must keep a detour of at most (1 + eps) w(e) through
  // the edges not excluded. Excluding more only lengthens detours, so a
  // failure prunes the whole subtree.
  bool feasible() const {
    auto kept = [&](EdgeId id) { return excluded_[id] == 0; };
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      if (!excluded_[e]) continue;
      const Edge& ed = g_.edge(e);
      Rational bound = stretch_ * ed.weight;
      if (pair_distance(g_, ed.u, ed.v, kept, bound) > bound) return false;
    }
    return true;
  }

  void search(std::size_t depth, const Rational& committed, const Rational& remaining) {
    if (committed >= best_) return;
    if (depth == order_.size()) {
      best_ = remaining;
      return;
    }
    const EdgeId e = order_[depth];
    excluded_[e] = 1;
    if (feasible()) search(depth + 1, committed, remaining - g_.weight(e));
    excluded_[e] = 0;
    search(depth + 1, committed + g_.weight(e), remaining);
  }

  const Graph& g_;
  Rational stretch_;
  std::vector<EdgeId> order_;
  std::vector<char> excluded_;
  Rational best_;
};

}  // namespace

Rational brute_force_optspan(const Graph& g, const Rational& epsilon) {
  if (epsilon.is_infinite() || epsilon.sign() <= 0) throw ArgumentError("epsilon must be positive");
  if (g.edge_count() > kOptSpanEdgeLimit)
    throw ResourceError("brute_force_optspan limited to " + std::to_string(kOptSpanEdgeLimit) + " edges");
  require_connected(g);
  Rational mst = minimum_spanning_tree(g).weight(g);
  if (mst.sign() == 0) throw DegenerateInstanceError("lightness undefined: minimum spanning tree has weight 0");
  return OptSpanSearch(g, epsilon).run() / mst;
}

namespace {

using Bits = std::vector<std::uint64_t>;

void flip(Bits& b, EdgeId e) { b[e / 64] ^= std::uint64_t{1} << (e % 64); }

// Edge ids of a simple cycle, or empty if the set is not one cycle.
std::vector<EdgeId> as_simple_cycle(const Graph& g, const Bits& bits) {
  std::vector<EdgeId> ids;
  for (std::size_t w = 0; w < bits.size(); ++w)
    for (std::uint64_t x = bits[w]; x; x &= x - 1) ids.push_back(static_cast<EdgeId>(w * 64 + std::countr_zero(x)));
  if (ids.empty()) return {};
  std::vector<std::pair<VertexId, std::uint32_t>> degree;  // (vertex, count), small
  auto bump = [&](VertexId v) {
    for (auto& [x, c] : degree)
      if (x == v) return ++c, void();
    degree.emplace_back(v, 1);
  };
  for (EdgeId e : ids) {
    bump(g.edge(e).u);
    bump(g.edge(e).v);
  }
  for (auto& [v, c] : degree)
    if (c != 2) return {};
  // All degrees 2: a disjoint union of cycles; it is one cycle iff
  // |edges| == |vertices| and the edges are connected.
  if (degree.size() != ids.size()) return {};
  DisjointSets ds(g.vertex_count());
  for (EdgeId e : ids) ds.unite(g.edge(e).u, g.edge(e).v);
  const std::size_t root = ds.find(g.edge(ids[0]).u);
  for (auto& [v, c] : degree)
    if (ds.find(v) != root) return {};
  return ids;
}

}  // namespace

CycleCheckReport enumerate_cycles_check(const Graph& g, const Rational& factor) {
  CycleCheckReport report;
  const std::size_t m = g.edge_count();
  auto comp = connected_components(g);
  const std::size_t components = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  report.cyclomatic = m + components - g.vertex_count();
  if (report.cyclomatic > kCycleEnumerationLimit)
    throw ResourceError("cycle enumeration limited to cyclomatic number " + std::to_string(kCycleEnumerationLimit) +
                        ", got " + std::to_string(report.cyclomatic));
  if (report.cyclomatic == 0) return report;

  // Spanning forest by Kruskal on ids; fundamental cycles form a basis of the
  // cycle space, and every simple cycle is the XOR of a subset of them.
  DisjointSets ds(g.vertex_count());
  std::vector<char> in_forest(m, 0);
  for (EdgeId e = 0; e < m; ++e) in_forest[e] = ds.unite(g.edge(e).u, g.edge(e).v) ? 1 : 0;

  // Forest parent pointers for path extraction.
  std::vector<EdgeId> parent_edge(g.vertex_count(), kNoEdge);
  std::vector<std::uint32_t> depth(g.vertex_count(), 0);
  std::vector<char> seen(g.vertex_count(), 0);
  for (VertexId r = 0; r < g.vertex_count(); ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    std::vector<VertexId> stack{r};
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.incident(x)) {
        if (!in_forest[inc.edge] || seen[inc.neighbor]) continue;
        seen[inc.neighbor] = 1;
        parent_edge[inc.neighbor] = inc.edge;
        depth[inc.neighbor] = depth[x] + 1;
        stack.push_back(inc.neighbor);
      }
    }
  }

  const std::size_t words = (m + 63) / 64;
  std::vector<Bits> basis;
  for (EdgeId e = 0; e < m; ++e) {
    if (in_forest[e]) continue;
    Bits b(words, 0);
    flip(b, e);
    VertexId a = g.edge(e).u, c = g.edge(e).v;
    while (a != c) {
      if (depth[a] < depth[c]) std::swap(a, c);
      flip(b, parent_edge[a]);
      a = g.other_endpoint(parent_edge[a], a);
    }
    basis.push_back(std::move(b));
  }

  const std::size_t k = basis.size();
  std::vector<char> bad(m, 0);
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    Bits acc(words, 0);
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1)
        for (std::size_t w = 0; w < words; ++w) acc[w] ^= basis[i][w];
    std::vector<EdgeId> cycle = as_simple_cycle(g, acc);
    if (cycle.empty()) continue;
    ++report.cycles_checked;
    Rational total(0);
    for (EdgeId e : cycle) total += g.weight(e);
    for (EdgeId e : cycle) {
      Rational rest = total - g.weight(e);
      Rational bound = factor * g.weight(e);
      if (rest > bound) continue;
      report.violations.push_back({cycle, e, rest, bound});
      bad[e] = 1;
    }
  }
  for (EdgeId e = 0; e < m; ++e)
    if (bad[e]) report.violating_edges.push_back(e);
  return report;
}

}  // namespace spanex
