#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "spanex/instances.hpp"

namespace spanex {
namespace {

Int128 orient(const GridPoint& a, const GridPoint& b, const GridPoint& c) {
  return Int128(b.x - a.x) * (c.y - a.y) - Int128(b.y - a.y) * (c.x - a.x);
}

// > 0 iff d lies strictly inside the circumcircle of counter-clockwise abc.
Int128 incircle(const GridPoint& a, const GridPoint& b, const GridPoint& c, const GridPoint& d) {
  Int128 adx = a.x - d.x, ady = a.y - d.y;
  Int128 bdx = b.x - d.x, bdy = b.y - d.y;
  Int128 cdx = c.x - d.x, cdy = c.y - d.y;
  Int128 alift = adx * adx + ady * ady;
  Int128 blift = bdx * bdx + bdy * bdy;
  Int128 clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) - blift * (adx * cdy - cdx * ady) + clift * (adx * bdy - bdx * ady);
}

using Tri = std::array<VertexId, 3>;

class Triangulation {
 public:
  explicit Triangulation(const std::vector<GridPoint>& pts) : pts_(pts) {}

  void add(VertexId a, VertexId b, VertexId c) {
    auto id = static_cast<std::uint32_t>(tris_.size());
    tris_.push_back({a, b, c});
    index(id);
  }

  // Lawson flips until every interior edge is locally Delaunay.
  void legalize() {
    std::vector<std::pair<VertexId, VertexId>> stack;
    for (const Tri& t : tris_)
      for (int i = 0; i < 3; ++i) stack.emplace_back(t[i], t[(i + 1) % 3]);
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      auto i1 = owner_.find(key(a, b));
      auto i2 = owner_.find(key(b, a));
      if (i1 == owner_.end() || i2 == owner_.end()) continue;
      std::uint32_t t1 = i1->second, t2 = i2->second;
      VertexId c = third(t1, a, b);
      VertexId d = third(t2, b, a);
      if (incircle(pts_[a], pts_[b], pts_[c], pts_[d]) <= 0) continue;
      unindex(t1);
      unindex(t2);
      tris_[t1] = {a, d, c};
      tris_[t2] = {d, b, c};
      index(t1);
      index(t2);
      stack.emplace_back(a, d);
      stack.emplace_back(d, b);
      stack.emplace_back(b, c);
      stack.emplace_back(c, a);
    }
  }

  std::vector<std::pair<VertexId, VertexId>> edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const Tri& t : tris_)
      for (int i = 0; i < 3; ++i) out.emplace_back(std::min(t[i], t[(i + 1) % 3]), std::max(t[i], t[(i + 1) % 3]));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  static std::uint64_t key(VertexId a, VertexId b) { return (std::uint64_t(a) << 32) | b; }

  VertexId third(std::uint32_t t, VertexId a, VertexId b) const {
    for (VertexId v : tris_[t])
      if (v != a && v != b) return v;
    return a;
  }

  void index(std::uint32_t t) {
    const Tri& tri = tris_[t];
    for (int i = 0; i < 3; ++i) owner_[key(tri[i], tri[(i + 1) % 3])] = t;
  }

  void unindex(std::uint32_t t) {
    const Tri& tri = tris_[t];
    for (int i = 0; i < 3; ++i) owner_.erase(key(tri[i], tri[(i + 1) % 3]));
  }

  const std::vector<GridPoint>& pts_;
  std::vector<Tri> tris_;
  std::unordered_map<std::uint64_t, std::uint32_t> owner_;
};

}  // namespace

std::optional<std::vector<std::pair<VertexId, VertexId>>> delaunay_edges(const std::vector<GridPoint>& points) {
  const std::size_t n = points.size();
  if (n < 3) return std::nullopt;
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return std::pair(points[a].x, points[a].y) < std::pair(points[b].x, points[b].y);
  });
  auto at = [&](std::size_t i) -> const GridPoint& { return points[order[i]]; };

  std::size_t k = 2;
  while (k < n && orient(at(0), at(1), at(k)) == 0) ++k;
  if (k == n) return std::nullopt;

  // Fan over the initial collinear run, then sweep in x order adding each
  // point to the hull edges it sees.
  Triangulation tri(points);
  const bool left = orient(at(0), at(1), at(k)) > 0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (left)
      tri.add(order[i], order[i + 1], order[k]);
    else
      tri.add(order[i + 1], order[i], order[k]);
  }
  std::vector<VertexId> hull;  // counter-clockwise
  if (left) {
    for (std::size_t i = 0; i <= k; ++i) hull.push_back(order[i]);
  } else {
    hull.push_back(order[0]);
    hull.push_back(order[k]);
    for (std::size_t i = k - 1; i >= 1; --i) hull.push_back(order[i]);
  }

  for (std::size_t idx = k + 1; idx < n; ++idx) {
    const VertexId q = order[idx];
    const std::size_t h = hull.size();
    std::vector<char> visible(h, 0);
    bool any = false;
    for (std::size_t i = 0; i < h; ++i) {
      visible[i] = orient(points[hull[i]], points[hull[(i + 1) % h]], points[q]) < 0;
      any = any || visible[i];
    }
    if (!any) return std::nullopt;  // unreachable for distinct points
    // First edge of the contiguous visible run.
    std::size_t first = 0;
    while (!(visible[first] && !visible[(first + h - 1) % h])) ++first;
    std::size_t count = 0;
    while (visible[(first + count) % h]) {
      std::size_t i = (first + count) % h;
      tri.add(hull[(i + 1) % h], hull[i], q);
      ++count;
    }
    // Keep the run's end points, drop its interior, insert q between them:
    // walk forward from the run's end vertex to its start vertex, then q.
    std::vector<VertexId> next;
    next.reserve(h - count + 2);
    for (std::size_t j = 0; j <= h - count; ++j) next.push_back(hull[(first + count + j) % h]);
    next.push_back(q);
    hull = std::move(next);
  }
  tri.legalize();
  return tri.edges();
}

}  // namespace spanex
