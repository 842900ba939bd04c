#include "spanex/exploration.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>

#include "spanex/errors.hpp"

namespace spanex {

void AccessAudit::record_violation(std::string what) {
  ++violations;
  if (samples.size() < 8) samples.push_back(std::move(what));
}

std::span<const Incidence> OnlineView::incident(VertexId v) const {
  ++audit_.reads;
  if (!explored_.at(v)) audit_.record_violation("adjacency of unexplored vertex " + std::to_string(v));
  return graph_.incident(v);
}

const Edge& OnlineView::edge(EdgeId e) const {
  ++audit_.reads;
  const Edge& ed = graph_.edge(e);
  if (!explored_[ed.u] && !explored_[ed.v])
    audit_.record_violation("edge " + std::to_string(e) + " with no explored endpoint");
  return ed;
}

// ---------------------------------------------------------------------------

ExplorationState::ExplorationState(const Graph& g, VertexId start)
    : explored_(g.vertex_count(), 0),
      learned_(g.vertex_count(), 0),
      view_(g, explored_),
      start_(start),
      position_(start),
      boundary_(g.edge_count(), 0),
      into_(g.vertex_count()),
      min_in_weight_(g.vertex_count(), Rational::infinity()),
      records_(g.edge_count()),
      waiting_(g.vertex_count()),
      edge_count_(g.edge_count()) {
  g.require_vertex(start);
  learned_[start] = 1;
  explore(start);
}

void ExplorationState::set_position(VertexId v) {
  if (!is_explored(v)) throw StateError("agent cannot stand on unexplored vertex " + std::to_string(v));
  position_ = v;
}

void ExplorationState::explore(VertexId v) {
  if (v >= explored_.size()) throw ArgumentError("invalid vertex id " + std::to_string(v));
  if (explored_[v]) throw StateError("vertex " + std::to_string(v) + " is already explored");
  if (!learned_[v]) throw StateError("vertex " + std::to_string(v) + " is not learned yet");
  explored_[v] = 1;
  ++explored_count_;
  for (EdgeId e : into_[v]) {
    boundary_[e] = 0;
    --boundary_count_;
  }
  into_[v].clear();
  into_[v].shrink_to_fit();
  min_in_weight_[v] = Rational::infinity();
  for (const Incidence& inc : view_.incident(v)) {
    if (explored_[inc.neighbor]) continue;
    boundary_[inc.edge] = 1;
    ++boundary_count_;
    into_[inc.neighbor].push_back(inc.edge);
    learned_[inc.neighbor] = 1;
    const Rational& w = view_.weight(inc.edge);
    if (w < min_in_weight_[inc.neighbor]) min_in_weight_[inc.neighbor] = w;
  }
}

bool ExplorationState::is_boundary(EdgeId e) const {
  if (e >= edge_count_) throw ArgumentError("invalid edge id " + std::to_string(e));
  return boundary_[e] != 0;
}

OrientedEdge ExplorationState::orient(EdgeId e) const {
  if (!is_boundary(e)) throw StateError("edge " + std::to_string(e) + " is not a boundary edge");
  const Edge& ed = view_.edge(e);
  return explored_[ed.u] ? OrientedEdge{e, ed.u, ed.v} : OrientedEdge{e, ed.v, ed.u};
}

std::vector<EdgeId> ExplorationState::boundary_edges() const {
  std::vector<EdgeId> out;
  out.reserve(boundary_count_);
  for (EdgeId e = 0; e < edge_count_; ++e)
    if (boundary_[e]) out.push_back(e);
  return out;
}

std::vector<EdgeId> ExplorationState::boundary_into(VertexId v) const { return into_.at(v); }

void ExplorationState::record_blockers(EdgeId e, std::span<const VertexId> blockers) {
  auto& rec = records_.at(e);
  for (VertexId b : blockers) {
    auto it = std::lower_bound(rec.begin(), rec.end(), b);
    if (it != rec.end() && *it == b) continue;
    rec.insert(it, b);
    waiting_.at(b).push_back(e);
  }
}

void ExplorationState::drop_stale_waiting(VertexId v) {
  auto& w = waiting_.at(v);
  std::erase_if(w, [&](EdgeId e) { return !boundary_[e]; });
}

// ---------------------------------------------------------------------------

namespace {

// Dijkstra restricted to explored vertices, with arrays reused across runs.
class ExploredSearch {
 public:
  explicit ExploredSearch(std::size_t n) : dist_(n), parent_(n, kNoEdge), stamp_(n, 0), done_(n, 0) {}

  struct Source {
    VertexId vertex;
    Rational dist;
  };

  // Settles explored vertices in distance order, never beyond `cutoff`,
  // stopping once `target` is settled.
  void run(const ExplorationState& st, std::span<const Source> sources, const Rational* cutoff,
           std::optional<VertexId> target) {
    ++epoch_;
    settled_.clear();
    const OnlineView& view = st.view();
    std::priority_queue<Item, std::vector<Item>, Greater> heap;
    for (const Source& s : sources) {
      if (!st.is_explored(s.vertex)) continue;
      if (cutoff && s.dist > *cutoff) continue;
      if (relax(s.vertex, s.dist, kNoEdge)) heap.push({s.dist, s.vertex});
    }
    while (!heap.empty()) {
      Item top = heap.top();
      heap.pop();
      VertexId u = top.vertex;
      if (done_[u] == epoch_ || top.dist != dist_[u]) continue;
      done_[u] = epoch_;
      settled_.push_back(u);
      if (target && u == *target) return;
      for (const Incidence& inc : view.incident(u)) {
        if (!st.is_explored(inc.neighbor) || done_[inc.neighbor] == epoch_) continue;
        Rational nd = top.dist + view.weight(inc.edge);
        if (cutoff && nd > *cutoff) continue;
        if (relax(inc.neighbor, nd, inc.edge)) heap.push({std::move(nd), inc.neighbor});
      }
    }
  }

  std::span<const VertexId> settled() const { return settled_; }
  bool settled(VertexId v) const { return done_[v] == epoch_; }
  const Rational& dist(VertexId v) const { return dist_[v]; }
  EdgeId parent(VertexId v) const { return parent_[v]; }

 private:
  struct Item {
    Rational dist;
    VertexId vertex;
  };
  struct Greater {
    bool operator()(const Item& a, const Item& b) const {
      if (auto c = a.dist <=> b.dist; c != 0) return c > 0;
      return a.vertex > b.vertex;
    }
  };

  bool relax(VertexId v, const Rational& d, EdgeId via) {
    if (stamp_[v] != epoch_ || d < dist_[v]) {
      stamp_[v] = epoch_;
      dist_[v] = d;
      parent_[v] = via;
      return true;
    }
    return false;
  }

  std::vector<Rational> dist_;
  std::vector<EdgeId> parent_;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::uint64_t> done_;
  std::vector<VertexId> settled_;
  std::uint64_t epoch_ = 0;
};

// Best internally-explored distance from the last search's sources to each
// unexplored vertex within `cutoff`.
class FrontierReach {
 public:
  explicit FrontierReach(std::size_t n) : reach_(n), stamp_(n, 0) {}

  void collect(const ExplorationState& st, const ExploredSearch& search, const Rational& cutoff) {
    ++epoch_;
    touched_.clear();
    const OnlineView& view = st.view();
    for (VertexId a : search.settled()) {
      for (const Incidence& inc : view.incident(a)) {
        if (st.is_explored(inc.neighbor)) continue;
        Rational r = search.dist(a) + view.weight(inc.edge);
        if (r > cutoff) continue;
        VertexId b = inc.neighbor;
        if (stamp_[b] != epoch_) {
          stamp_[b] = epoch_;
          reach_[b] = std::move(r);
          touched_.push_back(b);
        } else if (r < reach_[b]) {
          reach_[b] = std::move(r);
        }
      }
    }
    std::sort(touched_.begin(), touched_.end());
  }

  // Unexplored v' with a boundary edge lighter than `weight` and
  // reach(v') <= bound.
  std::vector<VertexId> blockers(const ExplorationState& st, const Rational& weight, const Rational& bound) const {
    std::vector<VertexId> out;
    for (VertexId b : touched_)
      if (reach_[b] <= bound && st.min_boundary_weight_into(b) < weight) out.push_back(b);
    return out;
  }

 private:
  std::vector<Rational> reach_;
  std::vector<std::uint64_t> stamp_;
  std::vector<VertexId> touched_;
  std::uint64_t epoch_ = 0;
};

constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

std::string describe_edge(EdgeId e) { return "edge " + std::to_string(e); }

// Shared walking and bookkeeping for both exploration algorithms.
class Walker {
 public:
  Walker(const Graph& g, ExplorationState& st, TraversalLog& log)
      : graph_(g), st_(st), log_(log), search_(g.vertex_count()) {}

  // Walks a shortest explored path; returns its cost.
  Rational walk(VertexId from, VertexId to, StepRole role, EdgeId charged_to) {
    if (from == to) return Rational(0);
    ExploredSearch::Source src{from, Rational(0)};
    search_.run(st_, std::span(&src, 1), nullptr, to);
    if (!search_.settled(to))
      throw InvariantViolation("explored connectivity", "no explored path from " + std::to_string(from) + " to " +
                                                            std::to_string(to));
    std::vector<EdgeId> path;
    for (VertexId v = to; v != from;) {
      EdgeId e = search_.parent(v);
      path.push_back(e);
      v = graph_.other_endpoint(e, v);
    }
    std::reverse(path.begin(), path.end());
    Rational cost;
    VertexId at = from;
    for (EdgeId e : path) {
      VertexId next = graph_.other_endpoint(e, at);
      cost += traverse(e, at, next, role, charged_to);
      at = next;
    }
    return cost;
  }

  Rational traverse(EdgeId e, VertexId from, VertexId to, StepRole role, EdgeId charged_to) {
    const Rational& w = st_.view().weight(e);
    log_.steps.push_back({e, from, to, role, charged_to});
    st_.add_cost(w);
    return w;
  }

  ExploredSearch& search() { return search_; }

 private:
  const Graph& graph_;
  ExplorationState& st_;
  TraversalLog& log_;
  ExploredSearch search_;
};

struct Candidate {
  EdgeId edge;
  VertexId inside;
  VertexId outside;
  Activation activation;
  Rational bound;  // (1 + delta) w(e)
};

class TieBreaker {
 public:
  TieBreaker(const TieBreak& policy, std::size_t edge_count) : policy_(policy), rng_(policy.seed) {
    if (policy_.kind == TieBreakKind::Adversarial) {
      rank_.assign(edge_count, policy_.script.size());
      for (std::size_t i = policy_.script.size(); i-- > 0;) {
        EdgeId e = policy_.script[i];
        if (e >= edge_count) throw ArgumentError("tie-break script names unknown " + describe_edge(e));
        rank_[e] = i;
      }
    }
  }

  // `options` is sorted by edge id and non-empty.
  const Candidate& pick(const std::vector<const Candidate*>& options) {
    switch (policy_.kind) {
      case TieBreakKind::ByEdgeId:
        return *options.front();
      case TieBreakKind::Adversarial:
        return **std::min_element(options.begin(), options.end(), [&](const Candidate* a, const Candidate* b) {
          return std::pair(rank_[a->edge], a->edge) < std::pair(rank_[b->edge], b->edge);
        });
      case TieBreakKind::Random:
        return *options[rng_() % options.size()];
    }
    return *options.front();
  }

 private:
  const TieBreak& policy_;
  std::mt19937_64 rng_;
  std::vector<std::size_t> rank_;
};

void check(bool ok, const char* property, const std::string& witness) {
  if (!ok) throw InvariantViolation(property, witness);
}

}  // namespace

Rational internally_explored_distance(const ExplorationState& st, VertexId x, VertexId y) {
  for (VertexId v : {x, y}) {
    if (v >= st.vertex_count()) throw ArgumentError("invalid vertex id " + std::to_string(v));
    if (!st.is_learned(v)) throw ArgumentError("vertex " + std::to_string(v) + " is neither explored nor learned");
  }
  if (x == y) return Rational(0);
  const OnlineView& view = st.view();
  std::vector<ExploredSearch::Source> sources;
  if (st.is_explored(x)) {
    sources.push_back({x, Rational(0)});
  } else {
    for (EdgeId e : st.boundary_into(x)) sources.push_back({st.orient(e).inside, view.weight(e)});
  }
  ExploredSearch search(st.vertex_count());
  search.run(st, sources, nullptr, st.is_explored(y) ? std::optional<VertexId>(y) : std::nullopt);
  if (st.is_explored(y)) return search.settled(y) ? search.dist(y) : Rational::infinity();
  Rational best = Rational::infinity();
  for (EdgeId e : st.boundary_into(y)) {
    VertexId a = st.orient(e).inside;
    if (search.settled(a)) best = std::min(best, search.dist(a) + view.weight(e));
  }
  return best;
}

BlockingVerdict is_blocked(ExplorationState& st, EdgeId e, const Rational& delta) {
  OrientedEdge o = st.orient(e);
  const Rational& w = st.view().weight(e);
  Rational bound = (Rational(1) + delta) * w;
  ExploredSearch search(st.vertex_count());
  ExploredSearch::Source src{o.inside, Rational(0)};
  search.run(st, std::span(&src, 1), &bound, std::nullopt);
  FrontierReach reach(st.vertex_count());
  reach.collect(st, search, bound);
  BlockingVerdict verdict;
  verdict.blockers = reach.blockers(st, w, bound);
  verdict.blocked = !verdict.blockers.empty();
  if (verdict.blocked) st.record_blockers(e, verdict.blockers);
  return verdict;
}

TraversalLog run_blocking(const Graph& g, const ExplorationParams& params) {
  if (params.delta.is_infinite() || params.delta.sign() <= 0) throw ArgumentError("delta must be positive");
  g.require_vertex(params.start);
  require_connected(g);

  TraversalLog log;
  log.algorithm = "blocking";
  log.params = params;
  ExplorationState st(g, params.start);
  const OnlineView& view = st.view();
  Walker walker(g, st, log);
  ExploredSearch& search = walker.search();
  FrontierReach reach(g.vertex_count());
  TieBreaker tie(params.tie_break, g.edge_count());
  const Rational one_plus_delta = Rational(1) + params.delta;
  const Rational charge_factor = Rational(2) * (params.delta + Rational(2));

  // Current boundary weights, to bound the radius of the search below.
  std::multiset<Rational> boundary_weights;
  for (EdgeId e : st.boundary_edges()) boundary_weights.insert(view.weight(e));

  // "e is blocked by v'" stays true from the moment it first holds until v'
  // is explored: distances only shrink and lighter edges into v' only
  // appear. So the edges v ever blocked are exactly those it blocks just
  // before its exploration, found by one search backwards from v.
  auto record_blocked_by = [&](VertexId v) {
    const Rational& lightest = st.min_boundary_weight_into(v);
    if (boundary_weights.empty() || *boundary_weights.rbegin() <= lightest) return;
    Rational radius = one_plus_delta * *boundary_weights.rbegin();
    std::vector<ExploredSearch::Source> sources;
    for (EdgeId e : st.boundary_into(v)) sources.push_back({st.orient(e).inside, view.weight(e)});
    search.run(st, sources, &radius, std::nullopt);
    const VertexId self[1] = {v};
    for (VertexId y : search.settled()) {
      for (const Incidence& inc : view.incident(y)) {
        if (st.is_explored(inc.neighbor) || inc.neighbor == v) continue;
        const Rational& w = view.weight(inc.edge);
        if (lightest < w && search.dist(y) <= one_plus_delta * w) st.record_blockers(inc.edge, self);
      }
    }
  };

  auto explore_vertex = [&](VertexId v) {
    record_blocked_by(v);
    for (EdgeId e : st.boundary_into(v)) boundary_weights.erase(boundary_weights.find(view.weight(e)));
    st.explore(v);
    for (const Incidence& inc : view.incident(v))
      if (!st.is_explored(inc.neighbor)) boundary_weights.insert(view.weight(inc.edge));
  };

  // A blocker stays a blocker until explored, so one unexplored witness
  // settles the question without a search.
  std::vector<VertexId> witness(g.edge_count(), kNoVertex);
  auto blocked_now = [&](const Candidate& c) {
    if (witness[c.edge] != kNoVertex && !st.is_explored(witness[c.edge])) return true;
    ++log.blocking_evaluations;
    ExploredSearch::Source src{c.inside, Rational(0)};
    search.run(st, std::span(&src, 1), &c.bound, std::nullopt);
    reach.collect(st, search, c.bound);
    auto blockers = reach.blockers(st, view.weight(c.edge), c.bound);
    if (blockers.empty()) return false;
    st.record_blockers(c.edge, blockers);
    witness[c.edge] = blockers.front();
    return true;
  };

  // Picks an unblocked edge at a while-check of the frame for `v`: one
  // leaving v if any, else one that v had blocked.
  auto select = [&](VertexId v) -> std::optional<Candidate> {
    std::vector<Candidate> open;
    for (const Incidence& inc : view.incident(v)) {
      if (st.is_explored(inc.neighbor)) continue;
      Candidate c{inc.edge, v, inc.neighbor, Activation::Incident, one_plus_delta * view.weight(inc.edge)};
      if (!blocked_now(c)) open.push_back(std::move(c));
    }
    if (open.empty()) {
      st.drop_stale_waiting(v);
      for (EdgeId e : st.waiting_on(v)) {
        OrientedEdge o = st.orient(e);
        Candidate c{e, o.inside, o.outside, Activation::Reactivated, one_plus_delta * view.weight(e)};
        if (!blocked_now(c)) open.push_back(std::move(c));
      }
    }
    if (open.empty()) return std::nullopt;
    std::sort(open.begin(), open.end(), [](const Candidate& a, const Candidate& b) { return a.edge < b.edge; });
    std::vector<const Candidate*> options;
    for (const Candidate& c : open) options.push_back(&c);
    return tie.pick(options);
  };

  struct Frame {
    VertexId vertex;
    std::size_t charge = static_cast<std::size_t>(-1);
  };
  std::vector<Frame> stack{{params.start}};

  while (!stack.empty()) {
    const VertexId v = stack.back().vertex;
    if (auto choice = select(v)) {
      const Candidate c = *choice;
      EdgeCharge charge{c.edge, v, c.activation, {}, {}, {}};
      charge.approach = walker.walk(v, c.inside, StepRole::Approach, c.edge);
      charge.take = walker.traverse(c.edge, c.inside, c.outside, StepRole::TakeBoundary, c.edge);
      if (params.verify_invariants)
        check(charge.approach <= c.bound, "Observation 1 (approach <= (1+delta) w(e))",
              describe_edge(c.edge) + ": approach " + charge.approach.str() + " > " + c.bound.str());
      explore_vertex(c.outside);
      st.set_position(c.outside);
      log.charges.push_back(std::move(charge));
      stack.push_back({c.outside, log.charges.size() - 1});
    } else {
      Frame done = stack.back();
      stack.pop_back();
      if (stack.empty()) break;
      EdgeCharge& charge = log.charges[done.charge];
      charge.ret = walker.walk(done.vertex, stack.back().vertex, StepRole::Return, charge.edge);
      st.set_position(stack.back().vertex);
      if (params.verify_invariants) {
        check(charge.ret <= charge.approach + charge.take, "Observation 1 (return <= approach + take)",
              describe_edge(charge.edge) + ": return " + charge.ret.str());
        Rational cap = charge_factor * charge.take;
        check(charge.total() <= cap, "Observation 1 (charge <= 2(delta+2) w(e))",
              describe_edge(charge.edge) + ": charged " + charge.total().str() + " > " + cap.str());
      }
    }
  }

  log.total_cost = st.cost_so_far();
  std::vector<EdgeId> taken;
  taken.reserve(log.charges.size());
  for (const EdgeCharge& c : log.charges) taken.push_back(c.edge);
  log.taken_boundary = EdgeSubset(g, std::move(taken));
  log.audit = view.audit();
  log.final_position = st.position();
  log.explored_count = st.explored_count();

  if (params.verify_invariants) {
    check(log.explored_count == g.vertex_count(), "completeness",
          std::to_string(g.vertex_count() - log.explored_count) + " vertices left unexplored");
    check(log.final_position == params.start, "return to start",
          "agent ended at vertex " + std::to_string(log.final_position));
    check(log.audit.violations == 0, "online access",
          log.audit.samples.empty() ? std::string("unknown read") : log.audit.samples.front());
  }
  return log;
}

TraversalLog run_nearest_neighbor(const Graph& g, VertexId start) {
  g.require_vertex(start);
  require_connected(g);
  TraversalLog log;
  log.algorithm = "nearest_neighbor";
  log.params.start = start;
  log.params.verify_invariants = false;
  ExplorationState st(g, start);
  const OnlineView& view = st.view();
  Walker walker(g, st, log);
  ExploredSearch& search = walker.search();

  while (st.boundary_size() > 0) {
    VertexId at = st.position();
    ExploredSearch::Source src{at, Rational(0)};
    search.run(st, std::span(&src, 1), nullptr, std::nullopt);
    // Nearest unexplored vertex, ties by id; then the best entry edge to it.
    std::optional<std::pair<Rational, VertexId>> best;
    EdgeId entry = kNoEdge;
    VertexId entry_from = 0;
    for (VertexId a : search.settled()) {
      for (const Incidence& inc : view.incident(a)) {
        if (st.is_explored(inc.neighbor)) continue;
        std::pair cand{search.dist(a) + view.weight(inc.edge), inc.neighbor};
        if (!best || cand < *best || (cand == *best && inc.edge < entry)) {
          best = cand;
          entry = inc.edge;
          entry_from = a;
        }
      }
    }
    if (!best) break;
    EdgeCharge charge{entry, at, Activation::Incident, {}, {}, {}};
    charge.approach = walker.walk(at, entry_from, StepRole::Approach, entry);
    charge.take = walker.traverse(entry, entry_from, best->second, StepRole::TakeBoundary, entry);
    st.explore(best->second);
    st.set_position(best->second);
    log.charges.push_back(std::move(charge));
  }
  if (!log.charges.empty()) {
    EdgeCharge& last = log.charges.back();
    last.ret = walker.walk(st.position(), start, StepRole::Return, last.edge);
    st.set_position(start);
  }

  log.total_cost = st.cost_so_far();
  std::vector<EdgeId> taken;
  for (const EdgeCharge& c : log.charges) taken.push_back(c.edge);
  log.taken_boundary = EdgeSubset(g, std::move(taken));
  log.audit = view.audit();
  log.final_position = st.position();
  log.explored_count = st.explored_count();
  return log;
}

// ---------------------------------------------------------------------------

CyclePropertyReport verify_blocking_cycle_property(const Graph& g, const TraversalLog& log, const Rational& delta) {
  CyclePropertyReport report;
  report.mst_b = mst_maximizing_overlap(g, log.taken_boundary);
  report.combined = log.taken_boundary.unite(report.mst_b);
  report.detours = check_long_detours(g, report.combined, Rational(1) + delta);
  return report;
}

CostChainReport verify_cost_chain(const Graph& g, const TraversalLog& log, const Rational& delta,
                                  std::optional<Rational> optspan_bound) {
  CostChainReport r;
  const Rational factor = Rational(2) * (delta + Rational(2));
  r.total_cost = log.total_cost;
  for (const TraversalStep& s : log.steps) r.steps_sum += g.weight(s.edge);
  r.weight_b = log.taken_boundary.weight(g);
  r.observation_bound = factor * r.weight_b;
  r.observation_ok = r.total_cost <= r.observation_bound;

  const Rational one_plus_delta = Rational(1) + delta;
  for (const EdgeCharge& c : log.charges) {
    const Rational& w = g.weight(c.edge);
    auto flag = [&](const char* part, const Rational& value, const Rational& bound, bool ok) {
      if (!ok) r.charge_violations.push_back({c.edge, part, value, bound});
    };
    Rational approach_cap = one_plus_delta * w;
    flag("approach", c.approach, approach_cap, c.approach <= approach_cap);
    flag("take", c.take, w, c.take == w);
    Rational return_cap = c.approach + c.take;
    flag("return", c.ret, return_cap, c.ret <= return_cap);
    Rational total_cap = factor * w;
    flag("total", c.total(), total_cap, c.total() <= total_cap);
  }
  // Every step must be charged to a taken boundary edge.
  for (const TraversalStep& s : log.steps)
    if (!log.taken_boundary.contains(s.charged_to))
      r.charge_violations.push_back({s.charged_to, "charged_to", Rational(0), Rational(0)});

  r.weight_mst_b = mst_maximizing_overlap(g, log.taken_boundary).weight(g);
  if (optspan_bound) {
    r.optspan_bound = optspan_bound;
    r.chain_bound = factor * *optspan_bound * r.weight_mst_b;
    r.chain_ok = r.total_cost <= *r.chain_bound;
  }
  return r;
}

const char* to_string(StepRole role) {
  switch (role) {
    case StepRole::Approach: return "approach";
    case StepRole::TakeBoundary: return "take";
    case StepRole::Return: return "return";
  }
  return "?";
}

const char* to_string(Activation activation) {
  return activation == Activation::Incident ? "incident" : "reactivated";
}

const char* to_string(TieBreakKind kind) {
  switch (kind) {
    case TieBreakKind::ByEdgeId: return "by_edge_id";
    case TieBreakKind::Adversarial: return "adversarial";
    case TieBreakKind::Random: return "random";
  }
  return "?";
}

}  // namespace spanex
