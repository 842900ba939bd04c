#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spanex/graph.hpp"
#include "spanex/rational.hpp"

namespace spanex {

// ---------------------------------------------------------------------------
// Online access control

/// Counts graph reads made by an exploration engine and flags the ones that
/// an online agent could not make (adjacency or weight of an edge with no
/// explored endpoint).
struct AccessAudit {
  std::uint64_t reads = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> samples;  ///< first few offending reads

  void record_violation(std::string what);
};

/// The graph as seen by the agent. Every adjacency or weight read goes
/// through here and is checked against the current explored set.
class OnlineView {
 public:
  OnlineView(const Graph& g, const std::vector<char>& explored) : graph_(g), explored_(explored) {}

  std::span<const Incidence> incident(VertexId v) const;
  const Edge& edge(EdgeId e) const;
  const Rational& weight(EdgeId e) const { return edge(e).weight; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }

  const AccessAudit& audit() const noexcept { return audit_; }

 private:
  const Graph& graph_;
  const std::vector<char>& explored_;
  mutable AccessAudit audit_;
};

// ---------------------------------------------------------------------------
// State

/// A boundary edge with its explored endpoint first.
struct OrientedEdge {
  EdgeId edge;
  VertexId inside;
  VertexId outside;
};

class ExplorationState {
 public:
  ExplorationState(const Graph& g, VertexId start);
  ExplorationState(const ExplorationState&) = delete;
  ExplorationState& operator=(const ExplorationState&) = delete;

  const OnlineView& view() const noexcept { return view_; }
  VertexId start() const noexcept { return start_; }
  VertexId position() const noexcept { return position_; }
  void set_position(VertexId v);

  bool is_explored(VertexId v) const { return explored_.at(v) != 0; }
  bool is_learned(VertexId v) const { return learned_.at(v) != 0; }
  std::size_t explored_count() const noexcept { return explored_count_; }
  std::size_t vertex_count() const noexcept { return explored_.size(); }

  /// Marks a learned vertex explored and learns its incident edges.
  void explore(VertexId v);

  bool is_boundary(EdgeId e) const;
  /// Throws StateError if `e` is not a boundary edge.
  OrientedEdge orient(EdgeId e) const;
  std::vector<EdgeId> boundary_edges() const;
  std::size_t boundary_size() const noexcept { return boundary_count_; }
  /// Boundary edges whose unexplored endpoint is `v`.
  std::vector<EdgeId> boundary_into(VertexId v) const;
  /// Minimum weight over boundary edges into unexplored `v` (infinity if none).
  const Rational& min_boundary_weight_into(VertexId v) const { return min_in_weight_.at(v); }

  /// Vertices recorded as having blocked `e` (sorted).
  std::span<const VertexId> blockers_of(EdgeId e) const { return records_.at(e); }
  /// Edges whose blocker records contain `v`. May contain edges that are no
  /// longer boundary edges.
  std::span<const EdgeId> waiting_on(VertexId v) const { return waiting_.at(v); }
  void record_blockers(EdgeId e, std::span<const VertexId> blockers);
  void drop_stale_waiting(VertexId v);

  const Rational& cost_so_far() const noexcept { return cost_; }
  void add_cost(const Rational& c) { cost_ += c; }

 private:
  std::vector<char> explored_;
  std::vector<char> learned_;
  OnlineView view_;
  VertexId start_;
  VertexId position_;
  std::size_t explored_count_ = 0;
  std::vector<char> boundary_;
  std::size_t boundary_count_ = 0;
  std::vector<std::vector<EdgeId>> into_;
  std::vector<Rational> min_in_weight_;
  std::vector<std::vector<VertexId>> records_;
  std::vector<std::vector<EdgeId>> waiting_;
  Rational cost_;
  std::size_t edge_count_;
};

/// Length of a shortest path from x to y whose internal vertices are all
/// explored; x and y must be explored or learned. Infinity if none exists.
/// Edges with no explored endpoint are unknown to the agent and never used.
Rational internally_explored_distance(const ExplorationState& state, VertexId x, VertexId y);

struct BlockingVerdict {
  bool blocked = false;
  std::vector<VertexId> blockers;  ///< sorted unexplored endpoints v'
};

/// Whether boundary edge e = (u, v) is delta-blocked: some boundary edge
/// e' = (u', v') has w(e') < w(e) and d(u, v') <= (1 + delta) w(e). When
/// blocked, all such v' are added to the state's blocker records.
BlockingVerdict is_blocked(ExplorationState& state, EdgeId e, const Rational& delta);

// ---------------------------------------------------------------------------
// Runs

enum class TieBreakKind { ByEdgeId, Adversarial, Random };

/// How to choose among several admissible boundary edges.
struct TieBreak {
  TieBreakKind kind = TieBreakKind::ByEdgeId;
  std::vector<EdgeId> script;  ///< Adversarial: earlier entries win; unlisted edges follow by id
  std::uint64_t seed = 0;      ///< Random

  static TieBreak by_edge_id() { return {}; }
  static TieBreak adversarial(std::vector<EdgeId> script) {
    return {TieBreakKind::Adversarial, std::move(script), 0};
  }
  static TieBreak random(std::uint64_t seed) { return {TieBreakKind::Random, {}, seed}; }
};

struct ExplorationParams {
  Rational delta{1};
  VertexId start = 0;
  TieBreak tie_break;
  bool verify_invariants = true;
};

enum class StepRole { Approach, TakeBoundary, Return };

/// Why a taken boundary edge was admissible: it left the current frame's
/// vertex, or it was re-activated because that vertex had blocked it.
enum class Activation { Incident, Reactivated };

struct TraversalStep {
  EdgeId edge;
  VertexId from;
  VertexId to;
  StepRole role;
  EdgeId charged_to;
};

/// Cost charged to one taken boundary edge, split by walk.
struct EdgeCharge {
  EdgeId edge;
  VertexId frame;  ///< vertex whose loop took the edge
  Activation activation;
  Rational approach;
  Rational take;
  Rational ret;
  Rational total() const { return approach + take + ret; }
};

struct TraversalLog {
  std::string algorithm;
  ExplorationParams params;
  std::vector<TraversalStep> steps;
  Rational total_cost;
  EdgeSubset taken_boundary;
  std::vector<EdgeCharge> charges;  ///< in take order
  AccessAudit audit;
  std::uint64_t blocking_evaluations = 0;
  VertexId final_position = 0;
  std::size_t explored_count = 0;
};

/// Simulates Blocking_delta from params.start until no admissible boundary
/// edge remains. With verify_invariants, the per-edge charge bounds,
/// completeness and the online-access audit are checked and an
/// InvariantViolation is thrown on the first failure.
TraversalLog run_blocking(const Graph& g, const ExplorationParams& params);

/// Nearest-neighbor baseline: always walk to the closest unexplored vertex
/// (ties by vertex id), then return to the start.
TraversalLog run_nearest_neighbor(const Graph& g, VertexId start);

// ---------------------------------------------------------------------------
// Post-run verification

struct CyclePropertyReport {
  EdgeSubset mst_b;      ///< MST maximizing overlap with B
  EdgeSubset combined;   ///< B union MST_B
  DetourReport detours;  ///< factor 1 + delta
  bool passed() const { return detours.passed(); }
};

/// Every edge e = (u, v) of B u MST_B must satisfy
/// d_{(B u MST_B) - e}(u, v) > (1 + delta) w(e).
CyclePropertyReport verify_blocking_cycle_property(const Graph& g, const TraversalLog& log, const Rational& delta);

struct ChargeViolation {
  EdgeId edge;
  std::string part;  ///< "approach", "take", "return" or "total"
  Rational value;
  Rational bound;
};

struct CostChainReport {
  Rational total_cost;
  Rational steps_sum;
  Rational weight_b;
  Rational weight_mst_b;
  Rational observation_bound;  ///< 2 (delta + 2) w(B)
  bool observation_ok = false;
  std::vector<ChargeViolation> charge_violations;
  std::optional<Rational> optspan_bound;
  std::optional<Rational> chain_bound;  ///< 2 (delta + 2) optspan w(MST_B)
  bool chain_ok = true;

  bool passed() const {
    return observation_ok && charge_violations.empty() && chain_ok && total_cost == steps_sum;
  }
};

CostChainReport verify_cost_chain(const Graph& g, const TraversalLog& log, const Rational& delta,
                                  std::optional<Rational> optspan_bound = std::nullopt);

const char* to_string(StepRole role);
const char* to_string(Activation activation);
const char* to_string(TieBreakKind kind);

}  // namespace spanex
