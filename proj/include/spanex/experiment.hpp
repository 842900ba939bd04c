#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "spanex/exploration.hpp"
#include "spanex/instances.hpp"
#include "spanex/rational.hpp"
#include "spanex/spanner.hpp"

namespace spanex {

/// A constant rational, or "log2n" (log2 of the vertex count, within 1/n^2).
class DeltaExpr {
 public:
  DeltaExpr() = default;
  explicit DeltaExpr(Rational value) : value_(std::move(value)) {}
  static DeltaExpr log2n() {
    DeltaExpr d;
    d.value_.reset();
    return d;
  }
  static DeltaExpr parse(const std::string& text);

  bool is_log2n() const { return !value_.has_value(); }
  Rational evaluate(std::size_t n) const;
  std::string str() const;

 private:
  std::optional<Rational> value_ = Rational(1);
};

enum class AlgorithmKind { Blocking, NearestNeighbor };

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::Blocking;
  DeltaExpr delta;
  std::string name() const;
};

enum class OutputFormat { Csv, Json };

// Check names. Invariant checks are enforced by default; bound checks compare
// against the published competitive / lightness bounds and are enforced with
// --strict or when listed explicitly.
namespace checks {
inline constexpr const char* kRunInvariants = "run_invariants";
inline constexpr const char* kObservation = "charge_bound";
inline constexpr const char* kCycleProperty = "cycle_property";
inline constexpr const char* kOnlinePurity = "online_purity";
inline constexpr const char* kTourSandwich = "tour_sandwich";
inline constexpr const char* kCompetitiveBound = "competitive_bound";
inline constexpr const char* kStretch = "stretch";
inline constexpr const char* kMinimality = "minimality";
inline constexpr const char* kMstContainment = "mst_containment";
inline constexpr const char* kOptSpan = "optspan_order";
inline constexpr const char* kLightnessBound = "lightness_bound";
}  // namespace checks

const std::vector<std::string>& all_check_names();
const std::vector<std::string>& default_check_names();

struct ExperimentConfig {
  std::vector<InstanceSpec> instances;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<Rational> epsilons;
  std::set<std::string> enforced;  ///< empty means default_check_names()
  std::string output_path;          ///< empty means stdout
  OutputFormat format = OutputFormat::Csv;
  unsigned parallelism = 1;
  bool include_logs = false;  ///< attach full traversal logs / spanner edge lists to JSON output
};

/// Parses the JSON config; throws ArgumentError with a field path on error.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);

struct CheckOutcome {
  std::string name;
  enum class Verdict { Pass, Fail, Skip } verdict = Verdict::Skip;
  std::string detail;
};

const char* to_string(CheckOutcome::Verdict v);

/// One result row. `columns` keeps a fixed key order; exact rationals are
/// "p/q" strings, convenience floats are numbers.
struct ResultRow {
  std::size_t instance_index = 0;
  std::string task;     ///< algorithm name or "greedy_spanner"
  Rational parameter;   ///< delta or epsilon, for ordering
  nlohmann::ordered_json columns;
  std::vector<CheckOutcome> checks;
  nlohmann::json attachment;  ///< traversal log or spanner result (JSON only)
};

struct Report {
  std::string command;
  std::vector<ResultRow> rows;
  std::set<std::string> enforced;
  std::vector<std::string> warnings;

  /// Failed enforced checks as "row label: check (detail)".
  std::vector<std::string> enforced_failures() const;
};

Report run_explore(const ExperimentConfig& config);
Report run_spanner(const ExperimentConfig& config);

/// Competitive bound 2(delta+2)(1+2/delta)(1+2g/(1+delta)) for genus g.
Rational genus_competitive_bound(const Rational& delta, int genus);
/// Lightness bound (1+2/eps)(1+2g/(1+eps)) for genus g.
Rational genus_lightness_bound(const Rational& epsilon, int genus);

nlohmann::json traversal_log_to_json(const Graph& g, const TraversalLog& log, const nlohmann::json& verification);
nlohmann::json spanner_result_to_json(const SpannerResult& result, const nlohmann::json& checks);

// ---------------------------------------------------------------------------
// Verification campaign

struct CampaignOptions {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<Rational> deltas{Rational(1, 2), Rational(2), Rational(5)};
  std::vector<Rational> epsilons{Rational(1, 2), Rational(1), Rational(2)};
  std::size_t tsp_graphs = 50;
  unsigned parallelism = 1;
};

/// Small seeded instances of every generator family (comb, planar, grid,
/// torus, tree, Erdos-Renyi) used by the campaign.
std::vector<InstanceSpec> campaign_instances(const std::vector<std::uint64_t>& seeds);

/// Runs the property campaign: every exploration invariant and spanner
/// verification, the brute-force cycle enumeration twin of the detour check,
/// exact TSP against permutation enumeration, and fault injection. One row
/// per property with case and violation counts.
Report run_verify(const CampaignOptions& options);

// ---------------------------------------------------------------------------
// Output

std::string render_csv(const Report& report);
nlohmann::json render_json(const Report& report);
void write_report(const Report& report, OutputFormat format, const std::string& path);

}  // namespace spanex
