#include "spanex/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "spanex/errors.hpp"
#include "spanex/oracle.hpp"

namespace spanex {

// ---------------------------------------------------------------------------
// Delta expressions and algorithms

DeltaExpr DeltaExpr::parse(const std::string& text) {
  if (text == "log2n") return log2n();
  Rational r;
  try {
    r = Rational::parse(text);
  } catch (const std::exception& ex) {
    throw ArgumentError("delta '" + text + "': " + ex.what());
  }
  if (r.is_infinite() || r.sign() <= 0) throw ArgumentError("delta must be positive, got '" + text + "'");
  return DeltaExpr(r);
}

Rational DeltaExpr::evaluate(std::size_t n) const {
  if (value_) return *value_;
  if (n < 2) throw ArgumentError("delta = log2n needs at least 2 vertices");
  return log2_within_inverse_square(n);
}

std::string DeltaExpr::str() const { return value_ ? value_->str() : "log2n"; }

std::string AlgorithmSpec::name() const {
  return kind == AlgorithmKind::Blocking ? "blocking" : "nearest_neighbor";
}

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names{
      checks::kRunInvariants, checks::kObservation,     checks::kCycleProperty, checks::kOnlinePurity,
      checks::kTourSandwich,  checks::kCompetitiveBound, checks::kStretch,       checks::kMinimality,
      checks::kMstContainment, checks::kOptSpan,         checks::kLightnessBound};
  return names;
}

const std::vector<std::string>& default_check_names() {
  static const std::vector<std::string> names{
      checks::kRunInvariants, checks::kObservation, checks::kCycleProperty, checks::kOnlinePurity,
      checks::kTourSandwich,  checks::kStretch,     checks::kMinimality,    checks::kMstContainment,
      checks::kOptSpan};
  return names;
}

const char* to_string(CheckOutcome::Verdict v) {
  switch (v) {
    case CheckOutcome::Verdict::Pass: return "pass";
    case CheckOutcome::Verdict::Fail: return "fail";
    case CheckOutcome::Verdict::Skip: return "skip";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Config

namespace {

Rational parse_rational_field(const nlohmann::json& v, const std::string& where) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number_float()) return Rational::parse(v.dump());
  } catch (const std::exception& ex) {
    throw ArgumentError(where + ": " + ex.what());
  }
  throw ArgumentError(where + ": expected a rational such as \"1/2\"");
}

AlgorithmSpec parse_algorithm(const nlohmann::json& j, const std::string& where) {
  AlgorithmSpec spec;
  std::string name;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object() && j.contains("name") && j["name"].is_string()) {
    name = j["name"].get<std::string>();
  } else {
    throw ArgumentError(where + ": expected an algorithm name or {\"name\": ..., \"delta\": ...}");
  }
  if (name == "blocking") {
    spec.kind = AlgorithmKind::Blocking;
    if (j.is_object() && j.contains("delta")) {
      const auto& d = j["delta"];
      spec.delta = d.is_string() ? DeltaExpr::parse(d.get<std::string>())
                                 : DeltaExpr(parse_rational_field(d, where + ".delta"));
      if (!spec.delta.is_log2n() && spec.delta.evaluate(2).sign() <= 0)
        throw ArgumentError(where + ".delta must be positive");
    }
  } else if (name == "nearest_neighbor") {
    spec.kind = AlgorithmKind::NearestNeighbor;
  } else {
    throw ArgumentError(where + ": unknown algorithm '" + name + "'");
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "instances") {
      if (!value.is_array()) throw ArgumentError("instances must be an array");
      for (std::size_t i = 0; i < value.size(); ++i) {
        try {
          cfg.instances.push_back(parse_instance_spec(value[i]));
        } catch (const ArgumentError& ex) {
          throw ArgumentError("instances[" + std::to_string(i) + "]: " + ex.what());
        }
      }
    } else if (key == "algorithms") {
      if (!value.is_array()) throw ArgumentError("algorithms must be an array");
      for (std::size_t i = 0; i < value.size(); ++i)
        cfg.algorithms.push_back(parse_algorithm(value[i], "algorithms[" + std::to_string(i) + "]"));
    } else if (key == "epsilons") {
      if (!value.is_array()) throw ArgumentError("epsilons must be an array");
      for (std::size_t i = 0; i < value.size(); ++i) {
        Rational e = parse_rational_field(value[i], "epsilons[" + std::to_string(i) + "]");
        if (e.sign() <= 0) throw ArgumentError("epsilons[" + std::to_string(i) + "] must be positive");
        cfg.epsilons.push_back(e);
      }
    } else if (key == "checks") {
      if (value.is_string() && value == "all") {
        cfg.enforced.insert(all_check_names().begin(), all_check_names().end());
        continue;
      }
      if (!value.is_array()) throw ArgumentError("checks must be \"all\" or an array of check names");
      for (const auto& c : value) {
        if (!c.is_string()) throw ArgumentError("checks entries must be strings");
        const auto name = c.get<std::string>();
        const auto& all = all_check_names();
        if (std::find(all.begin(), all.end(), name) == all.end())
          throw ArgumentError("unknown check '" + name + "'");
        cfg.enforced.insert(name);
      }
    } else if (key == "output") {
      if (!value.is_object()) throw ArgumentError("output must be an object {path, format}");
      if (value.contains("path")) cfg.output_path = value["path"].get<std::string>();
      if (value.contains("format")) {
        const auto f = value["format"].get<std::string>();
        if (f == "csv")
          cfg.format = OutputFormat::Csv;
        else if (f == "json")
          cfg.format = OutputFormat::Json;
        else
          throw ArgumentError("output.format must be csv or json");
      }
    } else if (key == "parallelism") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 1)
        throw ArgumentError("parallelism must be a positive integer");
      cfg.parallelism = value.get<unsigned>();
    } else if (key == "include_logs") {
      if (!value.is_boolean()) throw ArgumentError("include_logs must be a boolean");
      cfg.include_logs = value.get<bool>();
    } else {
      throw ArgumentError("unknown config field '" + key + "'");
    }
  }
  if (cfg.instances.empty()) throw ArgumentError("config needs at least one instance");
  return cfg;
}

// ---------------------------------------------------------------------------
// Bounds

Rational genus_lightness_bound(const Rational& epsilon, int genus) {
  if (genus < 0) throw ArgumentError("genus must be non-negative");
  const Rational one(1), two(2);
  return (one + two / epsilon) * (one + two * Rational(genus) / (one + epsilon));
}

Rational genus_competitive_bound(const Rational& delta, int genus) {
  return Rational(2) * (delta + Rational(2)) * genus_lightness_bound(delta, genus);
}

// ---------------------------------------------------------------------------
// Runner helpers

namespace {

// Runs fn(i) for i in [0, count) on `jobs` threads. Each index is handled
// exactly once; the first exception is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
          return;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

std::vector<Instance> build_instances(const std::vector<InstanceSpec>& specs, unsigned jobs) {
  std::vector<std::optional<Instance>> built(specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t i) {
    try {
      built[i] = build_instance(specs[i]);
    } catch (const ArgumentError& ex) {
      throw ArgumentError("instance " + std::to_string(i) + ": " + ex.what());
    }
  });
  std::vector<Instance> out;
  out.reserve(built.size());
  for (auto& b : built) out.push_back(std::move(*b));
  return out;
}

CheckOutcome outcome(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok ? CheckOutcome::Verdict::Pass : CheckOutcome::Verdict::Fail, std::move(detail)};
}

CheckOutcome skipped(std::string name, std::string why) {
  return {std::move(name), CheckOutcome::Verdict::Skip, std::move(why)};
}

nlohmann::json rational_or_null(const std::optional<Rational>& r) {
  return r ? nlohmann::json(r->str()) : nlohmann::json(nullptr);
}

nlohmann::json float_or_null(const std::optional<Rational>& r) {
  if (!r || r->is_infinite()) return nullptr;
  return r->to_double();
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.instance_index != b.instance_index) return a.instance_index < b.instance_index;
    if (a.task != b.task) return a.task < b.task;
    return a.parameter < b.parameter;
  });
}

std::string row_status(const ResultRow& row, const std::set<std::string>& enforced) {
  bool failed = false, enforced_failed = false;
  for (const auto& c : row.checks) {
    if (c.verdict != CheckOutcome::Verdict::Fail) continue;
    failed = true;
    if (enforced.count(c.name)) enforced_failed = true;
  }
  return enforced_failed ? "violation" : (failed ? "advisory_failure" : "ok");
}

std::set<std::string> effective_checks(const ExperimentConfig& cfg) {
  if (!cfg.enforced.empty()) return cfg.enforced;
  return {default_check_names().begin(), default_check_names().end()};
}

}  // namespace

std::vector<std::string> Report::enforced_failures() const {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    for (const auto& c : row.checks) {
      if (c.verdict != CheckOutcome::Verdict::Fail || !enforced.count(c.name)) continue;
      std::string label = row.columns.contains("label") ? row.columns["label"].get<std::string>() : row.task;
      out.push_back(label + " [" + row.task + " " + row.parameter.str() + "]: " + c.name +
                    (c.detail.empty() ? "" : " (" + c.detail + ")"));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization of single runs

nlohmann::json traversal_log_to_json(const Graph& g, const TraversalLog& log, const nlohmann::json& verification) {
  nlohmann::json params{{"algorithm", log.algorithm},
                        {"delta", log.params.delta.str()},
                        {"start", log.params.start},
                        {"tie_break", to_string(log.params.tie_break.kind)}};
  if (log.params.tie_break.kind == TieBreakKind::Random) params["seed"] = log.params.tie_break.seed;
  nlohmann::json steps = nlohmann::json::array();
  for (const TraversalStep& s : log.steps) {
    steps.push_back({{"edge", s.edge},
                     {"from", s.from},
                     {"to", s.to},
                     {"role", to_string(s.role)},
                     {"charged_to", s.charged_to},
                     {"weight", g.weight(s.edge).str()}});
  }
  nlohmann::json charges = nlohmann::json::array();
  for (const EdgeCharge& c : log.charges) {
    charges.push_back({{"edge", c.edge},
                       {"frame", c.frame},
                       {"activation", to_string(c.activation)},
                       {"approach", c.approach.str()},
                       {"take", c.take.str()},
                       {"return", c.ret.str()}});
  }
  std::vector<EdgeId> boundary(log.taken_boundary.ids().begin(), log.taken_boundary.ids().end());
  return nlohmann::json{{"params", params},
                        {"steps", steps},
                        {"total_cost", log.total_cost.str()},
                        {"boundary_edges", boundary},
                        {"charges", charges},
                        {"audit", {{"reads", log.audit.reads}, {"violations", log.audit.violations}}},
                        {"verification", verification}};
}

nlohmann::json spanner_result_to_json(const SpannerResult& result, const nlohmann::json& checks_json) {
  std::vector<EdgeId> ids(result.edges.ids().begin(), result.edges.ids().end());
  return nlohmann::json{{"epsilon", result.epsilon.str()},
                        {"edge_ids", ids},
                        {"lightness", result.lightness.str()},
                        {"stretch_certificate", result.stretch_certificate.str()},
                        {"checks", checks_json}};
}

namespace {

nlohmann::json checks_to_json(const std::vector<CheckOutcome>& cs) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& c : cs) out[c.name] = {{"verdict", to_string(c.verdict)}, {"detail", c.detail}};
  return out;
}

ResultRow explore_row(std::size_t index, const Instance& inst, const AlgorithmSpec& alg, bool include_log) {
  const Graph& g = inst.graph;
  const std::size_t n = g.vertex_count();
  ResultRow row;
  row.instance_index = index;
  row.task = alg.name();

  const Rational delta = alg.kind == AlgorithmKind::Blocking ? alg.delta.evaluate(n) : Rational(0);
  row.parameter = delta;
  const Rational w_mst = minimum_spanning_tree(g).weight(g);

  auto& c = row.columns;
  c["instance"] = index;
  c["label"] = inst.label;
  c["n"] = n;
  c["m"] = g.edge_count();
  c["algorithm"] = alg.name();
  c["delta"] = alg.kind == AlgorithmKind::Blocking ? delta.str() : "";
  c["delta_expr"] = alg.kind == AlgorithmKind::Blocking ? alg.delta.str() : "";
  c["delta_float"] = alg.kind == AlgorithmKind::Blocking ? nlohmann::json(delta.to_double()) : nlohmann::json(nullptr);

  TraversalLog log;
  try {
    if (alg.kind == AlgorithmKind::Blocking) {
      ExplorationParams params;
      params.delta = delta;
      params.start = inst.start;
      params.tie_break = inst.tie_break.value_or(TieBreak::by_edge_id());
      params.verify_invariants = false;  // checked below so that failures become rows
      log = run_blocking(g, params);
    } else {
      log = run_nearest_neighbor(g, inst.start);
    }
  } catch (const std::exception& ex) {
    row.checks.push_back(outcome(checks::kRunInvariants, false, ex.what()));
    c["status"] = "error";
    c["error"] = ex.what();
    return row;
  }

  const bool complete = log.explored_count == n && log.final_position == inst.start;
  row.checks.push_back(outcome(checks::kRunInvariants, complete,
                               complete ? "" : std::to_string(n - log.explored_count) + " unexplored, ended at " +
                                                   std::to_string(log.final_position)));
  row.checks.push_back(outcome(checks::kOnlinePurity, log.audit.violations == 0,
                               log.audit.samples.empty() ? "" : log.audit.samples.front()));

  std::optional<Rational> ratio_mst;
  if (w_mst.sign() > 0) ratio_mst = log.total_cost / w_mst;
  std::optional<Rational> bound;
  if (alg.kind == AlgorithmKind::Blocking) {
    std::optional<Rational> family_lightness;
    if (inst.genus) {
      family_lightness = genus_lightness_bound(delta, *inst.genus);
      bound = genus_competitive_bound(delta, *inst.genus);
    }
    CostChainReport chain = verify_cost_chain(g, log, delta, family_lightness);
    std::string detail;
    if (!chain.observation_ok) detail = "total " + chain.total_cost.str() + " > " + chain.observation_bound.str();
    if (!chain.charge_violations.empty())
      detail += (detail.empty() ? "" : "; ") + std::string("edge ") +
                std::to_string(chain.charge_violations.front().edge) + " " + chain.charge_violations.front().part;
    if (!chain.chain_ok) detail += (detail.empty() ? "" : "; ") + std::string("chain bound exceeded");
    row.checks.push_back(outcome(checks::kObservation, chain.passed(), detail));
    c["w_b"] = chain.weight_b.str();
    c["w_mst_b"] = chain.weight_mst_b.str();

    CyclePropertyReport cyc = verify_blocking_cycle_property(g, log, delta);
    row.checks.push_back(outcome(checks::kCycleProperty, cyc.passed(),
                                 cyc.passed() ? "" : "edge " + std::to_string(cyc.detours.violations.front())));
    if (bound && ratio_mst) {
      row.checks.push_back(outcome(checks::kCompetitiveBound, *ratio_mst <= *bound,
                                   "ratio " + ratio_mst->str() + " vs bound " + bound->str()));
    } else {
      row.checks.push_back(skipped(checks::kCompetitiveBound, "genus unknown"));
    }
  } else {
    c["w_b"] = log.taken_boundary.weight(g).str();
    c["w_mst_b"] = nullptr;
  }

  c["total_cost"] = log.total_cost.str();
  c["total_cost_float"] = log.total_cost.to_double();
  c["w_mst"] = w_mst.str();
  c["w_mst_float"] = w_mst.to_double();
  c["ratio_mst"] = rational_or_null(ratio_mst);
  c["ratio_mst_float"] = float_or_null(ratio_mst);
  c["ratio_mst_over_log2n_float"] =
      ratio_mst && n >= 2 ? nlohmann::json(ratio_mst->to_double() / std::log2(static_cast<double>(n)))
                          : nlohmann::json(nullptr);

  std::optional<Rational> opt;
  if (n <= kExactTspVertexLimit) {
    opt = exact_tsp(g).cost;
    const bool sandwich = w_mst <= *opt && *opt <= Rational(2) * w_mst && log.total_cost >= *opt;
    row.checks.push_back(outcome(checks::kTourSandwich, sandwich,
                                 "w(MST) " + w_mst.str() + ", opt " + opt->str() + ", cost " + log.total_cost.str()));
  } else {
    row.checks.push_back(skipped(checks::kTourSandwich, "n above exact TSP limit"));
  }
  std::optional<Rational> ratio_opt;
  if (opt && opt->sign() > 0) ratio_opt = log.total_cost / *opt;
  c["opt"] = rational_or_null(opt);
  c["ratio_opt"] = rational_or_null(ratio_opt);
  c["ratio_opt_float"] = float_or_null(ratio_opt);
  c["genus"] = inst.genus ? nlohmann::json(*inst.genus) : nlohmann::json(nullptr);
  c["bound"] = rational_or_null(bound);
  c["bound_float"] = float_or_null(bound);
  c["steps"] = log.steps.size();
  if (include_log) row.attachment = traversal_log_to_json(g, log, checks_to_json(row.checks));
  return row;
}

ResultRow spanner_row(std::size_t index, const Instance& inst, const Rational& eps, bool include_result) {
  const Graph& g = inst.graph;
  ResultRow row;
  row.instance_index = index;
  row.task = "greedy_spanner";
  row.parameter = eps;
  auto& c = row.columns;
  c["instance"] = index;
  c["label"] = inst.label;
  c["n"] = g.vertex_count();
  c["m"] = g.edge_count();
  c["epsilon"] = eps.str();
  c["epsilon_float"] = eps.to_double();

  SpannerResult res;
  try {
    res = greedy_spanner(g, eps);
  } catch (const std::exception& ex) {
    row.checks.push_back(outcome(checks::kRunInvariants, false, ex.what()));
    c["status"] = "error";
    c["error"] = ex.what();
    return row;
  }
  const Rational stretch = Rational(1) + eps;
  c["spanner_edges"] = res.edges.size();
  c["weight"] = res.edges.weight(g).str();
  c["lightness"] = res.lightness.str();
  c["lightness_float"] = res.lightness.to_double();
  c["stretch_certificate"] = res.stretch_certificate.str();
  c["stretch_certificate_float"] = res.stretch_certificate.to_double();

  StretchMode mode = g.vertex_count() <= kExactStretchVertexLimit ? StretchMode::all_pairs()
                                                                   : StretchMode::sampled(index + 1, 5000);
  StretchReport sr = verify_spanner_stretch(g, res.edges, eps, mode);
  const bool stretch_ok = sr.passed() && res.stretch_certificate <= stretch;
  row.checks.push_back(outcome(checks::kStretch, stretch_ok,
                               std::string(mode.exact ? "all pairs" : "sampled") + ", max " + sr.max_ratio.str()));
  c["max_stretch"] = sr.max_ratio.str();
  c["max_stretch_float"] = sr.max_ratio.to_double();

  Subgraph sub = edge_subgraph(g, res.edges);
  DetourReport mr = verify_spanner_minimality(sub.graph, eps, sub.parent_edge);
  row.checks.push_back(outcome(checks::kMinimality, mr.passed(),
                               mr.passed() ? "" : "edge " + std::to_string(mr.violations.front())));
  MstContainmentReport mc = verify_mst_containment(g, res.edges);
  row.checks.push_back(outcome(checks::kMstContainment, mc.passed(),
                               mc.passed() ? "" : std::to_string(mc.missing_tree_edges.size()) + " tree edges missing"));

  std::optional<Rational> optspan;
  if (g.edge_count() <= kOptSpanEdgeLimit) {
    optspan = brute_force_optspan(g, eps);
    row.checks.push_back(outcome(checks::kOptSpan, *optspan <= res.lightness,
                                 "optspan " + optspan->str() + ", greedy " + res.lightness.str()));
  } else {
    row.checks.push_back(skipped(checks::kOptSpan, "m above brute-force limit"));
  }
  c["optspan"] = rational_or_null(optspan);

  std::optional<Rational> bound;
  if (inst.genus) {
    bound = genus_lightness_bound(eps, *inst.genus);
    row.checks.push_back(outcome(checks::kLightnessBound, res.lightness <= *bound,
                                 "lightness " + res.lightness.str() + " vs bound " + bound->str()));
  } else {
    row.checks.push_back(skipped(checks::kLightnessBound, "genus unknown"));
  }
  c["genus"] = inst.genus ? nlohmann::json(*inst.genus) : nlohmann::json(nullptr);
  c["bound"] = rational_or_null(bound);
  c["bound_float"] = float_or_null(bound);
  if (include_result) row.attachment = spanner_result_to_json(res, checks_to_json(row.checks));
  return row;
}

void finish_rows(Report& report) {
  sort_rows(report.rows);
  for (auto& row : report.rows) {
    std::string summary;
    for (const auto& ch : row.checks) {
      if (!summary.empty()) summary += ";";
      summary += ch.name + "=" + to_string(ch.verdict);
    }
    row.columns["checks"] = summary;
    if (!row.columns.contains("status")) row.columns["status"] = row_status(row, report.enforced);
  }
}

}  // namespace

Report run_explore(const ExperimentConfig& config) {
  if (config.instances.empty()) throw ArgumentError("explore needs at least one instance");
  if (config.algorithms.empty()) throw ArgumentError("explore needs at least one algorithm");
  Report report;
  report.command = "explore";
  report.enforced = effective_checks(config);
  std::vector<Instance> instances = build_instances(config.instances, config.parallelism);
  for (const auto& inst : instances)
    for (const auto& w : inst.warnings) report.warnings.push_back(inst.label + ": " + w);

  const std::size_t tasks = instances.size() * config.algorithms.size();
  std::vector<ResultRow> rows(tasks);
  parallel_for(tasks, config.parallelism, [&](std::size_t t) {
    const std::size_t i = t / config.algorithms.size();
    rows[t] = explore_row(i, instances[i], config.algorithms[t % config.algorithms.size()], config.include_logs);
  });
  report.rows = std::move(rows);
  finish_rows(report);
  return report;
}

Report run_spanner(const ExperimentConfig& config) {
  if (config.instances.empty()) throw ArgumentError("spanner needs at least one instance");
  if (config.epsilons.empty()) throw ArgumentError("spanner needs at least one epsilon");
  Report report;
  report.command = "spanner";
  report.enforced = effective_checks(config);
  std::vector<Instance> instances = build_instances(config.instances, config.parallelism);
  const std::size_t tasks = instances.size() * config.epsilons.size();
  std::vector<ResultRow> rows(tasks);
  parallel_for(tasks, config.parallelism, [&](std::size_t t) {
    const std::size_t i = t / config.epsilons.size();
    rows[t] = spanner_row(i, instances[i], config.epsilons[t % config.epsilons.size()], config.include_logs);
  });
  report.rows = std::move(rows);
  finish_rows(report);
  return report;
}

// ---------------------------------------------------------------------------
// Verification campaign

std::vector<InstanceSpec> campaign_instances(const std::vector<std::uint64_t>& seeds) {
  std::vector<InstanceSpec> out;
  for (std::uint64_t s : seeds) {
    const auto v = static_cast<std::int64_t>(s % 7);
    out.push_back({Family::CombLowerBound, {{"k", 2 + v % 4}, {"delta", "3/2"}}, s});
    out.push_back({Family::RandomPlanar, {{"points", 6 + v * 2}}, s});
    out.push_back({Family::Grid, {{"p", 2 + v % 3}, {"q", 3 + v % 2}, {"weights", "uniform"}}, s});
    out.push_back({Family::ToroidalGrid, {{"p", 3}, {"q", 3 + v % 2}, {"weights", "uniform"}}, s});
    out.push_back({Family::RandomTree, {{"n", 8 + v * 3}}, s});
    out.push_back({Family::ErdosRenyi, {{"n", 7 + v % 4}, {"p", 0.35}}, s});
  }
  return out;
}

namespace {

struct Tally {
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;
  std::string first;

  void record(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++violations;
    if (first.empty()) first = what;
  }
  void merge(const Tally& o) {
    cases += o.cases;
    violations += o.violations;
    skipped += o.skipped;
    if (first.empty()) first = o.first;
  }
};

// Property names in report order; the monotonicity probe is advisory.
const std::vector<std::string>& campaign_properties() {
  static const std::vector<std::string> names{
      "blocking.run_invariants",    "blocking.charge_bound",       "blocking.cycle_property",
      "blocking.cycle_enumeration", "blocking.online_purity",      "spanner.stretch",
      "spanner.minimality",         "spanner.cycle_enumeration",   "spanner.mst_containment",
      "spanner.optspan_order",      "spanner.monotonicity_probe",  "oracle.tsp_permutation",
      "oracle.mst_sandwich",        "fault.dropped_spanner_edge",  "fault.redundant_spanner_edge"};
  return names;
}

using Tallies = std::map<std::string, Tally>;

std::vector<EdgeId> sorted_copy(std::vector<EdgeId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Cycle enumeration on `subset` as a graph of its own, mapped back to parent
// ids; nullopt when above the enumeration guard.
std::optional<std::vector<EdgeId>> enumerated_violations(const Graph& g, const EdgeSubset& subset,
                                                         const Rational& factor) {
  Subgraph sub = edge_subgraph(g, subset);
  try {
    CycleCheckReport r = enumerate_cycles_check(sub.graph, factor);
    std::vector<EdgeId> out;
    for (EdgeId e : r.violating_edges) out.push_back(sub.parent_edge[e]);
    return sorted_copy(std::move(out));
  } catch (const ResourceError&) {
    return std::nullopt;
  }
}

void campaign_instance(const Instance& inst, const CampaignOptions& opt, Tallies& t) {
  const Graph& g = inst.graph;
  const std::string label = inst.label;

  for (const Rational& delta : opt.deltas) {
    const std::string where = label + " delta=" + delta.str();
    ExplorationParams params;
    params.delta = delta;
    params.start = inst.start;
    params.tie_break = inst.tie_break.value_or(TieBreak::by_edge_id());
    params.verify_invariants = true;
    TraversalLog log;
    try {
      log = run_blocking(g, params);
    } catch (const InvariantViolation& ex) {
      t["blocking.run_invariants"].record(false, where + ": " + ex.what());
      continue;
    }
    t["blocking.run_invariants"].record(true, where);
    std::optional<Rational> family;
    if (inst.genus) family = genus_lightness_bound(delta, *inst.genus);
    CostChainReport chain = verify_cost_chain(g, log, delta, family);
    t["blocking.charge_bound"].record(chain.passed(), where);
    CyclePropertyReport cyc = verify_blocking_cycle_property(g, log, delta);
    t["blocking.cycle_property"].record(cyc.passed(), where);
    if (auto enumerated = enumerated_violations(g, cyc.combined, Rational(1) + delta)) {
      t["blocking.cycle_enumeration"].record(*enumerated == sorted_copy(cyc.detours.violations), where);
    } else {
      ++t["blocking.cycle_enumeration"].skipped;
    }
    t["blocking.online_purity"].record(log.audit.violations == 0, where);
  }

  std::optional<Rational> previous_weight;
  for (const Rational& eps : opt.epsilons) {
    const std::string where = label + " eps=" + eps.str();
    SpannerResult res = greedy_spanner(g, eps);
    StretchReport sr = verify_spanner_stretch(g, res.edges, eps, StretchMode::all_pairs());
    t["spanner.stretch"].record(sr.passed() && res.stretch_certificate <= Rational(1) + eps, where);
    Subgraph sub = edge_subgraph(g, res.edges);
    DetourReport mr = verify_spanner_minimality(sub.graph, eps, sub.parent_edge);
    t["spanner.minimality"].record(mr.passed(), where);
    if (auto enumerated = enumerated_violations(g, res.edges, Rational(1) + eps)) {
      t["spanner.cycle_enumeration"].record(*enumerated == sorted_copy(mr.violations), where);
    } else {
      ++t["spanner.cycle_enumeration"].skipped;
    }
    t["spanner.mst_containment"].record(verify_mst_containment(g, res.edges).passed(), where);
    if (g.edge_count() <= kOptSpanEdgeLimit) {
      t["spanner.optspan_order"].record(brute_force_optspan(g, eps) <= res.lightness, where);
    } else {
      ++t["spanner.optspan_order"].skipped;
    }
    // Epsilons are visited in the given order; the probe compares neighbours
    // with increasing epsilon only.
    Rational weight = res.edges.weight(g);
    if (previous_weight) t["spanner.monotonicity_probe"].record(weight <= *previous_weight, where);
    previous_weight = weight;

    // Fault injection: dropping a spanner edge must break stretch on exactly
    // that edge's endpoints; adding a rejected edge must break minimality on it.
    if (!res.edges.empty()) {
      const EdgeId dropped = res.edges.ids()[res.edges.size() / 2];
      std::vector<EdgeId> ids(res.edges.ids().begin(), res.edges.ids().end());
      std::erase(ids, dropped);
      EdgeSubset faulty(g, ids);
      StretchReport fr = verify_spanner_stretch(g, faulty, eps, StretchMode::all_pairs());
      const Edge& de = g.edge(dropped);
      std::pair<VertexId, VertexId> key{std::min(de.u, de.v), std::max(de.u, de.v)};
      bool found = std::find(fr.violations.begin(), fr.violations.end(), key) != fr.violations.end();
      t["fault.dropped_spanner_edge"].record(found, where + " edge " + std::to_string(dropped));
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (res.edges.contains(e)) continue;
      std::vector<EdgeId> ids(res.edges.ids().begin(), res.edges.ids().end());
      ids.push_back(e);
      EdgeSubset padded(g, ids);
      Subgraph psub = edge_subgraph(g, padded);
      DetourReport pr = verify_spanner_minimality(psub.graph, eps, psub.parent_edge);
      bool found = std::find(pr.violations.begin(), pr.violations.end(), e) != pr.violations.end();
      t["fault.redundant_spanner_edge"].record(found, where + " edge " + std::to_string(e));
      break;
    }
  }
}

void campaign_tsp(std::uint64_t seed, Tallies& t) {
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::uint32_t>(3 + rng() % 6);  // 3..8
  Graph g = gen_erdos_renyi(n, 0.5, rng());
  const std::string where = "erdos_renyi n=" + std::to_string(n) + " seed=" + std::to_string(seed);
  TourResult exact = exact_tsp(g);
  TourResult brute = permutation_tsp(g);
  t["oracle.tsp_permutation"].record(exact.cost == brute.cost, where);
  MstBounds b = mst_bounds(g);
  t["oracle.mst_sandwich"].record(b.lower <= exact.cost && exact.cost <= b.upper, where);
}

}  // namespace

Report run_verify(const CampaignOptions& options) {
  std::vector<InstanceSpec> specs = campaign_instances(options.seeds);
  std::vector<Instance> instances = build_instances(specs, options.parallelism);
  const std::size_t tasks = instances.size() + options.tsp_graphs;
  std::vector<Tallies> partial(tasks);
  parallel_for(tasks, options.parallelism, [&](std::size_t i) {
    if (i < instances.size())
      campaign_instance(instances[i], options, partial[i]);
    else
      campaign_tsp(0x7a3b1c5dULL + (i - instances.size()), partial[i]);
  });
  Tallies total;
  for (const auto& p : partial)
    for (const auto& [name, tally] : p) total[name].merge(tally);

  Report report;
  report.command = "verify";
  for (const auto& name : campaign_properties())
    if (name != "spanner.monotonicity_probe") report.enforced.insert(name);
  for (std::size_t i = 0; i < campaign_properties().size(); ++i) {
    const auto& name = campaign_properties()[i];
    const Tally& tally = total[name];
    ResultRow row;
    row.instance_index = i;
    row.task = name;
    row.columns["property"] = name;
    row.columns["cases"] = tally.cases;
    row.columns["violations"] = tally.violations;
    row.columns["skipped"] = tally.skipped;
    row.columns["enforced"] = report.enforced.count(name) > 0;
    row.columns["first_violation"] = tally.first;
    row.checks.push_back(outcome(name, tally.violations == 0, tally.first));
    report.rows.push_back(std::move(row));
  }
  for (auto& row : report.rows) row.columns["status"] = row_status(row, report.enforced);
  return report;
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::string csv_cell(const nlohmann::ordered_json& v) {
  std::string s;
  if (v.is_null()) return "";
  if (v.is_string())
    s = v.get<std::string>();
  else if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(10);
    os << v.get<double>();
    s = os.str();
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace

std::string render_csv(const Report& report) {
  std::vector<std::string> header;
  for (const auto& row : report.rows)
    for (const auto& [key, value] : row.columns.items())
      if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ",";
      if (row.columns.contains(header[i])) out += csv_cell(row.columns[header[i]]);
    }
    out += "\n";
  }
  return out;
}

nlohmann::json render_json(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r = nlohmann::json::parse(row.columns.dump());
    r["check_details"] = checks_to_json(row.checks);
    if (!row.attachment.is_null()) r["detail"] = row.attachment;
    rows.push_back(std::move(r));
  }
  std::vector<std::string> enforced(report.enforced.begin(), report.enforced.end());
  return nlohmann::json{{"command", report.command},
                        {"enforced_checks", enforced},
                        {"warnings", report.warnings},
                        {"violations", report.enforced_failures()},
                        {"rows", rows}};
}

void write_report(const Report& report, OutputFormat format, const std::string& path) {
  const std::string text = format == OutputFormat::Csv ? render_csv(report) : render_json(report).dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write report to '" + path + "'");
  out << text;
}

}  // namespace spanex
