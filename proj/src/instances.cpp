#include "spanex/instances.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "spanex/errors.hpp"

namespace spanex {

// ---------------------------------------------------------------------------
// Comb

CombInstance gen_comb_lower_bound(std::uint32_t k, const Rational& delta) {
  if (k < 1) throw ArgumentError("comb: k must be at least 1");
  if (delta.is_infinite() || delta.sign() <= 0) throw ArgumentError("comb: delta must be positive");
  if (k > (1u << 28)) throw ArgumentError("comb: k too large");

  const Rational heavy = Rational(static_cast<std::int64_t>(k) + 1) / (Rational(1) + delta);
  const VertexId n = 4 * k;
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (VertexId i = 0; i + 1 < 2 * k; ++i) edges.push_back({i, i + 1, Rational(1)});
  for (VertexId i = 0; i < k; ++i) edges.push_back({i, 2 * k + i, Rational(1)});
  for (VertexId i = k; i < 2 * k; ++i) edges.push_back({i, 2 * k + i, heavy});

  std::vector<EdgeId> script(edges.size());
  for (EdgeId e = 0; e < script.size(); ++e) script[e] = e;

  std::vector<std::string> warnings;
  if (heavy <= Rational(1))
    warnings.push_back("heavy weight " + heavy.str() +
                       " is not above 1 (k <= delta): heavy leaves are never strictly lighter than a unit edge");
  if (delta >= Rational(static_cast<std::int64_t>(k) - 1))
    warnings.push_back("delta >= k - 1: outside the range where the comb forces cost k^2");

  return CombInstance{Graph(n, std::move(edges)), 0, std::move(script), heavy, std::move(warnings)};
}

Rational comb_optimal_tour_cost(std::uint32_t k, const Rational& delta) {
  const Rational kk(static_cast<std::int64_t>(k));
  return Rational(2) * (Rational(3) * kk - Rational(1) + kk * (kk + Rational(1)) / (Rational(1) + delta));
}

Rational comb_ratio_lower_bound(std::uint32_t k, const Rational& delta) {
  const Rational kk(static_cast<std::int64_t>(k));
  return kk * kk / (Rational(2) * (kk * kk / (Rational(1) + delta) + Rational(3) * kk - Rational(1)));
}

// ---------------------------------------------------------------------------
// Planar

namespace {

std::uint64_t isqrt_nearest(std::uint64_t x) {
  std::uint64_t s = 0;
  for (int bit = 31; bit >= 0; --bit) {
    std::uint64_t c = s | (std::uint64_t{1} << bit);
    if (c * c <= x) s = c;
  }
  // (s + 1/2)^2 = s^2 + s + 1/4, so x rounds up iff x > s^2 + s.
  if (x - s * s > s) ++s;
  return s;
}

constexpr int kPointRetries = 16;

}  // namespace

Rational snapped_length(const GridPoint& a, const GridPoint& b) {
  const auto dx = static_cast<std::uint64_t>(a.x > b.x ? a.x - b.x : b.x - a.x);
  const auto dy = static_cast<std::uint64_t>(a.y > b.y ? a.y - b.y : b.y - a.y);
  const std::uint64_t d2 = dx * dx + dy * dy;  // < 2^41
  const int shift = 2 * (kPlanarWeightBits - kPlanarCoordinateBits);
  return Rational(static_cast<Int128>(isqrt_nearest(d2 << shift)), Int128{1} << kPlanarWeightBits);
}

PlanarPointSet gen_random_planar_points(std::size_t points, std::uint64_t seed) {
  if (points < 3) throw ArgumentError("random_planar: need at least 3 points");
  if (points > (std::size_t{1} << 20)) throw ArgumentError("random_planar: too many points");
  std::mt19937_64 rng(seed);
  const int drop = 64 - kPlanarCoordinateBits;
  for (int attempt = 0; attempt < kPointRetries; ++attempt) {
    std::vector<GridPoint> pts;
    pts.reserve(points);
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    while (pts.size() < points) {
      auto x = static_cast<std::int64_t>(rng() >> drop);
      auto y = static_cast<std::int64_t>(rng() >> drop);
      if (seen.emplace(x, y).second) pts.push_back({x, y});
    }
    if (auto edges = delaunay_edges(pts)) return PlanarPointSet{std::move(pts), std::move(*edges)};
  }
  throw GenerationError("random_planar: collinear point sets on every retry");
}

Graph gen_random_planar(std::size_t points, std::uint64_t seed) {
  PlanarPointSet set = gen_random_planar_points(points, seed);
  std::vector<Edge> edges;
  edges.reserve(set.edges.size());
  for (auto [u, v] : set.edges) edges.push_back({u, v, snapped_length(set.points[u], set.points[v])});
  return Graph(set.points.size(), std::move(edges));
}

// ---------------------------------------------------------------------------
// Grids, trees, random graphs

namespace {

Rational draw_weight(std::mt19937_64& rng, WeightDistribution dist) {
  if (dist == WeightDistribution::Unit) return Rational(1);
  return Rational(static_cast<Int128>(1024 + rng() % 1025), 1024);
}

Graph grid_impl(std::uint32_t p, std::uint32_t q, bool wrap, WeightDistribution weights, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto id = [&](std::uint32_t r, std::uint32_t c) { return static_cast<VertexId>(r * q + c); };
  std::vector<Edge> edges;
  for (std::uint32_t r = 0; r < p; ++r) {
    for (std::uint32_t c = 0; c < q; ++c) {
      if (c + 1 < q || wrap) edges.push_back({id(r, c), id(r, (c + 1) % q), draw_weight(rng, weights)});
      if (r + 1 < p || wrap) edges.push_back({id(r, c), id((r + 1) % p, c), draw_weight(rng, weights)});
    }
  }
  return Graph(static_cast<std::size_t>(p) * q, std::move(edges));
}

}  // namespace

Graph gen_grid(std::uint32_t p, std::uint32_t q, WeightDistribution weights, std::uint64_t seed) {
  if (p < 1 || q < 1) throw ArgumentError("grid: p and q must be positive");
  if (std::uint64_t{p} * q > (1u << 26)) throw ArgumentError("grid: too many vertices");
  return grid_impl(p, q, false, weights, seed);
}

Graph gen_toroidal_grid(std::uint32_t p, std::uint32_t q, WeightDistribution weights, std::uint64_t seed) {
  if (p < 3 || q < 3) throw ArgumentError("toroidal_grid: p and q must be at least 3");
  if (std::uint64_t{p} * q > (1u << 26)) throw ArgumentError("toroidal_grid: too many vertices");
  return grid_impl(p, q, true, weights, seed);
}

Graph gen_random_tree(std::uint32_t n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("random_tree: n must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (VertexId i = 1; i < n; ++i) {
    auto parent = static_cast<VertexId>(rng() % i);
    edges.push_back({parent, i, draw_weight(rng, WeightDistribution::Uniform)});
  }
  return Graph(n, std::move(edges));
}

Graph gen_erdos_renyi(std::uint32_t n, double p, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("erdos_renyi: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("erdos_renyi: p must lie in [0, 1]");
  if (n > 20000) throw ArgumentError("erdos_renyi: n too large");
  // Edge present iff a 64-bit draw falls below p * 2^64.
  const bool always = p >= 1.0;
  const auto threshold = always ? std::numeric_limits<std::uint64_t>::max()
                                : static_cast<std::uint64_t>(std::ldexp(static_cast<long double>(p), 64));
  std::mt19937_64 rng(seed);
  constexpr int kAttempts = 100;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        const std::uint64_t draw = rng();
        if (always || draw < threshold) edges.push_back({u, v, draw_weight(rng, WeightDistribution::Uniform)});
      }
    }
    Graph g(n, std::move(edges));
    if (is_connected(g)) return g;
  }
  throw GenerationError("erdos_renyi: no connected sample in " + std::to_string(kAttempts) + " attempts");
}

// ---------------------------------------------------------------------------
// Edge-list files

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line.substr(0, line.find('#')));
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

Int128 parse_integer(const std::string& tok, std::size_t line, const char* what) {
  Rational r;
  try {
    r = Rational::parse(tok);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  }
  if (!r.is_integer() || tok.find_first_of("./") != std::string::npos)
    throw ParseError(line, std::string(what) + " must be an integer, got '" + tok + "'");
  return r.num();
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t header_line = 0;
  std::optional<std::pair<Int128, Int128>> header;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    if (!header) {
      if (toks.size() != 2) throw ParseError(lineno, "header must be 'n m'");
      Int128 n = parse_integer(toks[0], lineno, "vertex count");
      Int128 m = parse_integer(toks[1], lineno, "edge count");
      if (n < 1) throw ParseError(lineno, "vertex count must be positive");
      if (m < 0) throw ParseError(lineno, "edge count must be non-negative");
      if (n > std::numeric_limits<VertexId>::max() || m > std::numeric_limits<EdgeId>::max() - 1)
        throw ParseError(lineno, "graph too large");
      header = std::pair(n, m);
      header_line = lineno;
      continue;
    }
    if (static_cast<Int128>(edges.size()) == header->second)
      throw ParseError(lineno, "more edge lines than the header's m = " + int128_to_string(header->second));
    if (toks.size() != 4) throw ParseError(lineno, "edge line must be 'u v p q'");
    Int128 u = parse_integer(toks[0], lineno, "endpoint");
    Int128 v = parse_integer(toks[1], lineno, "endpoint");
    Int128 p = parse_integer(toks[2], lineno, "weight numerator");
    Int128 q = parse_integer(toks[3], lineno, "weight denominator");
    if (q <= 0) throw ParseError(lineno, "non-positive weight denominator");
    if (p < 0) throw ParseError(lineno, "negative weight");
    if (u < 0 || v < 0 || u >= header->first || v >= header->first)
      throw ParseError(lineno, "endpoint out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    Rational w;
    try {
      w = Rational(p, q);
    } catch (const std::exception& ex) {
      throw ParseError(lineno, ex.what());
    }
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
  }
  if (!header) throw ParseError(lineno, "missing 'n m' header");
  if (static_cast<Int128>(edges.size()) != header->second)
    throw ParseError(lineno, "expected " + int128_to_string(header->second) + " edge lines, found " +
                                 std::to_string(edges.size()));
  try {
    return Graph(static_cast<std::size_t>(header->first), std::move(edges));
  } catch (const std::exception& ex) {
    throw ParseError(header_line, ex.what());
  }
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

std::string format_graph(const Graph& g) {
  std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + int128_to_string(e.weight.num()) + " " +
           int128_to_string(e.weight.den()) + "\n";
  }
  return out;
}

void write_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write graph file '" + path + "'");
  out << format_graph(g);
  if (!out) throw ArgumentError("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Instance specs

namespace {

struct FamilyName {
  Family family;
  const char* name;
};

constexpr FamilyName kFamilies[] = {
    {Family::CombLowerBound, "comb_lower_bound"}, {Family::RandomPlanar, "random_planar"},
    {Family::Grid, "grid"},                       {Family::ToroidalGrid, "toroidal_grid"},
    {Family::RandomTree, "random_tree"},          {Family::ErdosRenyi, "erdos_renyi"},
    {Family::File, "file"},
};

const nlohmann::json& require_param(const InstanceSpec& spec, const char* key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end())
    throw ArgumentError(std::string(to_string(spec.family)) + ": missing parameter '" + key + "'");
  return *it;
}

std::uint32_t uint_param(const InstanceSpec& spec, const char* key) {
  const auto& v = require_param(spec, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
      v.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max())
    throw ArgumentError(std::string(to_string(spec.family)) + ": parameter '" + key +
                        "' must be a non-negative integer");
  return v.get<std::uint32_t>();
}

Rational rational_param(const InstanceSpec& spec, const char* key) {
  const auto& v = require_param(spec, key);
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number_float()) return Rational::parse(v.dump());
  } catch (const std::exception& ex) {
    throw ArgumentError(std::string(to_string(spec.family)) + ": parameter '" + key + "': " + ex.what());
  }
  throw ArgumentError(std::string(to_string(spec.family)) + ": parameter '" + key + "' must be a rational");
}

WeightDistribution weights_param(const InstanceSpec& spec, WeightDistribution fallback) {
  auto it = spec.params.find("weights");
  if (it == spec.params.end()) return fallback;
  if (it->is_string()) {
    if (*it == "unit") return WeightDistribution::Unit;
    if (*it == "uniform") return WeightDistribution::Uniform;
  }
  throw ArgumentError(std::string(to_string(spec.family)) + ": weights must be \"unit\" or \"uniform\"");
}

}  // namespace

const char* to_string(Family family) {
  for (const auto& f : kFamilies)
    if (f.family == family) return f.name;
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (const auto& f : kFamilies)
    if (name == f.name) return f.family;
  throw ArgumentError("unknown instance family '" + name + "'");
}

InstanceSpec parse_instance_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw ArgumentError("instance spec must be a JSON object");
  InstanceSpec spec;
  auto fam = j.find("family");
  if (fam == j.end() || !fam->is_string()) throw ArgumentError("instance spec needs a string 'family'");
  spec.family = parse_family(fam->get<std::string>());
  if (auto p = j.find("params"); p != j.end()) {
    if (!p->is_object()) throw ArgumentError("instance 'params' must be an object");
    spec.params = *p;
  }
  if (auto s = j.find("seed"); s != j.end()) {
    if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<std::int64_t>() >= 0))
      throw ArgumentError("instance 'seed' must be a non-negative integer");
    spec.seed = s->get<std::uint64_t>();
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "family" && key != "params" && key != "seed")
      throw ArgumentError("unknown instance spec field '" + key + "'");
  }
  return spec;
}

nlohmann::json to_json(const InstanceSpec& spec) {
  return nlohmann::json{{"family", to_string(spec.family)}, {"params", spec.params}, {"seed", spec.seed}};
}

std::string instance_label(const InstanceSpec& spec) {
  std::string out = to_string(spec.family);
  out += "{";
  bool first = true;
  for (const auto& [key, value] : spec.params.items()) {
    if (!first) out += ",";
    first = false;
    out += key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
  }
  out += "}#" + std::to_string(spec.seed);
  return out;
}

Instance build_instance(const InstanceSpec& spec) {
  auto make = [&](Graph g) {
    return Instance{spec, instance_label(spec), std::move(g), 0, std::nullopt, std::nullopt, {}};
  };
  switch (spec.family) {
    case Family::CombLowerBound: {
      CombInstance comb = gen_comb_lower_bound(uint_param(spec, "k"), rational_param(spec, "delta"));
      Instance inst = make(std::move(comb.graph));
      inst.start = comb.start;
      inst.tie_break = TieBreak::adversarial(std::move(comb.script));
      inst.genus = 0;
      inst.warnings = std::move(comb.warnings);
      return inst;
    }
    case Family::RandomPlanar: {
      Instance inst = make(gen_random_planar(uint_param(spec, "points"), spec.seed));
      inst.genus = 0;
      return inst;
    }
    case Family::Grid: {
      Instance inst = make(
          gen_grid(uint_param(spec, "p"), uint_param(spec, "q"), weights_param(spec, WeightDistribution::Unit), spec.seed));
      inst.genus = 0;
      return inst;
    }
    case Family::ToroidalGrid: {
      Instance inst = make(gen_toroidal_grid(uint_param(spec, "p"), uint_param(spec, "q"),
                                             weights_param(spec, WeightDistribution::Uniform), spec.seed));
      inst.genus = 1;
      return inst;
    }
    case Family::RandomTree: {
      Instance inst = make(gen_random_tree(uint_param(spec, "n"), spec.seed));
      inst.genus = 0;
      return inst;
    }
    case Family::ErdosRenyi: {
      const auto& p = require_param(spec, "p");
      if (!p.is_number()) throw ArgumentError("erdos_renyi: parameter 'p' must be a number");
      return make(gen_erdos_renyi(uint_param(spec, "n"), p.get<double>(), spec.seed));
    }
    case Family::File: {
      const auto& path = require_param(spec, "path");
      if (!path.is_string()) throw ArgumentError("file: parameter 'path' must be a string");
      Graph g = read_graph(path.get<std::string>());
      require_connected(g);
      return make(std::move(g));
    }
  }
  throw ArgumentError("unknown instance family");
}

}  // namespace spanex
