#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "spanex/exploration.hpp"
#include "spanex/graph.hpp"
#include "spanex/rational.hpp"

namespace spanex {

// ---------------------------------------------------------------------------
// Comb lower-bound tree

/// Path of 2k unit edges; light unit leaves on the first k path vertices and
/// heavy leaves of weight (k+1)/(delta+1) on the last k.
///
/// Vertex ids: path 0..2k-1, leaf of path vertex i is 2k+i. Edge ids: path
/// edges 0..2k-2, light leaves 2k-1..3k-2, heavy leaves 3k-1..4k-2.
struct CombInstance {
  Graph graph;
  VertexId start;
  std::vector<EdgeId> script;  ///< spine first, so ties go to the path edge
  Rational heavy_weight;
  std::vector<std::string> warnings;
};

CombInstance gen_comb_lower_bound(std::uint32_t k, const Rational& delta);

/// Optimal tour of the comb (a tree, so twice its weight):
/// 2 (2k - 1 + k + k (k + 1) / (1 + delta)). The k heavy leaves weigh
/// k (k + 1) / (1 + delta) together, not k^2 / (1 + delta).
Rational comb_optimal_tour_cost(std::uint32_t k, const Rational& delta);

/// The finite-k competitive-ratio lower bound in its published closed form,
/// k^2 / (2 (k^2/(1+delta) + 3k - 1)). Its denominator drops k / (1 + delta)
/// from the tree weight, so it exceeds k^2 / comb_optimal_tour_cost slightly.
Rational comb_ratio_lower_bound(std::uint32_t k, const Rational& delta);

// ---------------------------------------------------------------------------
// Planar point sets

/// Integer point in [0, 2^20)^2; the unit square scaled by 2^20.
struct GridPoint {
  std::int64_t x;
  std::int64_t y;
};

inline constexpr int kPlanarCoordinateBits = 20;
inline constexpr int kPlanarWeightBits = 30;

struct PlanarPointSet {
  std::vector<GridPoint> points;
  std::vector<std::pair<VertexId, VertexId>> edges;  ///< Delaunay edges, u < v, sorted
};

/// Delaunay triangulation (exact integer predicates, Lawson flips) of
/// `points` distinct points. Returns nullopt if all points are collinear.
std::optional<std::vector<std::pair<VertexId, VertexId>>> delaunay_edges(const std::vector<GridPoint>& points);

PlanarPointSet gen_random_planar_points(std::size_t points, std::uint64_t seed);

/// Euclidean length scaled back to the unit square, rounded to a multiple of
/// 2^-30 with integer arithmetic only.
Rational snapped_length(const GridPoint& a, const GridPoint& b);

Graph gen_random_planar(std::size_t points, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Grids, trees, random graphs

enum class WeightDistribution {
  Unit,
  Uniform,  ///< 1 + r/1024 with r uniform in 0..1024
};

Graph gen_grid(std::uint32_t p, std::uint32_t q, WeightDistribution weights, std::uint64_t seed);
/// C_p x C_q (genus 1 for p, q >= 3).
Graph gen_toroidal_grid(std::uint32_t p, std::uint32_t q, WeightDistribution weights, std::uint64_t seed);
Graph gen_random_tree(std::uint32_t n, std::uint64_t seed);
/// G(n, p) resampled until connected (at most 100 attempts).
Graph gen_erdos_renyi(std::uint32_t n, double p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Edge-list files: "n m", then m lines "u v p q" (weight p/q); '#' starts a
// comment.

Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);
Graph read_graph(const std::string& path);
std::string format_graph(const Graph& g);
void write_graph(const std::string& path, const Graph& g);

// ---------------------------------------------------------------------------
// Instance specs

enum class Family { CombLowerBound, RandomPlanar, Grid, ToroidalGrid, RandomTree, ErdosRenyi, File };

const char* to_string(Family family);
Family parse_family(const std::string& name);

struct InstanceSpec {
  Family family = Family::Grid;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
};

InstanceSpec parse_instance_spec(const nlohmann::json& j);
nlohmann::json to_json(const InstanceSpec& spec);
/// Short stable label such as "toroidal_grid{p=4,q=5,weights=uniform}#3".
std::string instance_label(const InstanceSpec& spec);

struct Instance {
  InstanceSpec spec;
  std::string label;
  Graph graph;
  VertexId start = 0;
  std::optional<TieBreak> tie_break;  ///< comb instances carry their adversarial script
  std::optional<int> genus;           ///< known a priori for planar, tree, grid and torus families
  std::vector<std::string> warnings;
};

Instance build_instance(const InstanceSpec& spec);

}  // namespace spanex
