#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "depnet/graph.hpp"
#include "depnet/network.hpp"

namespace depnet {

struct ComponentDecomposition {
  // Weakly connected components, each sorted ascending; ordered by size
  // descending, then smallest node id.
  std::vector<std::vector<std::size_t>> components;
  std::size_t giant_index = 0;
  // (nodes, links) per component; links are directed arcs inside it.
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
};

ComponentDecomposition components(const Digraph& g);

// Induced subgraph on a node subset; new ids follow ascending old ids.
Digraph induced_subgraph(const Digraph& g, const std::vector<std::size_t>& nodes);

struct Subnetwork {
  DependencyNetwork network;
  std::vector<std::size_t> original_id;  // new id -> id in the source network
};

// Induced subnetwork on the largest weakly connected component.
// Throws DegenerateError on an empty network.
Subnetwork giant_subnetwork(const DependencyNetwork& n);

enum class DistanceMode { directed, undirected };

struct DistanceStats {
  std::optional<double> average;  // absent when no finite pair exists
  std::size_t diameter = 0;
  std::size_t finite_pairs = 0;
};

// BFS from every node. Averages over ordered pairs u != v with finite
// distance; throws DegenerateError on an empty graph.
DistanceStats distances(const Digraph& g, DistanceMode mode);

// Per-source BFS distances; kUnreachable marks infinite distance.
inline constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);
std::vector<std::size_t> bfs_distances(const Digraph& g, std::size_t source, DistanceMode mode);

std::uint64_t triangle_count(const Digraph& g);
std::uint64_t connected_triples(const Digraph& g);

// Global ratio 3 * triangles / connected triples on the undirected
// projection; 0 when there are no triples.
double transitivity(const Digraph& g);

// Mean of local clustering coefficients (nodes with degree < 2 count as 0).
double average_local_clustering(const Digraph& g);

struct DegreeStats {
  std::vector<std::size_t> in, out, total;
  double avg_in = 0.0;
  double avg_out = 0.0;
  double avg_total = 0.0;
  std::size_t max_total = 0;
};

// total = in + out.
DegreeStats degree_stats(const Digraph& g);

// Newman's degree correlation: Pearson coefficient of the degrees at both
// ends of every undirected edge, each edge counted in both orientations.
// Throws DegenerateError with no edges or zero degree variance.
double degree_correlation(const Digraph& g);

// Directed variant: Pearson coefficient of (out-degree of source, in-degree
// of target) over arcs.
double directed_degree_correlation(const Digraph& g);

struct ErBaseline {
  std::size_t samples = 0;
  double avg_distance_mean = 0.0;
  double avg_distance_sd = 0.0;
  double transitivity_mean = 0.0;
  double transitivity_sd = 0.0;
  double analytic_distance = 0.0;      // ln(n) / ln(<k>)
  double analytic_transitivity = 0.0;  // <k> / n
};

// Uniform G(n, m) undirected graph.
Digraph erdos_renyi_gnm(std::size_t nodes, std::size_t links, std::uint64_t seed);

// Monte Carlo over G(n, m) samples; sample i uses a stream derived from
// (seed, i). Metrics are taken on each sample's giant component.
ErBaseline er_baseline(std::size_t nodes, std::size_t links, std::size_t samples,
                       std::uint64_t seed);

}  // namespace depnet
