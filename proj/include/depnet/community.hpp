#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "depnet/graph.hpp"

namespace depnet {

// Newman modularity of a node -> community assignment on the undirected
// projection. Throws DegenerateError without edges, InputError when the
// assignment size differs from the node count.
double modularity(const Digraph& g, std::span<const std::size_t> assignment);

struct CommunityPartition {
  std::vector<std::size_t> assignment;  // dense ids, numbered by smallest member
  std::size_t community_count = 0;
  double modularity = 0.0;
  std::size_t walktrap_t = 0;
};

// One agglomeration step. Leaves are communities 0..n-1; the community created
// by step k (1-based) has id n + k - 1.
struct Merge {
  std::size_t step = 0;
  std::size_t community_a = 0;
  std::size_t community_b = 0;
  double delta_sigma = 0.0;
};

struct WalktrapResult {
  CommunityPartition partition;
  std::vector<Merge> dendrogram;
  // modularity after k merges, k = 0..n-1
  std::vector<double> modularity_by_step;
  std::size_t best_step = 0;
};

// t-step random-walk distribution started at `node` (row of (D^-1 A)^t).
std::vector<double> random_walk_profile(const Digraph& g, std::size_t t, std::size_t node);

// Squared walk distance r^2 = sum_k (P_ik - P_jk)^2 / d(k).
double walk_distance_sq(const Digraph& g, std::size_t t, std::size_t i, std::size_t j);

// Pons-Latapy agglomeration on the undirected projection: repeatedly merge
// the adjacent pair with the smallest increase of mean squared walk distance,
// ties to the smallest (min id, max id); the partition is the dendrogram cut
// with maximal modularity (earliest on ties). Requires a connected graph and
// t >= 1.
WalktrapResult walktrap(const Digraph& g, std::size_t t);

// Dense assignment after applying the first `steps` merges.
std::vector<std::size_t> cut_dendrogram(std::size_t node_count, std::span<const Merge> merges,
                                        std::size_t steps);

// node_id,label,community_id
void write_partition_csv(const CommunityPartition& p, std::span<const std::size_t> node_ids,
                         std::span<const std::string> labels, std::ostream& out);

// step,community_a,community_b,delta_sigma
void write_dendrogram_csv(std::span<const Merge> merges, std::ostream& out);

}  // namespace depnet
