#include "depnet/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "depnet/disjoint_set.hpp"
#include "depnet/error.hpp"
#include "depnet/topology.hpp"

namespace depnet {

double modularity(const Digraph& g, std::span<const std::size_t> assignment) {
  if (assignment.size() != g.node_count()) {
    throw InputError("modularity: assignment does not cover every node");
  }
  const std::size_t m = g.edge_count();
  if (m == 0) throw DegenerateError("modularity: network has no links");
  std::size_t k = 0;
  for (auto c : assignment) k = std::max(k, c + 1);
  std::vector<double> internal(k, 0.0), degree(k, 0.0);
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    degree[assignment[u]] += static_cast<double>(g.degree(u));
    for (auto v : g.neighbors(u)) {
      if (u < v && assignment[u] == assignment[v]) internal[assignment[u]] += 1.0;
    }
  }
  const double edges = static_cast<double>(m);
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double share = degree[c] / (2.0 * edges);
    q += internal[c] / edges - share * share;
  }
  return q;
}

std::vector<double> random_walk_profile(const Digraph& g, std::size_t t, std::size_t node) {
  std::vector<double> cur(g.node_count(), 0.0), next(g.node_count(), 0.0);
  cur[node] = 1.0;
  for (std::size_t step = 0; step < t; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      if (cur[u] == 0.0 || g.degree(u) == 0) continue;
      const double share = cur[u] / static_cast<double>(g.degree(u));
      for (auto v : g.neighbors(u)) next[v] += share;
    }
    std::swap(cur, next);
  }
  return cur;
}

double walk_distance_sq(const Digraph& g, std::size_t t, std::size_t i, std::size_t j) {
  auto pi = random_walk_profile(g, t, i);
  auto pj = random_walk_profile(g, t, j);
  double r = 0.0;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (g.degree(k) == 0) continue;
    const double diff = pi[k] - pj[k];
    r += diff * diff / static_cast<double>(g.degree(k));
  }
  return r;
}

namespace {

struct Community {
  std::size_t size = 0;
  std::size_t internal_edges = 0;
  std::size_t degree = 0;
  std::vector<double> profile;  // P_C / sqrt(d), so distances are plain L2
  std::map<std::size_t, std::size_t> neighbors;  // community -> edges between
  bool alive = false;
};

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    r += d * d;
  }
  return r;
}

std::vector<std::size_t> densify(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> dense;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = dense.try_emplace(labels[i], dense.size()).first->second;
  }
  return out;
}

}  // namespace

std::vector<std::size_t> cut_dendrogram(std::size_t node_count, std::span<const Merge> merges,
                                        std::size_t steps) {
  if (steps > merges.size()) throw InputError("cut_dendrogram: not enough merges");
  DisjointSet sets(node_count);
  std::vector<std::size_t> leaf(node_count + merges.size());
  for (std::size_t i = 0; i < node_count; ++i) leaf[i] = i;
  for (std::size_t k = 0; k < steps; ++k) {
    const Merge& mg = merges[k];
    sets.unite(leaf[mg.community_a], leaf[mg.community_b]);
    leaf[node_count + k] = leaf[mg.community_a];
  }
  std::vector<std::size_t> roots(node_count);
  for (std::size_t i = 0; i < node_count; ++i) roots[i] = sets.find(i);
  return densify(roots);
}

WalktrapResult walktrap(const Digraph& g, std::size_t t) {
  if (t < 1) throw InputError("walktrap: walk length must be >= 1");
  const std::size_t n = g.node_count();
  if (n == 0) throw DegenerateError("walktrap: empty graph");
  if (components(g).components.size() != 1) {
    throw InputError("walktrap: graph is not connected");
  }

  WalktrapResult result;
  result.partition.walktrap_t = t;
  if (n == 1) {
    result.partition.assignment = {0};
    result.partition.community_count = 1;
    result.modularity_by_step = {0.0};
    return result;
  }

  const double m = static_cast<double>(g.edge_count());
  const double nodes = static_cast<double>(n);
  std::vector<double> inv_sqrt_degree(n);
  for (std::size_t k = 0; k < n; ++k) {
    inv_sqrt_degree[k] = 1.0 / std::sqrt(static_cast<double>(g.degree(k)));
  }

  std::vector<Community> comm(2 * n - 1);
  for (std::size_t u = 0; u < n; ++u) {
    Community& c = comm[u];
    c.size = 1;
    c.degree = g.degree(u);
    c.alive = true;
    c.profile = random_walk_profile(g, t, u);
    for (std::size_t k = 0; k < n; ++k) c.profile[k] *= inv_sqrt_degree[k];
    for (auto v : g.neighbors(u)) c.neighbors[v] = 1;
  }

  auto delta_sigma = [&](std::size_t a, std::size_t b) {
    const double sa = static_cast<double>(comm[a].size);
    const double sb = static_cast<double>(comm[b].size);
    return sa * sb / (sa + sb) * squared_distance(comm[a].profile, comm[b].profile) / nodes;
  };
  auto contribution = [&](const Community& c) {
    const double share = static_cast<double>(c.degree) / (2.0 * m);
    return static_cast<double>(c.internal_edges) / m - share * share;
  };

  // (delta sigma, smaller id, larger id)
  using Candidate = std::tuple<double, std::size_t, std::size_t>;
  std::set<Candidate> queue;
  std::map<std::pair<std::size_t, std::size_t>, double> delta_of;
  auto push = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    double d = delta_sigma(a, b);
    queue.emplace(d, a, b);
    delta_of[{a, b}] = d;
  };
  auto drop = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    auto it = delta_of.find({a, b});
    if (it == delta_of.end()) return;
    queue.erase({it->second, a, b});
    delta_of.erase(it);
  };
  for (const auto& [u, v] : g.edges()) push(u, v);

  double q = 0.0;
  for (std::size_t u = 0; u < n; ++u) q += contribution(comm[u]);
  result.modularity_by_step.push_back(q);

  for (std::size_t step = 1; step < n; ++step) {
    auto [d, a, b] = *queue.begin();
    const std::size_t c = n + step - 1;
    Community& ca = comm[a];
    Community& cb = comm[b];
    Community& cc = comm[c];

    const std::size_t between = ca.neighbors.at(b);
    cc.size = ca.size + cb.size;
    cc.degree = ca.degree + cb.degree;
    cc.internal_edges = ca.internal_edges + cb.internal_edges + between;
    cc.alive = true;
    cc.profile.resize(n);
    const double wa = static_cast<double>(ca.size) / static_cast<double>(cc.size);
    const double wb = static_cast<double>(cb.size) / static_cast<double>(cc.size);
    for (std::size_t k = 0; k < n; ++k) cc.profile[k] = wa * ca.profile[k] + wb * cb.profile[k];

    for (const auto* side : {&ca, &cb}) {
      for (const auto& [x, edges] : side->neighbors) {
        if (x == a || x == b) continue;
        cc.neighbors[x] += edges;
      }
    }
    for (const auto& [x, edges] : ca.neighbors) drop(a, x);
    for (const auto& [x, edges] : cb.neighbors) drop(b, x);
    for (const auto& [x, edges] : cc.neighbors) {
      comm[x].neighbors.erase(a);
      comm[x].neighbors.erase(b);
      comm[x].neighbors[c] = edges;
      push(c, x);
    }

    q += contribution(cc) - contribution(ca) - contribution(cb);
    result.modularity_by_step.push_back(q);
    result.dendrogram.push_back({step, a, b, d});

    ca = Community{};
    cb = Community{};
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < result.modularity_by_step.size(); ++k) {
    // later cuts must win by more than round-off to count as better
    if (result.modularity_by_step[k] > result.modularity_by_step[best] + 1e-12) best = k;
  }
  result.best_step = best;
  result.partition.assignment = cut_dendrogram(n, result.dendrogram, best);
  result.partition.community_count =
      *std::max_element(result.partition.assignment.begin(), result.partition.assignment.end()) + 1;
  result.partition.modularity = modularity(g, result.partition.assignment);
  return result;
}

void write_partition_csv(const CommunityPartition& p, std::span<const std::size_t> node_ids,
                         std::span<const std::string> labels, std::ostream& out) {
  out << "node_id,label,community_id\n";
  for (std::size_t i = 0; i < p.assignment.size(); ++i) {
    std::string label = i < labels.size() ? labels[i] : std::string();
    if (label.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : label) {
        if (ch == '"') quoted += '"';
        quoted += ch;
      }
      label = quoted + "\"";
    }
    out << (i < node_ids.size() ? node_ids[i] : i) << ',' << label << ',' << p.assignment[i]
        << '\n';
  }
}

void write_dendrogram_csv(std::span<const Merge> merges, std::ostream& out) {
  out << "step,community_a,community_b,delta_sigma\n";
  const auto old = out.precision(17);
  for (const auto& mg : merges) {
    out << mg.step << ',' << mg.community_a << ',' << mg.community_b << ',' << mg.delta_sigma
        << '\n';
  }
  out.precision(old);
}

}  // namespace depnet
