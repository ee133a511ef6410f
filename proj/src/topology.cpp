#include "depnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "depnet/error.hpp"
#include "depnet/random.hpp"

namespace depnet {

ComponentDecomposition components(const Digraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> comp_of(n, kUnreachable);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp_of[s] != kUnreachable) continue;
    std::vector<std::size_t> members;
    comp_of[s] = comps.size();
    stack.push_back(s);
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (auto v : g.neighbors(u)) {
        if (comp_of[v] == kUnreachable) {
          comp_of[v] = comps.size();
          stack.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    comps.push_back(std::move(members));
  }

  std::vector<std::size_t> arc_count(comps.size(), 0);
  for (const auto& [u, v] : g.arcs()) ++arc_count[comp_of[u]];

  std::vector<std::size_t> order(comps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // discovery order already follows the smallest member id
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return comps[a].size() > comps[b].size();
  });

  ComponentDecomposition out;
  for (auto i : order) {
    out.sizes.emplace_back(comps[i].size(), arc_count[i]);
    out.components.push_back(std::move(comps[i]));
  }
  out.giant_index = 0;
  return out;
}

Digraph induced_subgraph(const Digraph& g, const std::vector<std::size_t>& nodes) {
  std::vector<std::size_t> new_id(g.node_count(), kUnreachable);
  std::vector<std::size_t> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) new_id[sorted[i]] = i;
  std::vector<Arc> arcs;
  for (const auto& [u, v] : g.arcs()) {
    if (new_id[u] != kUnreachable && new_id[v] != kUnreachable) {
      arcs.emplace_back(new_id[u], new_id[v]);
    }
  }
  return Digraph(sorted.size(), std::move(arcs));
}

Subnetwork giant_subnetwork(const DependencyNetwork& n) {
  if (n.node_count() == 0) throw DegenerateError("giant component of an empty network");
  auto decomposition = components(n.graph());
  const auto& giant = decomposition.components[decomposition.giant_index];

  std::vector<std::size_t> new_id(n.node_count(), kUnreachable);
  for (std::size_t i = 0; i < giant.size(); ++i) new_id[giant[i]] = i;

  std::vector<Node> nodes;
  nodes.reserve(giant.size());
  for (auto old : giant) {
    Node node = n.nodes()[old];
    node.id = new_id[old];
    nodes.push_back(std::move(node));
  }
  std::vector<Link> links;
  for (const auto& link : n.links()) {
    if (new_id[link.source] == kUnreachable) continue;
    Link l = link;
    l.source = new_id[link.source];
    l.target = new_id[link.target];
    links.push_back(std::move(l));
  }
  return {DependencyNetwork(n.matcher(), std::move(nodes), std::move(links), 0), giant};
}

std::vector<std::size_t> bfs_distances(const Digraph& g, std::size_t source, DistanceMode mode) {
  std::vector<std::size_t> dist(g.node_count(), kUnreachable);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    auto next = mode == DistanceMode::directed ? g.successors(u) : g.neighbors(u);
    for (auto v : next) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

DistanceStats distances(const Digraph& g, DistanceMode mode) {
  if (g.node_count() == 0) throw DegenerateError("distances of an empty graph");
  DistanceStats out;
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    auto dist = bfs_distances(g, s, mode);
    for (std::size_t t = 0; t < dist.size(); ++t) {
      if (t == s || dist[t] == kUnreachable) continue;
      ++out.finite_pairs;
      total += dist[t];
      out.diameter = std::max(out.diameter, dist[t]);
    }
  }
  if (out.finite_pairs > 0) {
    out.average = static_cast<double>(total) / static_cast<double>(out.finite_pairs);
  }
  return out;
}

std::uint64_t triangle_count(const Digraph& g) {
  std::uint64_t count = 0;
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    auto nu = g.neighbors(u);
    for (auto v : nu) {
      if (v <= u) continue;
      auto nv = g.neighbors(v);
      // common neighbours w > v
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++count;
          ++a;
          ++b;
        }
      }
    }
  }
  return count;
}

std::uint64_t connected_triples(const Digraph& g) {
  std::uint64_t triples = 0;
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    std::uint64_t d = g.degree(u);
    triples += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  return triples;
}

double transitivity(const Digraph& g) {
  auto triples = connected_triples(g);
  if (triples == 0) return 0.0;
  return 3.0 * static_cast<double>(triangle_count(g)) / static_cast<double>(triples);
}

double average_local_clustering(const Digraph& g) {
  if (g.node_count() == 0) return 0.0;
  double sum = 0.0;
  std::vector<char> mark(g.node_count(), 0);
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    auto nu = g.neighbors(u);
    if (nu.size() < 2) continue;
    for (auto v : nu) mark[v] = 1;
    std::uint64_t links = 0;
    for (auto v : nu) {
      for (auto w : g.neighbors(v)) {
        if (w > v && mark[w]) ++links;
      }
    }
    for (auto v : nu) mark[v] = 0;
    double d = static_cast<double>(nu.size());
    sum += 2.0 * static_cast<double>(links) / (d * (d - 1.0));
  }
  return sum / static_cast<double>(g.node_count());
}

DegreeStats degree_stats(const Digraph& g) {
  DegreeStats s;
  const std::size_t n = g.node_count();
  s.in.resize(n);
  s.out.resize(n);
  s.total.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    s.in[u] = g.in_degree(u);
    s.out[u] = g.out_degree(u);
    s.total[u] = s.in[u] + s.out[u];
    s.max_total = std::max(s.max_total, s.total[u]);
  }
  if (n > 0) {
    double nodes = static_cast<double>(n);
    double arcs = static_cast<double>(g.arc_count());
    s.avg_in = arcs / nodes;
    s.avg_out = arcs / nodes;
    s.avg_total = 2.0 * arcs / nodes;
  }
  return s;
}

double degree_correlation(const Digraph& g) {
  using wide = __int128;
  wide m = 0, s1 = 0, s2 = 0, s3 = 0;
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    for (auto v : g.neighbors(u)) {
      if (v <= u) continue;
      wide j = static_cast<wide>(g.degree(u));
      wide k = static_cast<wide>(g.degree(v));
      ++m;
      s1 += j + k;
      s2 += j * j + k * k;
      s3 += j * k;
    }
  }
  if (m == 0) throw DegenerateError("degree correlation: no links");
  // both orientations: r = (4m*S3 - S1^2) / (2m*S2 - S1^2)
  wide num = 4 * m * s3 - s1 * s1;
  wide den = 2 * m * s2 - s1 * s1;
  if (den == 0) throw DegenerateError("degree correlation: zero degree variance");
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

double directed_degree_correlation(const Digraph& g) {
  const auto& arcs = g.arcs();
  if (arcs.empty()) throw DegenerateError("directed degree correlation: no links");
  long double mx = 0, my = 0;
  for (const auto& [u, v] : arcs) {
    mx += g.out_degree(u);
    my += g.in_degree(v);
  }
  const long double count = static_cast<long double>(arcs.size());
  mx /= count;
  my /= count;
  long double sxy = 0, sxx = 0, syy = 0;
  for (const auto& [u, v] : arcs) {
    long double dx = g.out_degree(u) - mx;
    long double dy = g.in_degree(v) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) {
    throw DegenerateError("directed degree correlation: zero degree variance");
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

Digraph erdos_renyi_gnm(std::size_t nodes, std::size_t links, std::uint64_t seed) {
  const std::uint64_t max_links =
      nodes < 2 ? 0 : static_cast<std::uint64_t>(nodes) * (nodes - 1) / 2;
  if (links > max_links) {
    throw InputError("G(n,m): " + std::to_string(links) + " links exceed the " +
                     std::to_string(max_links) + " possible on " + std::to_string(nodes) +
                     " nodes");
  }
  auto rng = derive_rng(seed, 0);
  // draw the smaller of the edge set and its complement
  const bool complement = links > max_links / 2;
  const std::uint64_t draws = complement ? max_links - links : links;
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(draws * 2);
  while (chosen.size() < draws) {
    std::uint64_t u = uniform_below(rng, nodes);
    std::uint64_t v = uniform_below(rng, nodes - 1);
    if (v >= u) ++v;
    if (v < u) std::swap(u, v);
    chosen.insert(u * nodes + v);
  }
  std::vector<Arc> edges;
  edges.reserve(links);
  if (complement) {
    for (std::size_t u = 0; u < nodes; ++u) {
      for (std::size_t v = u + 1; v < nodes; ++v) {
        if (!chosen.count(static_cast<std::uint64_t>(u) * nodes + v)) edges.emplace_back(u, v);
      }
    }
  } else {
    for (auto code : chosen) edges.emplace_back(code / nodes, code % nodes);
  }
  return Digraph::undirected(nodes, edges);
}

ErBaseline er_baseline(std::size_t nodes, std::size_t links, std::size_t samples,
                       std::uint64_t seed) {
  if (samples < 1) throw InputError("ER baseline needs at least one sample");
  if (nodes < 2) throw InputError("ER baseline needs at least two nodes");
  ErBaseline out;
  out.samples = samples;
  const double n = static_cast<double>(nodes);
  const double k = 2.0 * static_cast<double>(links) / n;
  out.analytic_transitivity = k / n;
  out.analytic_distance = k > 1.0 ? std::log(n) / std::log(k) : 0.0;

  std::vector<double> dist(samples), trans(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    Digraph g = erdos_renyi_gnm(nodes, links, splitmix64(seed) + i);
    auto decomposition = components(g);
    Digraph giant = induced_subgraph(g, decomposition.components[decomposition.giant_index]);
    dist[i] = distances(giant, DistanceMode::undirected).average.value_or(0.0);
    trans[i] = transitivity(giant);
  }
  auto mean_sd = [&](const std::vector<double>& xs, double& mean, double& sd) {
    mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
  };
  mean_sd(dist, out.avg_distance_mean, out.avg_distance_sd);
  mean_sd(trans, out.transitivity_mean, out.transitivity_sd);
  return out;
}

}  // namespace depnet
