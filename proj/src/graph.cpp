#include "depnet/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace depnet {

namespace {

void fill_csr(std::size_t n, const std::vector<Arc>& arcs, bool reverse,
              std::vector<std::size_t>& off, std::vector<std::size_t>& adj) {
  off.assign(n + 1, 0);
  for (const auto& [u, v] : arcs) ++off[(reverse ? v : u) + 1];
  for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
  adj.assign(arcs.size(), 0);
  std::vector<std::size_t> pos(off.begin(), off.end() - 1);
  for (const auto& [u, v] : arcs) {
    if (reverse) {
      adj[pos[v]++] = u;
    } else {
      adj[pos[u]++] = v;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adj.begin() + static_cast<std::ptrdiff_t>(off[i]),
              adj.begin() + static_cast<std::ptrdiff_t>(off[i + 1]));
  }
}

}  // namespace

Digraph::Digraph(std::size_t node_count, std::vector<Arc> arcs)
    : n_(node_count), arcs_(std::move(arcs)) {
  for (const auto& [u, v] : arcs_) {
    if (u >= n_ || v >= n_) {
      throw std::invalid_argument("arc endpoint out of range: " + std::to_string(u) +
                                  " -> " + std::to_string(v));
    }
    if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
  }
  std::sort(arcs_.begin(), arcs_.end());
  if (std::adjacent_find(arcs_.begin(), arcs_.end()) != arcs_.end()) {
    throw std::invalid_argument("duplicate arc");
  }
  fill_csr(n_, arcs_, false, out_off_, out_);
  fill_csr(n_, arcs_, true, in_off_, in_);

  std::vector<Arc> both;
  both.reserve(2 * arcs_.size());
  for (const auto& [u, v] : arcs_) {
    both.emplace_back(u, v);
    both.emplace_back(v, u);
  }
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());
  fill_csr(n_, both, false, nbr_off_, nbr_);
}

Digraph Digraph::undirected(std::size_t node_count, const std::vector<Arc>& edges) {
  std::vector<Arc> arcs;
  arcs.reserve(edges.size());
  for (auto [u, v] : edges) arcs.emplace_back(std::min(u, v), std::max(u, v));
  return Digraph(node_count, std::move(arcs));
}

std::vector<Arc> Digraph::edges() const {
  std::vector<Arc> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < n_; ++u) {
    for (auto v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

}  // namespace depnet
