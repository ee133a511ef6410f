#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace depnet {

using Arc = std::pair<std::size_t, std::size_t>;

// Directed simple graph in compressed adjacency form, plus its undirected
// simple projection (reciprocal arcs collapse to one edge). Node ids are
// 0..node_count()-1.
class Digraph {
public:
  Digraph() = default;

  // Throws std::invalid_argument on self-loops, duplicate arcs or bad ids.
  Digraph(std::size_t node_count, std::vector<Arc> arcs);

  // Undirected simple graph; every edge is stored as one arc (u < v).
  static Digraph undirected(std::size_t node_count, const std::vector<Arc>& edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::size_t edge_count() const noexcept { return nbr_.size() / 2; }

  // Sorted by (source, target).
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  std::span<const std::size_t> successors(std::size_t u) const {
    return {out_.data() + out_off_[u], out_off_[u + 1] - out_off_[u]};
  }
  std::span<const std::size_t> predecessors(std::size_t u) const {
    return {in_.data() + in_off_[u], in_off_[u + 1] - in_off_[u]};
  }
  // Undirected projection, sorted ascending.
  std::span<const std::size_t> neighbors(std::size_t u) const {
    return {nbr_.data() + nbr_off_[u], nbr_off_[u + 1] - nbr_off_[u]};
  }

  std::size_t out_degree(std::size_t u) const { return out_off_[u + 1] - out_off_[u]; }
  std::size_t in_degree(std::size_t u) const { return in_off_[u + 1] - in_off_[u]; }
  std::size_t degree(std::size_t u) const { return nbr_off_[u + 1] - nbr_off_[u]; }

  // Undirected projection edges (u < v), sorted.
  std::vector<Arc> edges() const;

private:
  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_off_{0}, out_;
  std::vector<std::size_t> in_off_{0}, in_;
  std::vector<std::size_t> nbr_off_{0}, nbr_;
};

}  // namespace depnet
