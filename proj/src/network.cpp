#include "depnet/network.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "depnet/error.hpp"

namespace depnet {

DependencyNetwork::DependencyNetwork(MatcherKind matcher, std::vector<Node> nodes,
                                     std::vector<Link> links, std::size_t self_loop_count)
    : matcher_(matcher), nodes_(std::move(nodes)), links_(std::move(links)),
      self_loops_(self_loop_count) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id != i) throw SchemaError("node ids must be 0..n-1 in order");
  }
  std::sort(links_.begin(), links_.end(), [](const Link& a, const Link& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  std::vector<Arc> arcs;
  arcs.reserve(links_.size());
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    if (l.source >= nodes_.size() || l.target >= nodes_.size()) {
      throw SchemaError("link endpoint is not a node id");
    }
    if (l.source == l.target) throw SchemaError("self-loop in link set");
    if (l.weight < 1) throw SchemaError("link weight must be >= 1");
    if (i > 0 && links_[i - 1].source == l.source && links_[i - 1].target == l.target) {
      throw SchemaError("duplicate link " + std::to_string(l.source) + " -> " +
                        std::to_string(l.target));
    }
    arcs.emplace_back(l.source, l.target);
  }
  graph_ = Digraph(nodes_.size(), std::move(arcs));
}

DependencyNetwork build_network(const ServiceCollection& c, MatcherKind kind,
                                NameNormalization policy) {
  const auto instances = c.instances();
  ArchetypeSet set = build_archetypes(c, kind, policy);

  std::vector<Node> nodes;
  nodes.reserve(set.archetypes.size());
  for (const auto& a : set.archetypes) {
    Node node{a.id, a.label, a.key, a.instance_count, {}};
    node.members.reserve(a.members.size());
    for (auto m : a.members) node.members.push_back(*instances[m]);
    nodes.push_back(std::move(node));
  }

  // instances() lists each operation's inputs then outputs, so a running
  // offset recovers the flat index of every parameter.
  std::map<Arc, Link> links;
  std::size_t self_loops = 0;
  std::size_t offset = 0;
  for (const auto& service : c.services()) {
    for (const auto& op : service.operations) {
      const std::size_t n_in = op.inputs.size();
      for (std::size_t i = 0; i < n_in; ++i) {
        for (std::size_t o = 0; o < op.outputs.size(); ++o) {
          std::size_t src = set.archetype_of[offset + i];
          std::size_t dst = set.archetype_of[offset + n_in + o];
          if (src == dst) {
            ++self_loops;
            continue;
          }
          auto [it, fresh] = links.try_emplace({src, dst});
          Link& link = it->second;
          if (fresh) {
            link.source = src;
            link.target = dst;
            link.weight = 0;
          }
          ++link.weight;
          link.witness_operations.push_back(op.id);
        }
      }
      offset += n_in + op.outputs.size();
    }
  }

  std::vector<Link> out;
  out.reserve(links.size());
  for (auto& [arc, link] : links) out.push_back(std::move(link));
  return DependencyNetwork(kind, std::move(nodes), std::move(out), self_loops);
}

NetworkSummary network_summary(const DependencyNetwork& n) {
  NetworkSummary s;
  s.nodes = n.node_count();
  s.links = n.link_count();
  s.self_loop_count = n.self_loop_count();
  const Digraph& g = n.graph();
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    if (g.degree(u) == 0) ++s.isolated_nodes;
  }
  s.isolated_fraction =
      s.nodes == 0 ? 0.0 : static_cast<double>(s.isolated_nodes) / static_cast<double>(s.nodes);
  return s;
}

}  // namespace depnet
