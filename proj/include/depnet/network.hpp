#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "depnet/collection.hpp"
#include "depnet/graph.hpp"
#include "depnet/matching.hpp"

namespace depnet {

// One archetype as a network node. Members are copies of the grouped
// instances; they are empty for networks read without a membership sidecar.
struct Node {
  std::size_t id = 0;
  std::string label;
  std::string key;
  std::size_t instance_count = 0;
  std::vector<ParameterInstance> members;
};

struct Link {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t weight = 1;
  // One operation id per contributing (input, output) pair; may be empty when
  // read from a GraphML file without sidecar.
  std::vector<std::string> witness_operations;
};

// Directed parameter dependency network: a link source -> target means some
// operation consumes the source archetype and produces the target archetype.
class DependencyNetwork {
public:
  DependencyNetwork() = default;

  // Validates node ids (dense, in order), link endpoints, simplicity and
  // weights; links are sorted by (source, target). Throws SchemaError.
  DependencyNetwork(MatcherKind matcher, std::vector<Node> nodes, std::vector<Link> links,
                    std::size_t self_loop_count);

  MatcherKind matcher() const noexcept { return matcher_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Link>& links() const noexcept { return links_; }
  std::size_t self_loop_count() const noexcept { return self_loops_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t link_count() const noexcept { return links_.size(); }

  // Unweighted simple view used by every metric.
  const Digraph& graph() const noexcept { return graph_; }

private:
  MatcherKind matcher_ = MatcherKind::syntactic_equal;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::size_t self_loops_ = 0;
  Digraph graph_;
};

DependencyNetwork build_network(const ServiceCollection& c, MatcherKind kind,
                                NameNormalization policy = {});

struct NetworkSummary {
  std::size_t nodes = 0;
  std::size_t links = 0;
  std::size_t isolated_nodes = 0;
  double isolated_fraction = 0.0;
  std::size_t self_loop_count = 0;
};

NetworkSummary network_summary(const DependencyNetwork& n);

enum class ExportFormat { graphml, dot, edgelist };

ExportFormat parse_export_format(std::string_view text);
// .graphml / .dot / .tsv, .edgelist, .txt
ExportFormat export_format_for(const std::filesystem::path& path);

void export_network(const DependencyNetwork& n, ExportFormat format, std::ostream& out);
std::string export_network(const DependencyNetwork& n, ExportFormat format);

// Membership sidecar: archetype members and link witnesses as JSON.
std::string write_membership(const DependencyNetwork& n);

// Reads a GraphML document as written by export_network. When `membership`
// is non-empty it is the sidecar JSON and must agree with the GraphML.
DependencyNetwork read_graphml(std::string_view graphml, std::string_view membership = {});

// Network file = GraphML at `path` + sidecar at sidecar_path(path).
std::filesystem::path sidecar_path(const std::filesystem::path& graphml_path);
void save_network(const DependencyNetwork& n, const std::filesystem::path& path);
// Sidecar optional; throws InputError when the GraphML file cannot be read.
DependencyNetwork load_network(const std::filesystem::path& path);

}  // namespace depnet
