#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "depnet/community.hpp"
#include "depnet/network.hpp"
#include "depnet/powerlaw.hpp"
#include "depnet/topology.hpp"

namespace depnet {

struct AnalysisConfig {
  std::size_t er_samples = 100;
  std::size_t bootstrap_n = 1000;
  std::size_t walktrap_t = 4;
  std::uint64_t seed = 1;
};

struct PowerLawTriple {
  std::optional<PowerLawFit> in, out, all;
};

// Profile of one network. Everything from `nodes` down is measured on the
// giant component; `network`, `component_count` and the giant fractions
// describe the whole network. Undefined metrics are empty and listed in
// `degenerate`.
struct MetricsReport {
  std::string label;
  std::string matcher;
  AnalysisConfig config;

  NetworkSummary network;
  std::size_t component_count = 0;
  double giant_node_fraction = 0.0;  // over non-isolated nodes
  double giant_link_fraction = 0.0;

  std::size_t nodes = 0;
  std::size_t links = 0;
  std::optional<double> avg_distance_directed;
  std::optional<double> avg_distance_undirected;
  std::size_t directed_finite_pairs = 0;
  std::size_t diameter_directed = 0;
  std::size_t diameter_undirected = 0;
  double transitivity = 0.0;
  std::optional<double> degree_correlation;
  double avg_in_degree = 0.0;
  double avg_out_degree = 0.0;
  double avg_total_degree = 0.0;
  std::size_t max_total_degree = 0;
  std::optional<double> er_avg_distance;
  std::optional<double> er_transitivity;
  std::optional<ErBaseline> er;
  PowerLawTriple power_law;
  std::size_t communities = 0;
  std::optional<double> modularity;

  std::vector<std::string> degenerate;
};

// Giant component plus every profile metric. Throws DegenerateError naming
// the metric when the network is empty.
MetricsReport analyze(const DependencyNetwork& n, const AnalysisConfig& config,
                      std::string label = {});

// Same pipeline, also returning the giant component and its partition.
struct Analysis {
  MetricsReport report;
  Subnetwork giant;
  WalktrapResult communities;
};
Analysis analyze_full(const DependencyNetwork& n, const AnalysisConfig& config,
                      std::string label = {});

struct ComparisonReport {
  MetricsReport left;
  MetricsReport right;
  // right - left per numeric metric; empty when either side is undefined
  std::map<std::string, std::optional<double>> deltas;
  bool smaller_semantic_diameter = false;
  bool larger_semantic_giant_fraction = false;
  bool fewer_semantic_nodes = false;
};

ComparisonReport compare(const MetricsReport& a, const MetricsReport& b);

// Named numeric metrics in display order, as used for deltas.
std::vector<std::pair<std::string, std::optional<double>>> numeric_metrics(const MetricsReport& r);

nlohmann::json to_json(const MetricsReport& r);
MetricsReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ComparisonReport& c);

// Two-decimal property table, one row per metric.
std::string render_text(const MetricsReport& r);
std::string render_text(const ComparisonReport& c);

}  // namespace depnet
