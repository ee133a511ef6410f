// depnet: extract and analyse parameter dependency networks.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "depnet/collection.hpp"
#include "depnet/community.hpp"
#include "depnet/error.hpp"
#include "depnet/network.hpp"
#include "depnet/powerlaw.hpp"
#include "depnet/report.hpp"
#include "depnet/topology.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInput = 2;
constexpr int kDegenerate = 3;

using depnet::DependencyNetwork;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw depnet::Error("cannot write " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw depnet::InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw depnet::InputError(path + ": " + e.what());
  }
}

struct ExtractArgs {
  std::string collection, format = "canonical", matcher = "syntactic-equal", out;
  bool case_fold = false;
};

int run_extract(const ExtractArgs& a) {
  depnet::ServiceCollection c;
  if (a.format == "canonical") {
    c = depnet::load_canonical(a.collection);
  } else {
    c = depnet::load_sawsdl(a.collection,
                            [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; });
  }
  auto net = depnet::build_network(c, depnet::parse_matcher_kind(a.matcher), {a.case_fold});
  auto format = depnet::export_format_for(a.out);
  if (format == depnet::ExportFormat::graphml) {
    depnet::save_network(net, a.out);
  } else {
    write_output(a.out, depnet::export_network(net, format));
  }
  auto s = depnet::network_summary(net);
  std::cerr << "extracted " << s.nodes << " nodes, " << s.links << " links from "
            << c.instance_count() << " parameter instances (" << s.isolated_nodes
            << " isolated, " << s.self_loop_count << " self-dependencies dropped)\n";
  return kOk;
}

struct AnalyzeArgs {
  std::string net, report = "json", label, output;
  depnet::AnalysisConfig config;
  bool extras = false;
};

// Variants that are not part of the report, printed to stderr on request.
void print_extras(const depnet::Digraph& giant) {
  std::cerr << "average local clustering: " << depnet::average_local_clustering(giant) << '\n';
  std::cerr << "directed degree correlation: ";
  try {
    std::cerr << depnet::directed_degree_correlation(giant) << '\n';
  } catch (const depnet::DegenerateError&) {
    std::cerr << "undefined\n";
  }
}

int run_analyze(const AnalyzeArgs& a) {
  auto net = depnet::load_network(a.net);
  auto analysis = depnet::analyze_full(net, a.config, a.label);
  write_output(a.output, a.report == "json" ? depnet::to_json(analysis.report).dump(2) + "\n"
                                            : depnet::render_text(analysis.report));
  if (a.extras) print_extras(analysis.giant.network.graph());
  return kOk;
}

struct CompareArgs {
  std::string left, right, report = "json", output;
};

int run_compare(const CompareArgs& a) {
  auto left = depnet::report_from_json(read_json_file(a.left));
  auto right = depnet::report_from_json(read_json_file(a.right));
  auto c = depnet::compare(left, right);
  write_output(a.output, a.report == "json" ? depnet::to_json(c).dump(2) + "\n"
                                            : depnet::render_text(c));
  return kOk;
}

struct CommunitiesArgs {
  std::string net, out = "csv", output, dendrogram;
  std::size_t t = 4;
};

int run_communities(const CommunitiesArgs& a) {
  auto net = depnet::load_network(a.net);
  auto giant = depnet::giant_subnetwork(net);
  auto result = depnet::walktrap(giant.network.graph(), a.t);
  std::vector<std::string> labels;
  for (const auto& node : giant.network.nodes()) labels.push_back(node.label);
  std::ostringstream csv;
  depnet::write_partition_csv(result.partition, giant.original_id, labels, csv);
  write_output(a.output, csv.str());
  if (!a.dendrogram.empty()) {
    std::ostringstream merges;
    depnet::write_dendrogram_csv(result.dendrogram, merges);
    write_output(a.dendrogram, merges.str());
  }
  std::cerr << result.partition.community_count << " communities, modularity "
            << result.partition.modularity << '\n';
  return kOk;
}

struct DegreeDistArgs {
  std::string net, which = "all", out = "csv", output;
  bool whole = false;
};

int run_degree_dist(const DegreeDistArgs& a) {
  auto net = depnet::load_network(a.net);
  DependencyNetwork target = a.whole ? net : depnet::giant_subnetwork(net).network;
  auto stats = depnet::degree_stats(target.graph());
  const auto& seq = a.which == "in" ? stats.in : a.which == "out" ? stats.out : stats.total;
  std::vector<std::uint64_t> values(seq.begin(), seq.end());
  std::ostringstream csv;
  depnet::write_degree_distribution_csv(depnet::degree_distribution(values), csv);
  write_output(a.output, csv.str());
  return kOk;
}

struct ExportArgs {
  std::string net, format = "edgelist", output;
};

int run_export(const ExportArgs& a) {
  auto net = depnet::load_network(a.net);
  write_output(a.output, depnet::export_network(net, depnet::parse_export_format(a.format)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameter dependency networks of web-service collections"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Build a dependency network from a collection");
  extract->add_option("--collection", ex.collection, "Collection file or directory")->required();
  extract->add_option("--format", ex.format, "Collection format")
      ->check(CLI::IsMember({"canonical", "sawsdl"}));
  extract->add_option("--matcher", ex.matcher, "Matching function")
      ->check(CLI::IsMember({"syntactic-equal", "semantic-exact"}));
  extract->add_option("--out", ex.out, "Network file (.graphml, .dot, .tsv)")->required();
  extract->add_flag("--case-fold", ex.case_fold, "Compare parameter names case-insensitively");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Topological profile of a network");
  analyze->add_option("net-file", an.net)->required();
  analyze->add_option("--report", an.report)->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("--er-samples", an.config.er_samples, "Random-graph samples");
  analyze->add_option("--bootstrap", an.config.bootstrap_n, "Power-law bootstrap replicates");
  analyze->add_option("--walktrap-t", an.config.walktrap_t, "Walktrap walk length")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--seed", an.config.seed);
  analyze->add_option("--label", an.label, "Column label for the report");
  analyze->add_option("-o,--output", an.output, "Output file (default stdout)");
  analyze->add_flag("--extras", an.extras,
                    "Also print average local clustering and directed degree correlation");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Compare two analysis reports");
  compare->add_option("report-a", cmp.left)->required();
  compare->add_option("report-b", cmp.right)->required();
  compare->add_option("--report", cmp.report)->check(CLI::IsMember({"json", "text"}));
  compare->add_option("-o,--output", cmp.output, "Output file (default stdout)");

  CommunitiesArgs co;
  auto* communities = app.add_subcommand("communities", "Walktrap partition of the giant component");
  communities->add_option("net-file", co.net)->required();
  communities->add_option("--t", co.t, "Walk length")->check(CLI::PositiveNumber);
  communities->add_option("--out", co.out, "Output format")->check(CLI::IsMember({"csv"}));
  communities->add_option("--dendrogram", co.dendrogram, "Also write the merge list here");
  communities->add_option("-o,--output", co.output, "Output file (default stdout)");

  DegreeDistArgs dd;
  auto* degree = app.add_subcommand("degree-dist", "Degree distribution of the giant component");
  degree->add_option("net-file", dd.net)->required();
  degree->add_option("--which", dd.which)->check(CLI::IsMember({"in", "out", "all"}));
  degree->add_option("--out", dd.out, "Output format")->check(CLI::IsMember({"csv"}));
  degree->add_flag("--whole", dd.whole, "Use the whole network instead of the giant component");
  degree->add_option("-o,--output", dd.output, "Output file (default stdout)");

  ExportArgs xa;
  auto* exp = app.add_subcommand("export", "Re-export a network file");
  exp->add_option("net-file", xa.net)->required();
  exp->add_option("--format", xa.format)->check(CLI::IsMember({"graphml", "dot", "edgelist"}));
  exp->add_option("-o,--output", xa.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*extract) return run_extract(ex);
    if (*analyze) return run_analyze(an);
    if (*compare) return run_compare(cmp);
    if (*communities) return run_communities(co);
    if (*degree) return run_degree_dist(dd);
    if (*exp) return run_export(xa);
  } catch (const depnet::DegenerateError& e) {
    std::cerr << "error: degenerate analysis: " << e.what() << '\n';
    return kDegenerate;
  } catch (const depnet::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}
