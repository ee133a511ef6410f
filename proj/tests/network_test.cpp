#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "depnet/error.hpp"
#include "depnet/network.hpp"
#include "test_support.hpp"

using namespace depnet;
using testing_support::OpSpec;

namespace {

std::set<std::pair<std::string, std::string>> named_links(const DependencyNetwork& n) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& l : n.links()) out.emplace(n.nodes()[l.source].label, n.nodes()[l.target].label);
  return out;
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(BuildNetwork, SecondOperationAlone) {
  auto c = testing_support::make_collection({{OpSpec{{{"c"}, {"d"}}, {{"e"}, {"f"}}}}});
  auto n = build_network(c, MatcherKind::syntactic_equal);
  std::set<std::pair<std::string, std::string>> k2 = {{"c", "e"}, {"c", "f"}, {"d", "e"}, {"d", "f"}};
  EXPECT_EQ(named_links(n), k2);
  EXPECT_EQ(export_network(n, ExportFormat::edgelist), "0\t2\t1\n0\t3\t1\n1\t2\t1\n1\t3\t1\n");
  EXPECT_EQ(line_count(export_network(n, ExportFormat::edgelist)), 4u);
}

TEST(BuildNetwork, TwoOperationExample) {
  auto n = build_network(testing_support::two_operation_collection(), MatcherKind::syntactic_equal);
  EXPECT_EQ(n.node_count(), 6u);
  EXPECT_EQ(n.link_count(), 10u);
  std::set<std::pair<std::string, std::string>> expected;
  for (auto in : {"a", "b"})
    for (auto out : {"c", "d", "e"}) expected.emplace(in, out);
  for (auto in : {"c", "d"})
    for (auto out : {"e", "f"}) expected.emplace(in, out);
  EXPECT_EQ(named_links(n), expected);
  EXPECT_EQ(n.self_loop_count(), 0u);
  auto s = network_summary(n);
  EXPECT_EQ(s.isolated_nodes, 0u);
  EXPECT_EQ(s.nodes, 6u);
  EXPECT_EQ(s.links, 10u);
}

TEST(BuildNetwork, SelfDependencyIsCounted) {
  auto c = testing_support::make_collection({{OpSpec{{{"x"}}, {{"x"}}}}});
  auto n = build_network(c, MatcherKind::syntactic_equal);
  EXPECT_EQ(n.node_count(), 1u);
  EXPECT_EQ(n.link_count(), 0u);
  EXPECT_EQ(n.self_loop_count(), 1u);
  EXPECT_EQ(network_summary(n).self_loop_count, 1u);
}

TEST(BuildNetwork, OneSidedOperationGivesIsolatedNode) {
  auto c = testing_support::make_collection({{OpSpec{{{"x"}}, {}}, OpSpec{{{"a"}}, {{"b"}}}}});
  auto n = build_network(c, MatcherKind::syntactic_equal);
  EXPECT_EQ(n.node_count(), 3u);
  auto s = network_summary(n);
  EXPECT_EQ(s.isolated_nodes, 1u);
  EXPECT_DOUBLE_EQ(s.isolated_fraction, 1.0 / 3.0);
}

TEST(BuildNetwork, EmptyCollection) {
  auto n = build_network(ServiceCollection{}, MatcherKind::semantic_exact);
  auto s = network_summary(n);
  EXPECT_EQ(s.nodes, 0u);
  EXPECT_EQ(s.links, 0u);
  EXPECT_EQ(s.isolated_nodes, 0u);
  EXPECT_EQ(s.isolated_fraction, 0.0);
  EXPECT_EQ(export_network(n, ExportFormat::edgelist), "");
  auto g = export_network(n, ExportFormat::graphml);
  EXPECT_NE(g.find("<graphml"), std::string::npos);
  auto back = read_graphml(g);
  EXPECT_EQ(back.node_count(), 0u);
}

TEST(BuildNetwork, WeightsAndWitnesses) {
  auto c = testing_support::make_collection(
      {{OpSpec{{{"a"}, {"a"}}, {{"b"}}}, OpSpec{{{"a"}}, {{"b"}, {"c"}}}}});
  auto n = build_network(c, MatcherKind::syntactic_equal);
  ASSERT_EQ(n.link_count(), 2u);
  const auto& ab = n.links()[0];
  EXPECT_EQ(ab.weight, 3u);
  EXPECT_EQ(ab.witness_operations, (std::vector<std::string>{"s0.0", "s0.0", "s0.1"}));
  EXPECT_EQ(n.links()[1].weight, 1u);
}

TEST(BuildNetwork, DuplicatedServiceDoublesWeightsOnly) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = testing_support::random_collection(rng, 5, 3, 3, 10);
    auto services = c.services();
    auto copy = services[0];
    copy.id = "dup";
    for (auto& op : copy.operations) op.id = "dup." + op.id;
    services.push_back(copy);
    auto doubled = ServiceCollection::make(services, SourceFormat::canonical);
    for (auto kind : {MatcherKind::syntactic_equal}) {
      auto a = build_network(c, kind);
      auto b = build_network(doubled, kind);
      ASSERT_EQ(a.link_count(), b.link_count());
      std::size_t wa = 0, wb = 0;
      for (std::size_t i = 0; i < a.link_count(); ++i) {
        EXPECT_EQ(a.links()[i].source, b.links()[i].source);
        EXPECT_EQ(a.links()[i].target, b.links()[i].target);
        wa += a.links()[i].weight;
        wb += b.links()[i].weight;
      }
      EXPECT_GE(wb, wa);
    }
  }
}

TEST(BuildNetwork, InvariantsAndWitnessSoundness) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto c = testing_support::random_collection(rng, 10, 4, 5, 20);
    ASSERT_LE(c.instance_count(), 500u);
    for (auto kind : {MatcherKind::syntactic_equal, MatcherKind::semantic_exact}) {
      auto n = build_network(c, kind);
      auto arch = build_archetypes(c, kind);
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& l : n.links()) {
        EXPECT_NE(l.source, l.target);
        EXPECT_LT(l.source, n.node_count());
        EXPECT_LT(l.target, n.node_count());
        EXPECT_TRUE(seen.emplace(l.source, l.target).second);
        EXPECT_GE(l.weight, 1u);
        EXPECT_EQ(l.witness_operations.size(), l.weight);
        // brute-force rescan for every witness
        for (const auto& w : l.witness_operations) {
          bool found = false;
          std::size_t flat = 0;
          for (const auto& s : c.services()) {
            for (const auto& op : s.operations) {
              std::size_t in0 = flat, out0 = flat + op.inputs.size();
              flat += op.inputs.size() + op.outputs.size();
              if (op.id != w) continue;
              for (std::size_t i = in0; i < out0; ++i)
                for (std::size_t o = out0; o < flat; ++o)
                  if (arch.archetype_of[i] == l.source && arch.archetype_of[o] == l.target) found = true;
            }
          }
          EXPECT_TRUE(found) << w;
        }
      }
      // every (input, output) pair is represented by a link or a self-loop
      std::size_t pairs = 0, flat = 0, loops = 0;
      for (const auto& s : c.services()) {
        for (const auto& op : s.operations) {
          std::size_t in0 = flat, out0 = flat + op.inputs.size();
          flat += op.inputs.size() + op.outputs.size();
          for (std::size_t i = in0; i < out0; ++i)
            for (std::size_t o = out0; o < flat; ++o) {
              auto a = arch.archetype_of[i], b = arch.archetype_of[o];
              if (a == b) {
                ++loops;
              } else {
                ++pairs;
                EXPECT_TRUE(seen.count({a, b}));
              }
            }
        }
      }
      std::size_t total_weight = 0;
      for (const auto& l : n.links()) total_weight += l.weight;
      EXPECT_EQ(total_weight, pairs);
      EXPECT_EQ(n.self_loop_count(), loops);
    }
  }
}

TEST(BuildNetwork, DeterministicEdgeList) {
  std::mt19937_64 a(21), b(21);
  auto ca = testing_support::random_collection(a, 8, 3, 4, 12);
  auto cb = testing_support::random_collection(b, 8, 3, 4, 12);
  for (auto kind : {MatcherKind::syntactic_equal, MatcherKind::semantic_exact}) {
    EXPECT_EQ(export_network(build_network(ca, kind), ExportFormat::edgelist),
              export_network(build_network(cb, kind), ExportFormat::edgelist));
  }
}

TEST(NetworkValidation, RejectsBadLinks) {
  std::vector<Node> nodes(2);
  nodes[0].id = 0;
  nodes[1].id = 1;
  auto make = [&](std::vector<Link> links) {
    return DependencyNetwork(MatcherKind::syntactic_equal, nodes, std::move(links), 0);
  };
  EXPECT_NO_THROW(make({{0, 1, 1, {}}}));
  EXPECT_THROW(make({{0, 0, 1, {}}}), SchemaError);
  EXPECT_THROW(make({{0, 2, 1, {}}}), SchemaError);
  EXPECT_THROW(make({{0, 1, 1, {}}, {0, 1, 1, {}}}), SchemaError);
  EXPECT_THROW(make({{0, 1, 0, {}}}), SchemaError);
}

TEST(Export, TwoNodeEdgeList) {
  auto c = testing_support::make_collection({{OpSpec{{{"p"}}, {{"q"}}}}});
  auto n = build_network(c, MatcherKind::syntactic_equal);
  EXPECT_EQ(export_network(n, ExportFormat::edgelist), "0\t1\t1\n");
}

TEST(Export, DotUsesDirectedEdges) {
  auto n = build_network(testing_support::two_operation_collection(), MatcherKind::syntactic_equal);
  auto dot = export_network(n, ExportFormat::dot);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(dot.begin(), dot.end(), '>')), 10u);
  EXPECT_NE(dot.find("0 -> 2"), std::string::npos);
}

TEST(Export, GraphmlCarriesAttributes) {
  auto n = build_network(testing_support::two_operation_collection(), MatcherKind::syntactic_equal);
  auto g = export_network(n, ExportFormat::graphml);
  EXPECT_NE(g.find("attr.name=\"label\""), std::string::npos);
  EXPECT_NE(g.find("attr.name=\"instance_count\""), std::string::npos);
  EXPECT_NE(g.find("attr.name=\"weight\""), std::string::npos);
  EXPECT_NE(g.find("edgedefault=\"directed\""), std::string::npos);
}

TEST(Export, FormatNames) {
  EXPECT_EQ(parse_export_format("graphml"), ExportFormat::graphml);
  EXPECT_EQ(parse_export_format("dot"), ExportFormat::dot);
  EXPECT_EQ(parse_export_format("edgelist"), ExportFormat::edgelist);
  EXPECT_THROW(parse_export_format("png"), InputError);
  EXPECT_EQ(export_format_for("x.graphml"), ExportFormat::graphml);
  EXPECT_EQ(export_format_for("x.gv"), ExportFormat::dot);
  EXPECT_EQ(export_format_for("x.tsv"), ExportFormat::edgelist);
  EXPECT_THROW(export_format_for("x.png"), InputError);
}

TEST(NetworkFile, RoundTripWithSidecar) {
  auto c = load_sawsdl(testing_support::data_path("sawsdl"));
  for (auto kind : {MatcherKind::syntactic_equal, MatcherKind::semantic_exact}) {
    auto n = build_network(c, kind);
    auto dir = testing_support::scratch_dir("roundtrip");
    auto path = dir / "net.graphml";
    save_network(n, path);
    ASSERT_TRUE(std::filesystem::exists(sidecar_path(path)));
    auto back = load_network(path);
    EXPECT_EQ(back.matcher(), kind);
    EXPECT_EQ(back.self_loop_count(), n.self_loop_count());
    ASSERT_EQ(back.node_count(), n.node_count());
    for (std::size_t i = 0; i < n.node_count(); ++i) {
      EXPECT_EQ(back.nodes()[i].label, n.nodes()[i].label);
      EXPECT_EQ(back.nodes()[i].key, n.nodes()[i].key);
      EXPECT_EQ(back.nodes()[i].instance_count, n.nodes()[i].instance_count);
      EXPECT_EQ(back.nodes()[i].members, n.nodes()[i].members);
    }
    ASSERT_EQ(back.link_count(), n.link_count());
    for (std::size_t i = 0; i < n.link_count(); ++i) {
      EXPECT_EQ(back.links()[i].source, n.links()[i].source);
      EXPECT_EQ(back.links()[i].target, n.links()[i].target);
      EXPECT_EQ(back.links()[i].weight, n.links()[i].weight);
      EXPECT_EQ(back.links()[i].witness_operations, n.links()[i].witness_operations);
    }
    for (auto f : {ExportFormat::graphml, ExportFormat::edgelist, ExportFormat::dot}) {
      EXPECT_EQ(export_network(back, f), export_network(n, f));
    }
    EXPECT_EQ(write_membership(back), write_membership(n));
  }
}

TEST(NetworkFile, GraphmlWithoutSidecar) {
  auto n = build_network(testing_support::two_operation_collection(), MatcherKind::syntactic_equal);
  auto back = read_graphml(export_network(n, ExportFormat::graphml));
  EXPECT_EQ(back.node_count(), 6u);
  EXPECT_EQ(back.link_count(), 10u);
  EXPECT_TRUE(back.nodes()[0].members.empty());
  EXPECT_EQ(back.nodes()[2].instance_count, 2u);
}

TEST(NetworkFile, XmlSpecialCharactersSurvive) {
  auto c = testing_support::make_collection(
      {{OpSpec{{{"a<b&\"c\"", "http://o#x?a=1&b=2"}}, {{"d'>"}}}}});
  for (auto kind : {MatcherKind::syntactic_equal, MatcherKind::semantic_exact}) {
    auto n = build_network(c, kind);
    auto back = read_graphml(export_network(n, ExportFormat::graphml), write_membership(n));
    EXPECT_EQ(back.nodes()[0].label, "a<b&\"c\"");
    EXPECT_EQ(back.nodes()[1].key, n.nodes()[1].key);
  }
}

TEST(NetworkFile, Errors) {
  EXPECT_THROW(load_network("/nonexistent/net.graphml"), InputError);
  EXPECT_THROW(read_graphml("<graphml><graph"), InputError);
  EXPECT_THROW(read_graphml("<notgraphml/>"), InputError);
  auto n = build_network(testing_support::two_operation_collection(), MatcherKind::syntactic_equal);
  auto other = build_network(
      testing_support::make_collection({{OpSpec{{{"p"}}, {{"q"}}}}}), MatcherKind::syntactic_equal);
  EXPECT_THROW(read_graphml(export_network(n, ExportFormat::graphml), write_membership(other)),
               InputError);
}
