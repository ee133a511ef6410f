#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

#include "depnet/error.hpp"
#include "depnet/network.hpp"

namespace depnet {

using nlohmann::json;
namespace pt = boost::property_tree;

ExportFormat parse_export_format(std::string_view text) {
  if (text == "graphml") return ExportFormat::graphml;
  if (text == "dot") return ExportFormat::dot;
  if (text == "edgelist") return ExportFormat::edgelist;
  throw InputError("unknown export format '" + std::string(text) + "'");
}

ExportFormat export_format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  if (ext == ".graphml") return ExportFormat::graphml;
  if (ext == ".dot" || ext == ".gv") return ExportFormat::dot;
  if (ext == ".tsv" || ext == ".edgelist" || ext == ".txt") return ExportFormat::edgelist;
  throw InputError("cannot infer network format from extension of " + path.string());
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

void write_graphml(const DependencyNetwork& n, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"matcher\" for=\"graph\" attr.name=\"matcher\" attr.type=\"string\"/>\n"
      << "  <key id=\"self_loop_count\" for=\"graph\" attr.name=\"self_loop_count\" attr.type=\"int\"/>\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      << "  <key id=\"key\" for=\"node\" attr.name=\"key\" attr.type=\"string\"/>\n"
      << "  <key id=\"instance_count\" for=\"node\" attr.name=\"instance_count\" attr.type=\"int\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"directed\">\n"
      << "    <data key=\"matcher\">" << to_string(n.matcher()) << "</data>\n"
      << "    <data key=\"self_loop_count\">" << n.self_loop_count() << "</data>\n";
  for (const auto& node : n.nodes()) {
    out << "    <node id=\"n" << node.id << "\">"
        << "<data key=\"label\">" << xml_escape(node.label) << "</data>"
        << "<data key=\"key\">" << xml_escape(node.key) << "</data>"
        << "<data key=\"instance_count\">" << node.instance_count << "</data>"
        << "</node>\n";
  }
  for (const auto& link : n.links()) {
    out << "    <edge source=\"n" << link.source << "\" target=\"n" << link.target << "\">"
        << "<data key=\"weight\">" << link.weight << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_dot(const DependencyNetwork& n, std::ostream& out) {
  out << "digraph dependencies {\n";
  for (const auto& node : n.nodes()) {
    out << "  " << node.id << " [label=\"" << dot_escape(node.label)
        << "\", instance_count=" << node.instance_count << "];\n";
  }
  for (const auto& link : n.links()) {
    out << "  " << link.source << " -> " << link.target << " [weight=" << link.weight << "];\n";
  }
  out << "}\n";
}

void write_edgelist(const DependencyNetwork& n, std::ostream& out) {
  for (const auto& link : n.links()) {
    out << link.source << '\t' << link.target << '\t' << link.weight << '\n';
  }
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw SchemaError("GraphML: " + what + " is not a non-negative integer: '" + text + "'");
  }
  if (pos != text.size() || text.empty() || text.front() == '-') {
    throw SchemaError("GraphML: " + what + " is not a non-negative integer: '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

std::optional<std::string> attr(const pt::ptree& node, const char* name) {
  auto v = node.get_optional<std::string>(std::string("<xmlattr>.") + name);
  return v ? std::optional<std::string>(*v) : std::nullopt;
}

ParameterInstance member_from_json(const json& j) {
  ParameterInstance p;
  p.name = j.at("name").get<std::string>();
  p.operation_id = j.at("operation").get<std::string>();
  auto role = j.at("role").get<std::string>();
  if (role == "input") {
    p.role = Role::input;
  } else if (role == "output") {
    p.role = Role::output;
  } else {
    throw SchemaError("membership: unknown role '" + role + "'");
  }
  if (j.contains("type")) p.xsd_type = j["type"].get<std::string>();
  if (j.contains("concept")) p.concept_uri = j["concept"].get<std::string>();
  return p;
}

}  // namespace

void export_network(const DependencyNetwork& n, ExportFormat format, std::ostream& out) {
  switch (format) {
    case ExportFormat::graphml: write_graphml(n, out); break;
    case ExportFormat::dot: write_dot(n, out); break;
    case ExportFormat::edgelist: write_edgelist(n, out); break;
  }
  if (!out) throw Error("failed to write network export");
}

std::string export_network(const DependencyNetwork& n, ExportFormat format) {
  std::ostringstream out;
  export_network(n, format, out);
  return out.str();
}

std::string write_membership(const DependencyNetwork& n) {
  json nodes = json::array();
  for (const auto& node : n.nodes()) {
    json members = json::array();
    for (const auto& p : node.members) {
      json m = {{"name", p.name},
                {"operation", p.operation_id},
                {"role", std::string(to_string(p.role))}};
      if (p.xsd_type) m["type"] = *p.xsd_type;
      if (p.concept_uri) m["concept"] = *p.concept_uri;
      members.push_back(std::move(m));
    }
    nodes.push_back({{"id", node.id}, {"members", std::move(members)}});
  }
  json links = json::array();
  for (const auto& link : n.links()) {
    links.push_back({{"source", link.source},
                     {"target", link.target},
                     {"witnesses", link.witness_operations}});
  }
  json doc = {{"matcher", std::string(to_string(n.matcher()))},
              {"nodes", std::move(nodes)},
              {"links", std::move(links)}};
  return doc.dump(1) + "\n";
}

DependencyNetwork read_graphml(std::string_view graphml, std::string_view membership) {
  pt::ptree tree;
  std::istringstream in{std::string(graphml)};
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed GraphML: " + e.message(), e.line(), 0);
  }
  auto root = tree.get_child_optional("graphml");
  if (!root) throw SchemaError("GraphML: missing <graphml> root");

  // key id -> attribute name
  std::map<std::string, std::string> key_names;
  for (const auto& [tag, child] : *root) {
    if (tag != "key") continue;
    auto id = attr(child, "id");
    auto name = attr(child, "attr.name");
    if (id) key_names[*id] = name.value_or(*id);
  }
  auto graph = root->get_child_optional("graph");
  if (!graph) throw SchemaError("GraphML: missing <graph>");
  if (attr(*graph, "edgedefault").value_or("directed") != "directed") {
    throw SchemaError("GraphML: dependency networks are directed");
  }

  auto data_of = [&](const pt::ptree& element) {
    std::map<std::string, std::string> out;
    for (const auto& [tag, child] : element) {
      if (tag != "data") continue;
      auto key = attr(child, "key");
      if (!key) continue;
      auto it = key_names.find(*key);
      out[it == key_names.end() ? *key : it->second] = child.data();
    }
    return out;
  };

  auto graph_data = data_of(*graph);
  MatcherKind matcher = MatcherKind::syntactic_equal;
  if (auto it = graph_data.find("matcher"); it != graph_data.end()) {
    matcher = parse_matcher_kind(it->second);
  }
  std::size_t self_loops = 0;
  if (auto it = graph_data.find("self_loop_count"); it != graph_data.end()) {
    self_loops = parse_count(it->second, "self_loop_count");
  }

  std::vector<Node> nodes;
  std::map<std::string, std::size_t> index_of;
  std::vector<Link> links;
  for (const auto& [tag, child] : *graph) {
    if (tag == "node") {
      auto id = attr(child, "id");
      if (!id) throw SchemaError("GraphML: node without id");
      if (!index_of.emplace(*id, nodes.size()).second) {
        throw SchemaError("GraphML: duplicate node id '" + *id + "'");
      }
      auto data = data_of(child);
      Node node;
      node.id = nodes.size();
      node.label = data.count("label") ? data["label"] : *id;
      node.key = data.count("key") ? data["key"] : node.label;
      node.instance_count =
          data.count("instance_count") ? parse_count(data["instance_count"], "instance_count") : 1;
      nodes.push_back(std::move(node));
    } else if (tag == "edge") {
      auto src = attr(child, "source");
      auto dst = attr(child, "target");
      if (!src || !dst) throw SchemaError("GraphML: edge without endpoints");
      auto s = index_of.find(*src);
      auto t = index_of.find(*dst);
      if (s == index_of.end() || t == index_of.end()) {
        throw SchemaError("GraphML: edge refers to an undeclared node");
      }
      auto data = data_of(child);
      Link link;
      link.source = s->second;
      link.target = t->second;
      link.weight = data.count("weight") ? parse_count(data["weight"], "weight") : 1;
      links.push_back(std::move(link));
    }
  }

  if (!membership.empty()) {
    json doc;
    try {
      doc = json::parse(membership.begin(), membership.end());
      if (doc.at("matcher").get<std::string>() != to_string(matcher)) {
        throw SchemaError("membership sidecar matcher disagrees with GraphML");
      }
      const json& jn = doc.at("nodes");
      if (jn.size() != nodes.size()) {
        throw SchemaError("membership sidecar node count disagrees with GraphML");
      }
      for (const auto& entry : jn) {
        auto id = entry.at("id").get<std::size_t>();
        if (id >= nodes.size()) throw SchemaError("membership sidecar: bad node id");
        for (const auto& m : entry.at("members")) nodes[id].members.push_back(member_from_json(m));
      }
      std::map<Arc, std::vector<std::string>> witnesses;
      for (const auto& entry : doc.at("links")) {
        witnesses[{entry.at("source").get<std::size_t>(), entry.at("target").get<std::size_t>()}] =
            entry.at("witnesses").get<std::vector<std::string>>();
      }
      for (auto& link : links) {
        auto it = witnesses.find({link.source, link.target});
        if (it != witnesses.end()) link.witness_operations = std::move(it->second);
      }
    } catch (const json::exception& e) {
      throw SchemaError(std::string("membership sidecar: ") + e.what());
    }
  }
  return DependencyNetwork(matcher, std::move(nodes), std::move(links), self_loops);
}

std::filesystem::path sidecar_path(const std::filesystem::path& graphml_path) {
  auto p = graphml_path;
  p += ".members.json";
  return p;
}

void save_network(const DependencyNetwork& n, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  export_network(n, ExportFormat::graphml, out);
  std::ofstream side(sidecar_path(path), std::ios::binary);
  if (!side) throw Error("cannot write " + sidecar_path(path).string());
  side << write_membership(n);
  if (!side) throw Error("cannot write " + sidecar_path(path).string());
}

DependencyNetwork load_network(const std::filesystem::path& path) {
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  if (!std::filesystem::is_regular_file(path)) {
    throw InputError("cannot read network file " + path.string());
  }
  std::string membership;
  if (std::filesystem::is_regular_file(sidecar_path(path))) membership = slurp(sidecar_path(path));
  return read_graphml(slurp(path), membership);
}

}  // namespace depnet
