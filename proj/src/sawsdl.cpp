#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "depnet/collection.hpp"
#include "depnet/error.hpp"

namespace depnet {

namespace pt = boost::property_tree;

namespace {

std::string_view local_name(std::string_view qname) {
  auto colon = qname.rfind(':');
  return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

bool is_markup(const std::string& key) {
  return key == "<xmlattr>" || key == "<xmlcomment>" || key == "<xmltext>";
}

// Attribute lookup by local name so that any namespace prefix is accepted.
std::optional<std::string> attribute(const pt::ptree& node, std::string_view local) {
  auto attrs = node.get_child_optional("<xmlattr>");
  if (!attrs) return std::nullopt;
  for (const auto& [key, value] : *attrs) {
    if (local_name(key) == local) return value.data();
  }
  return std::nullopt;
}

std::optional<std::string> model_reference(const pt::ptree& node) {
  auto ref = attribute(node, "modelReference");
  if (ref && trim(*ref).empty()) return std::nullopt;
  return ref;
}

struct Schema {
  std::map<std::string, const pt::ptree*, std::less<>> elements;
  std::map<std::string, const pt::ptree*, std::less<>> types;
};

struct Part {
  const pt::ptree* node;
  std::string name;
};

class DescriptionReader {
public:
  DescriptionReader(const pt::ptree& root_children, const std::string& file)
      : file_(file) {
    const pt::ptree* definitions = nullptr;
    std::string root_key;
    for (const auto& [key, child] : root_children) {
      if (is_markup(key)) continue;
      if (definitions) throw SchemaError(file_ + ": more than one document element");
      definitions = &child;
      root_key = key;
    }
    if (!definitions) throw SchemaError(file_ + ": no document element");
    if (local_name(root_key) != "definitions") {
      throw UnsupportedConstructError(root_key, file_);
    }
    defs_ = definitions;
  }

  Service read() {
    Service service;
    service.id = file_;
    service.name = attribute(*defs_, "name").value_or(file_);

    std::vector<const pt::ptree*> port_types;
    for (const auto& [key, child] : *defs_) {
      if (is_markup(key)) continue;
      auto local = local_name(key);
      if (local == "documentation" || local == "binding" || local == "service") {
        continue;
      } else if (local == "types") {
        read_types(child);
      } else if (local == "message") {
        read_message(child);
      } else if (local == "portType") {
        port_types.push_back(&child);
      } else {
        // import, interface, Policy, UsingPolicy, ...
        throw UnsupportedConstructError(key, file_);
      }
    }

    std::unordered_set<std::string> op_ids;
    for (const auto* port_type : port_types) {
      for (const auto& [key, child] : *port_type) {
        if (is_markup(key)) continue;
        auto local = local_name(key);
        if (local == "documentation") continue;
        if (local != "operation") throw UnsupportedConstructError(key, file_);
        Operation op = read_operation(child);
        op.id = service.id + "#" + op.name;
        for (int k = 2; !op_ids.insert(op.id).second; ++k) {
          op.id = service.id + "#" + op.name + "#" + std::to_string(k);
        }
        service.operations.push_back(std::move(op));
      }
    }
    return service;
  }

private:
  void read_types(const pt::ptree& types) {
    for (const auto& [key, schema] : types) {
      if (is_markup(key) || local_name(key) == "documentation") continue;
      if (local_name(key) != "schema") throw UnsupportedConstructError(key, file_);
      for (const auto& [decl_key, decl] : schema) {
        if (is_markup(decl_key)) continue;
        auto local = local_name(decl_key);
        auto name = attribute(decl, "name");
        if (!name) continue;
        if (local == "element") {
          schema_.elements.emplace(*name, &decl);
        } else if (local == "complexType" || local == "simpleType") {
          schema_.types.emplace(*name, &decl);
        }
      }
    }
  }

  void read_message(const pt::ptree& message) {
    auto name = attribute(message, "name");
    if (!name) throw SchemaError(file_ + ": message without a name");
    std::vector<Part> parts;
    for (const auto& [key, child] : message) {
      if (is_markup(key)) continue;
      auto local = local_name(key);
      if (local == "documentation") continue;
      if (local != "part") throw UnsupportedConstructError(key, file_);
      auto part_name = attribute(child, "name");
      if (!part_name || trim(*part_name).empty()) {
        throw SchemaError(file_ + ": message '" + *name + "' has a part without a name");
      }
      parts.push_back({&child, *part_name});
    }
    messages_[*name] = std::move(parts);
  }

  Operation read_operation(const pt::ptree& node) {
    Operation op;
    auto name = attribute(node, "name");
    if (!name) throw SchemaError(file_ + ": operation without a name");
    op.name = *name;
    for (const auto& [key, child] : node) {
      if (is_markup(key)) continue;
      auto local = local_name(key);
      if (local == "documentation" || local == "fault") continue;
      if (local == "input") {
        op.inputs = read_parameters(child, op.name);
      } else if (local == "output") {
        op.outputs = read_parameters(child, op.name);
      } else {
        throw UnsupportedConstructError(key, file_);
      }
    }
    return op;
  }

  std::vector<ParameterInstance> read_parameters(const pt::ptree& io, const std::string& op) {
    auto message = attribute(io, "message");
    if (!message) throw SchemaError(file_ + ": operation '" + op + "' has input/output without message");
    auto it = messages_.find(std::string(local_name(*message)));
    if (it == messages_.end()) {
      throw SchemaError(file_ + ": operation '" + op + "' references unknown message '" + *message + "'");
    }
    std::vector<ParameterInstance> out;
    for (const auto& part : it->second) {
      ParameterInstance p;
      p.name = part.name;
      const pt::ptree* element = nullptr;
      if (auto ref = attribute(*part.node, "element")) {
        auto e = schema_.elements.find(local_name(*ref));
        if (e != schema_.elements.end()) element = e->second;
      }
      p.xsd_type = attribute(*part.node, "type");
      if (!p.xsd_type && element) p.xsd_type = attribute(*element, "type");

      // part, then element declaration, then type declaration
      p.concept_uri = model_reference(*part.node);
      if (!p.concept_uri && element) p.concept_uri = model_reference(*element);
      if (!p.concept_uri && p.xsd_type) {
        auto t = schema_.types.find(local_name(*p.xsd_type));
        if (t != schema_.types.end()) p.concept_uri = model_reference(*t->second);
      }
      out.push_back(std::move(p));
    }
    return out;
  }

  std::string file_;
  const pt::ptree* defs_ = nullptr;
  Schema schema_;
  std::map<std::string, std::vector<Part>, std::less<>> messages_;
};

bool is_description_file(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".wsdl" || ext == ".sawsdl" || ext == ".xml";
}

}  // namespace

Service parse_sawsdl_service(std::string_view xml, const std::string& file_label) {
  pt::ptree tree;
  std::istringstream in{std::string(xml)};
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(file_label + ": malformed XML: " + e.message(), e.line(), 0);
  }
  return DescriptionReader(tree, file_label).read();
}

ServiceCollection load_sawsdl(const std::filesystem::path& dir, const WarningSink& warn) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && is_description_file(entry.path())) {
      files.push_back(fs::relative(entry.path(), dir));
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    if (warn) warn("no description files found in " + dir.string());
    return ServiceCollection::make({}, SourceFormat::sawsdl);
  }

  std::vector<Service> services;
  services.reserve(files.size());
  for (const auto& rel : files) {
    std::ifstream in(dir / rel, std::ios::binary);
    if (!in) throw InputError("cannot open " + (dir / rel).string());
    std::ostringstream buf;
    buf << in.rdbuf();
    Service s = parse_sawsdl_service(buf.str(), rel.generic_string());
    auto first = rel.begin();
    if (std::next(first) != rel.end()) s.domain_label = first->string();
    services.push_back(std::move(s));
  }
  return ServiceCollection::make(std::move(services), SourceFormat::sawsdl);
}

}  // namespace depnet
