#include "depnet/collection.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "depnet/error.hpp"

namespace depnet {

using nlohmann::json;

std::string_view to_string(Role role) {
  return role == Role::input ? "input" : "output";
}

std::string trim(std::string_view s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string normalize_name(std::string_view name, NameNormalization policy) {
  std::string out = trim(name);
  if (policy.case_fold) {
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  }
  return out;
}

ServiceCollection ServiceCollection::make(std::vector<Service> services, SourceFormat format) {
  ServiceCollection c;
  std::unordered_set<std::string> ids;
  auto claim = [&ids](const std::string& id, const char* what) {
    if (id.empty()) throw SchemaError(std::string(what) + " with empty id");
    if (!ids.insert(id).second) throw DuplicateIdError("duplicate id '" + id + "'");
  };

  std::size_t count = 0;
  for (auto& service : services) {
    claim(service.id, "service");
    for (auto& op : service.operations) {
      claim(op.id, "operation");
      op.service_id = service.id;
      auto fix = [&](std::vector<ParameterInstance>& params, Role role) {
        for (auto& p : params) {
          if (trim(p.name).empty()) {
            throw SchemaError("operation '" + op.id + "': parameter with empty name");
          }
          if (p.concept_uri && trim(*p.concept_uri).empty()) {
            throw SchemaError("operation '" + op.id + "': parameter '" + p.name +
                              "' has an empty concept");
          }
          p.role = role;
          p.operation_id = op.id;
        }
        count += params.size();
      };
      fix(op.inputs, Role::input);
      fix(op.outputs, Role::output);
    }
  }
  c.services_ = std::move(services);
  c.format_ = format;
  c.instance_count_ = count;
  return c;
}

std::vector<const ParameterInstance*> ServiceCollection::instances() const {
  std::vector<const ParameterInstance*> out;
  out.reserve(instance_count_);
  for (const auto& s : services_) {
    for (const auto& op : s.operations) {
      for (const auto& p : op.inputs) out.push_back(&p);
      for (const auto& p : op.outputs) out.push_back(&p);
    }
  }
  return out;
}

CollectionStats collection_stats(const ServiceCollection& c, NameNormalization policy) {
  CollectionStats st;
  std::set<std::string> names;
  std::set<std::string> concepts;
  st.services = c.services().size();
  for (const auto& s : c.services()) {
    st.operations += s.operations.size();
  }
  for (const auto* p : c.instances()) {
    names.insert(normalize_name(p->name, policy));
    if (p->concept_uri) concepts.insert(trim(*p->concept_uri));
  }
  st.instance_count = c.instance_count();
  st.distinct_names = names.size();
  st.distinct_concepts = concepts.size();
  return st;
}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  byte = std::min(byte, text.size());
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing '" + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) throw SchemaError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key,
                                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw SchemaError(where + ": '" + key + "' must be a string");
  return it->get<std::string>();
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* a) { return key == a; });
    if (!known) throw SchemaError(where + ": unknown field '" + key + "'");
  }
}

std::vector<ParameterInstance> read_params(const json& op, const char* key,
                                           const std::string& where) {
  std::vector<ParameterInstance> out;
  auto it = op.find(key);
  if (it == op.end()) return out;
  if (!it->is_array()) throw SchemaError(where + ": '" + key + "' must be an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& p = (*it)[i];
    std::string at = where + "." + key + "[" + std::to_string(i) + "]";
    if (!p.is_object()) throw SchemaError(at + ": parameter must be an object");
    check_keys(p, {"name", "type", "concept"}, at);
    ParameterInstance inst;
    inst.name = require_string(p, "name", at);
    if (trim(inst.name).empty()) throw SchemaError(at + ": empty name");
    inst.xsd_type = optional_string(p, "type", at);
    inst.concept_uri = optional_string(p, "concept", at);
    if (inst.concept_uri && trim(*inst.concept_uri).empty()) {
      throw SchemaError(at + ": empty concept");
    }
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace

ServiceCollection parse_canonical(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("malformed collection JSON", line, column);
  }
  if (!doc.is_object()) throw SchemaError("collection: top level must be an object");
  check_keys(doc, {"services"}, "collection");
  const json& services = require(doc, "services", "collection");
  if (!services.is_array()) throw SchemaError("collection: 'services' must be an array");

  std::vector<Service> out;
  for (std::size_t si = 0; si < services.size(); ++si) {
    const json& s = services[si];
    std::string where = "services[" + std::to_string(si) + "]";
    if (!s.is_object()) throw SchemaError(where + ": service must be an object");
    check_keys(s, {"id", "name", "domain", "operations"}, where);
    Service service;
    service.name = require_string(s, "name", where);
    service.id = optional_string(s, "id", where).value_or("s" + std::to_string(si));
    service.domain_label = optional_string(s, "domain", where);
    auto ops = s.find("operations");
    if (ops != s.end()) {
      if (!ops->is_array()) throw SchemaError(where + ": 'operations' must be an array");
      for (std::size_t oi = 0; oi < ops->size(); ++oi) {
        const json& o = (*ops)[oi];
        std::string at = where + ".operations[" + std::to_string(oi) + "]";
        if (!o.is_object()) throw SchemaError(at + ": operation must be an object");
        check_keys(o, {"id", "name", "inputs", "outputs"}, at);
        Operation op;
        op.name = require_string(o, "name", at);
        op.id = optional_string(o, "id", at).value_or(service.id + "." + std::to_string(oi));
        op.inputs = read_params(o, "inputs", at);
        op.outputs = read_params(o, "outputs", at);
        service.operations.push_back(std::move(op));
      }
    }
    out.push_back(std::move(service));
  }
  return ServiceCollection::make(std::move(out), SourceFormat::canonical);
}

ServiceCollection load_canonical(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open collection file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_canonical(buf.str());
}

std::string write_canonical(const ServiceCollection& c) {
  auto params = [](const std::vector<ParameterInstance>& list) {
    json arr = json::array();
    for (const auto& p : list) {
      json j = {{"name", p.name}};
      if (p.xsd_type) j["type"] = *p.xsd_type;
      if (p.concept_uri) j["concept"] = *p.concept_uri;
      arr.push_back(std::move(j));
    }
    return arr;
  };
  json services = json::array();
  for (const auto& s : c.services()) {
    json ops = json::array();
    for (const auto& op : s.operations) {
      ops.push_back({{"id", op.id},
                     {"name", op.name},
                     {"inputs", params(op.inputs)},
                     {"outputs", params(op.outputs)}});
    }
    json js = {{"id", s.id}, {"name", s.name}, {"operations", std::move(ops)}};
    if (s.domain_label) js["domain"] = *s.domain_label;
    services.push_back(std::move(js));
  }
  json doc = {{"services", std::move(services)}};
  return doc.dump(2) + "\n";
}

}  // namespace depnet
