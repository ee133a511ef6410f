#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace depnet {

enum class Role { input, output };

std::string_view to_string(Role role);

struct ParameterInstance {
  std::string name;
  std::optional<std::string> xsd_type;
  std::optional<std::string> concept_uri;
  Role role = Role::input;
  std::string operation_id;

  friend bool operator==(const ParameterInstance&, const ParameterInstance&) = default;
};

struct Operation {
  std::string id;
  std::string service_id;
  std::string name;
  std::vector<ParameterInstance> inputs;
  std::vector<ParameterInstance> outputs;

  friend bool operator==(const Operation&, const Operation&) = default;
};

struct Service {
  std::string id;
  std::string name;
  std::optional<std::string> domain_label;
  std::vector<Operation> operations;

  friend bool operator==(const Service&, const Service&) = default;
};

enum class SourceFormat { canonical, sawsdl };

// Immutable once built; construct through make() or the loaders so the
// invariants (unique ids, back references, instance_count) are checked.
class ServiceCollection {
public:
  ServiceCollection() = default;

  // Validates ids and back references and fills in operation_id/service_id
  // fields. Throws SchemaError or DuplicateIdError.
  static ServiceCollection make(std::vector<Service> services, SourceFormat format);

  const std::vector<Service>& services() const noexcept { return services_; }
  SourceFormat source_format() const noexcept { return format_; }
  std::size_t instance_count() const noexcept { return instance_count_; }

  // All instances in canonical traversal order: services in declaration order,
  // operations in declaration order, inputs before outputs.
  std::vector<const ParameterInstance*> instances() const;

  friend bool operator==(const ServiceCollection& a, const ServiceCollection& b) {
    return a.format_ == b.format_ && a.services_ == b.services_;
  }

private:
  std::vector<Service> services_;
  SourceFormat format_ = SourceFormat::canonical;
  std::size_t instance_count_ = 0;
};

// Name normalization applied before any name comparison.
struct NameNormalization {
  bool case_fold = false;
};

std::string trim(std::string_view s);
std::string normalize_name(std::string_view name, NameNormalization policy = {});

struct CollectionStats {
  std::size_t services = 0;
  std::size_t operations = 0;
  std::size_t instance_count = 0;
  std::size_t distinct_names = 0;
  std::size_t distinct_concepts = 0;

  friend bool operator==(const CollectionStats&, const CollectionStats&) = default;
};

CollectionStats collection_stats(const ServiceCollection& c, NameNormalization policy = {});

// Canonical JSON collection format.
ServiceCollection parse_canonical(std::string_view text);
ServiceCollection load_canonical(const std::filesystem::path& path);
std::string write_canonical(const ServiceCollection& c);

using WarningSink = std::function<void(const std::string&)>;

// Reads every *.wsdl / *.sawsdl / *.xml file below `dir` (sorted by relative
// path, one service per file). A file in a subdirectory gets the first path
// component as its domain label.
ServiceCollection load_sawsdl(const std::filesystem::path& dir, const WarningSink& warn = {});

// Parses one description document; `file_label` names the source in errors.
Service parse_sawsdl_service(std::string_view xml, const std::string& file_label);

}  // namespace depnet
