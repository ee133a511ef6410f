#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "depnet/collection.hpp"

namespace testing_support {

struct Param {
  std::string name;
  std::optional<std::string> concept_uri = std::nullopt;
};

struct OpSpec {
  std::vector<Param> inputs;
  std::vector<Param> outputs;
};

inline std::vector<depnet::ParameterInstance> params(const std::vector<Param>& ps) {
  std::vector<depnet::ParameterInstance> out;
  for (const auto& p : ps) {
    depnet::ParameterInstance inst;
    inst.name = p.name;
    inst.concept_uri = p.concept_uri;
    out.push_back(inst);
  }
  return out;
}

// One service per inner vector; ids s<i> and s<i>.<j>.
inline depnet::ServiceCollection make_collection(const std::vector<std::vector<OpSpec>>& services) {
  std::vector<depnet::Service> out;
  for (std::size_t i = 0; i < services.size(); ++i) {
    depnet::Service s;
    s.id = "s" + std::to_string(i);
    s.name = "service" + std::to_string(i);
    for (std::size_t j = 0; j < services[i].size(); ++j) {
      depnet::Operation op;
      op.id = s.id + "." + std::to_string(j);
      op.name = "op" + std::to_string(j);
      op.inputs = params(services[i][j].inputs);
      op.outputs = params(services[i][j].outputs);
      s.operations.push_back(std::move(op));
    }
    out.push_back(std::move(s));
  }
  return depnet::ServiceCollection::make(std::move(out), depnet::SourceFormat::canonical);
}

// op1({a,b} -> {c,d,e}), op2({c,d} -> {e,f}).
inline depnet::ServiceCollection two_operation_collection() {
  return make_collection({{
      {{{"a"}, {"b"}}, {{"c"}, {"d"}, {"e"}}},
      {{{"c"}, {"d"}}, {{"e"}, {"f"}}},
  }});
}

// Random collection over a small vocabulary so that names and concepts repeat.
inline depnet::ServiceCollection random_collection(std::mt19937_64& rng, std::size_t services,
                                                   std::size_t max_ops, std::size_t max_params,
                                                   std::size_t vocabulary) {
  std::uniform_int_distribution<std::size_t> ops(0, max_ops);
  std::uniform_int_distribution<std::size_t> count(0, max_params);
  std::uniform_int_distribution<std::size_t> word(0, vocabulary - 1);
  std::bernoulli_distribution annotated(0.9);
  std::vector<std::vector<OpSpec>> spec(services);
  for (auto& s : spec) {
    std::size_t k = ops(rng);
    for (std::size_t j = 0; j < k; ++j) {
      OpSpec op;
      auto fill = [&](std::vector<Param>& side) {
        std::size_t c = count(rng);
        for (std::size_t i = 0; i < c; ++i) {
          Param p{"p" + std::to_string(word(rng))};
          if (annotated(rng)) p.concept_uri = "#c" + std::to_string(word(rng) / 2);
          side.push_back(p);
        }
      };
      fill(op.inputs);
      fill(op.outputs);
      s.push_back(std::move(op));
    }
  }
  return make_collection(spec);
}

inline std::string data_path(const std::string& rel) {
  return std::string(DEPNET_TEST_DATA_DIR) + "/" + rel;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("depnet_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing_support
