#include "depnet/matching.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "depnet/disjoint_set.hpp"
#include "depnet/error.hpp"

namespace depnet {

std::string_view to_string(MatcherKind kind) {
  return kind == MatcherKind::syntactic_equal ? "syntactic-equal" : "semantic-exact";
}

MatcherKind parse_matcher_kind(std::string_view text) {
  if (text == "syntactic-equal") return MatcherKind::syntactic_equal;
  if (text == "semantic-exact") return MatcherKind::semantic_exact;
  throw InputError("unknown matcher '" + std::string(text) + "'");
}

std::optional<std::string> match_key(MatcherKind kind, const ParameterInstance& p,
                                     NameNormalization policy) {
  if (kind == MatcherKind::syntactic_equal) return normalize_name(p.name, policy);
  if (!p.concept_uri) return std::nullopt;
  return trim(*p.concept_uri);
}

bool matches(MatcherKind kind, const ParameterInstance& a, const ParameterInstance& b,
             NameNormalization policy) {
  if (&a == &b) return true;
  auto ka = match_key(kind, a, policy);
  auto kb = match_key(kind, b, policy);
  return ka && kb && *ka == *kb;
}

namespace {

// Most frequent member name, ties to the lexicographically smallest.
std::string pick_label(const std::vector<const ParameterInstance*>& instances,
                       const std::vector<std::size_t>& members) {
  std::map<std::string, std::size_t> freq;
  for (auto m : members) ++freq[trim(instances[m]->name)];
  auto best = freq.begin();
  for (auto it = freq.begin(); it != freq.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

// Groups instances by class representative; archetype ids follow the first
// appearance of each class in traversal order.
ArchetypeSet assemble(const std::vector<const ParameterInstance*>& instances,
                      const std::vector<std::size_t>& class_of,
                      const std::function<std::string(std::size_t)>& key_of) {
  ArchetypeSet out;
  out.archetype_of.resize(instances.size());
  std::unordered_map<std::size_t, std::size_t> id_of_class;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto [it, fresh] = id_of_class.try_emplace(class_of[i], out.archetypes.size());
    if (fresh) {
      Archetype a;
      a.id = out.archetypes.size();
      a.key = key_of(i);
      out.archetypes.push_back(std::move(a));
    }
    out.archetypes[it->second].members.push_back(i);
    out.archetype_of[i] = it->second;
  }
  for (auto& a : out.archetypes) {
    a.instance_count = a.members.size();
    a.label = pick_label(instances, a.members);
  }
  return out;
}

std::string sentinel_key(std::size_t index) {
  return "<unannotated#" + std::to_string(index) + ">";
}

}  // namespace

ArchetypeSet build_archetypes_pairwise(const std::vector<const ParameterInstance*>& instances,
                                       const MatchPredicate& match) {
  DisjointSet sets(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t j = i + 1; j < instances.size(); ++j) {
      if (sets.find(i) == sets.find(j)) continue;
      if (match(*instances[i], *instances[j])) sets.unite(i, j);
    }
  }
  std::vector<std::size_t> class_of(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) class_of[i] = sets.find(i);
  return assemble(instances, class_of,
                  [&](std::size_t i) { return trim(instances[i]->name); });
}

ArchetypeSet build_archetypes(const ServiceCollection& c, MatcherKind kind,
                              NameNormalization policy) {
  auto instances = c.instances();
  std::vector<std::string> keys(instances.size());
  std::vector<std::size_t> class_of(instances.size());
  std::unordered_map<std::string, std::size_t> first_with_key;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto key = match_key(kind, *instances[i], policy);
    keys[i] = key ? std::move(*key) : sentinel_key(i);
    class_of[i] = first_with_key.try_emplace(keys[i], i).first->second;
  }
  return assemble(instances, class_of, [&](std::size_t i) { return keys[i]; });
}

}  // namespace depnet
