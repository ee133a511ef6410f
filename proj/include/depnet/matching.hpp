#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "depnet/collection.hpp"

namespace depnet {

enum class MatcherKind { syntactic_equal, semantic_exact };

// "syntactic-equal" / "semantic-exact"
std::string_view to_string(MatcherKind kind);
MatcherKind parse_matcher_kind(std::string_view text);

// Binary symmetric matching predicate. Semantic matching of an instance that
// has no concept succeeds only against the very same instance (by address).
bool matches(MatcherKind kind, const ParameterInstance& a, const ParameterInstance& b,
             NameNormalization policy = {});

// Equivalence key for matchers that are true equivalences. Instances without
// a concept get no key under semantic_exact.
std::optional<std::string> match_key(MatcherKind kind, const ParameterInstance& p,
                                     NameNormalization policy = {});

struct Archetype {
  std::size_t id = 0;
  std::string label;
  std::string key;
  // Indices into ServiceCollection::instances().
  std::vector<std::size_t> members;
  std::size_t instance_count = 0;
};

struct ArchetypeSet {
  std::vector<Archetype> archetypes;
  std::vector<std::size_t> archetype_of;  // instance index -> archetype id
};

using MatchPredicate =
    std::function<bool(const ParameterInstance&, const ParameterInstance&)>;

// Equivalence classes of the transitive closure of `match` over the
// instances, by pairwise comparison and union-find. Quadratic; the entry point
// for matchers that are not equivalences.
ArchetypeSet build_archetypes_pairwise(const std::vector<const ParameterInstance*>& instances,
                                       const MatchPredicate& match);

// Shipped matchers take the hashing path: one archetype per distinct key,
// ids in order of first appearance.
ArchetypeSet build_archetypes(const ServiceCollection& c, MatcherKind kind,
                              NameNormalization policy = {});

}  // namespace depnet
