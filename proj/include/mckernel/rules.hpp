#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mckernel/dynamic_graph.hpp"
#include "mckernel/neighborhood_trie.hpp"
#include "mckernel/reduction_event.hpp"

namespace mck {

// Max cut of the complete graph K_s: ceil(s/2) * floor(s/2).
Weight beta_complete(std::size_t s);

// Weight shared by every edge of G[S], or nullopt if G[S] is not a clique
// with uniform weights. A single vertex yields weight 1.
std::optional<Weight> uniform_clique_weight(const DynamicGraph &g, std::span<const VertexId> clique);

// Members of S without neighbors outside S.
std::vector<VertexId> internal_vertices(const DynamicGraph &g, std::span<const VertexId> S);

/// Appliers. Each validates its preconditions (PreconditionViolated), applies
/// the edits to g and returns the event. scaled selects the uniform weight
/// variants R1c / R3c, which require c > 0.

ReductionEvent apply_rule1(DynamicGraph &g, std::span<const VertexId> clique, bool scaled = false);
// path = (a', a, b, b')
ReductionEvent apply_rule2(DynamicGraph &g, const std::array<VertexId, 4> &path);
ReductionEvent apply_rule3(DynamicGraph &g, std::span<const VertexId> near_clique, bool scaled = false);
// Removes edge, or the edge between the two smallest internal ids if none given.
ReductionEvent apply_rule4(DynamicGraph &g, std::span<const VertexId> clique,
                           std::optional<std::pair<VertexId, VertexId>> edge = std::nullopt);
ReductionEvent apply_rule5(DynamicGraph &g, const CandidateGroup &group);
// path = (a, b, a') with deg(b) = 2; an existing edge {a, a'} is merged.
ReductionEvent apply_rule6(DynamicGraph &g, const std::array<VertexId, 3> &path);
ReductionEvent apply_rule8u(DynamicGraph &g, const CandidateGroup &group);
ReductionEvent apply_rule8s(DynamicGraph &g, const CandidateGroup &group);

/// Finders. Each inspects the site anchored at v and returns what the
/// matching applier needs, or nullopt.

// S = N[v] when it is a clique (unit weights, or uniform c > 0 if scaled)
// with |C_ext(S)| <= ceil(|S|/2). O(deg(v)^2 log).
std::optional<std::vector<VertexId>> find_rule1(const DynamicGraph &g, VertexId v, bool scaled = false);
// Path (a', a, b, b') with a = v.
std::optional<std::array<VertexId, 4>> find_rule2(const DynamicGraph &g, VertexId v);
// S = N[v] when it is a near-clique whose missing edge joins two internal
// vertices and |S| is odd or |C_int(S)| > 2.
std::optional<std::vector<VertexId>> find_rule3(const DynamicGraph &g, VertexId v, bool scaled = false);
// S = N[v] when it is a unit clique with two internal vertices and
// |S| odd or |C_int(S)| > 2.
std::optional<std::vector<VertexId>> find_rule4(const DynamicGraph &g, VertexId v);
// (a, b, a') with b = v. With unit_result, only sites whose resulting edge
// weight (after merging) is -1, 0 or +1.
std::optional<std::array<VertexId, 3>> find_rule6(const DynamicGraph &g, VertexId v, bool unit_result = false);

// Which twin rule a group qualifies for: R8u / R5 when signed is false
// (unit weights required), R8s when signed is true (weights +-1). The group
// must still consist of alive closed twins.
std::optional<Rule> classify_twin_group(const DynamicGraph &g, const CandidateGroup &group, bool signed_mode);

// Group {x} for a pendant vertex x with a unit edge (R5 with |X| = 1).
std::optional<CandidateGroup> pendant_group(const DynamicGraph &g, VertexId x);

// Rebuilds the group containing the given members from the current graph,
// or nullopt if they are no longer closed twins.
std::optional<CandidateGroup> refresh_group(const DynamicGraph &g, std::span<const VertexId> members, bool signed_keys);

} // namespace mck
