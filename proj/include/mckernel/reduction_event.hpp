#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "mckernel/dynamic_graph.hpp"

namespace mck {

enum class Rule : std::uint8_t {
    R1,   // clique with few external vertices
    R2,   // induced 3-path contraction
    R3,   // near-clique edge addition
    R4,   // clique edge removal
    R5,   // twin clique with |X| = |N(X)|
    R6,   // weighted path compression
    R8u,  // twin clique removal, unsigned
    R8s,  // twin clique removal, signed
    R1c,  // R1 on a clique of uniform weight c
    R3c,  // R3 on a near-clique of uniform weight c
    GadgetExpand,
};

inline constexpr std::size_t kNumRules = 11;

inline constexpr std::array<Rule, kNumRules> kAllRules = {
    Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6,
    Rule::R8u, Rule::R8s, Rule::R1c, Rule::R3c, Rule::GadgetExpand};

std::string_view to_string(Rule rule);
std::optional<Rule> rule_from_string(std::string_view name);

/***
 * One applied reduction. Applying it to the pre-state means, in order:
 * create added_vertices (fresh ids), delete removed_edges, delete
 * removed_vertices (all their edges are listed in removed_edges), insert
 * added_edges. A weight change is a removed edge plus an added edge.
 *
 * offset is the amount added to the weighted cut objective:
 * beta(pre) = beta(post) + offset.
 */
struct ReductionEvent {
    Rule rule = Rule::R1;
    std::vector<VertexId> removed_vertices;
    std::vector<VertexId> added_vertices;
    std::vector<Edge> removed_edges;
    std::vector<Edge> added_edges;
    std::vector<VertexId> boundary;
    Weight offset = 0;

    friend bool operator==(const ReductionEvent &, const ReductionEvent &) = default;
};

void apply_event(DynamicGraph &g, const ReductionEvent &event);
void undo_event(DynamicGraph &g, const ReductionEvent &event);

// Offset in terms of the signed objective (minus edges cut plus plus edges
// uncut) for an event applied to a graph in signed mode.
Weight signed_offset(const ReductionEvent &event);

} // namespace mck
