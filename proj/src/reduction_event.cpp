#include "mckernel/reduction_event.hpp"

#include <string>

namespace mck {

std::string_view to_string(Rule rule) {
    switch (rule) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::R5: return "R5";
    case Rule::R6: return "R6";
    case Rule::R8u: return "R8u";
    case Rule::R8s: return "R8s";
    case Rule::R1c: return "R1c";
    case Rule::R3c: return "R3c";
    case Rule::GadgetExpand: return "GadgetExpand";
    }
    return "?";
}

std::optional<Rule> rule_from_string(std::string_view name) {
    for (Rule r : kAllRules)
        if (to_string(r) == name)
            return r;
    return std::nullopt;
}

void apply_event(DynamicGraph &g, const ReductionEvent &event) {
    for (VertexId expected : event.added_vertices) {
        VertexId v = g.add_vertex();
        if (v != expected)
            throw Error(Errc::precondition_violated,
                        "event expects new vertex " + std::to_string(expected) + ", graph produced " + std::to_string(v));
    }
    for (const Edge &e : event.removed_edges)
        g.remove_edge(e.u, e.v);
    for (VertexId v : event.removed_vertices)
        g.remove_vertex(v);
    for (const Edge &e : event.added_edges)
        g.add_edge(e.u, e.v, e.attr);
}

void undo_event(DynamicGraph &g, const ReductionEvent &event) {
    for (const Edge &e : event.added_edges)
        g.remove_edge(e.u, e.v);
    for (VertexId v : event.removed_vertices)
        g.restore_vertex(v);
    for (const Edge &e : event.removed_edges)
        g.add_edge(e.u, e.v, e.attr);
    for (VertexId v : event.added_vertices)
        g.remove_vertex(v);
}

Weight signed_offset(const ReductionEvent &event) {
    // beta_signed = beta_weighted + (number of plus edges)
    Weight plus_delta = 0;
    for (const Edge &e : event.removed_edges)
        plus_delta += e.attr.sign == Sign::plus;
    for (const Edge &e : event.added_edges)
        plus_delta -= e.attr.sign == Sign::plus;
    return event.offset + plus_delta;
}

} // namespace mck
