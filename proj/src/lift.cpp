#include <algorithm>
#include <ranges>

#include "mckernel/pipeline.hpp"
#include "mckernel/rules.hpp"

namespace mck {

namespace {

using Side = std::vector<std::uint8_t>;

// Weighted cut over edges with at least one endpoint in `movable`.
Weight local_value(const DynamicGraph &g, const Side &side, const std::vector<VertexId> &movable) {
    Weight total = 0;
    for (VertexId v : movable)
        for (const Neighbor &w : g.neighbors(v)) {
            bool w_movable = std::ranges::find(movable, w.id) != movable.end();
            if (w_movable && w.id < v)
                continue;
            if (side[v] != side[w.id])
                total += w.attr.weight;
        }
    return total;
}

void brute_force(const DynamicGraph &g, Side &side, const std::vector<VertexId> &movable) {
    Weight best = 0;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 0; mask < (1u << movable.size()); ++mask) {
        for (std::size_t i = 0; i < movable.size(); ++i)
            side[movable[i]] = (mask >> i) & 1;
        Weight value = local_value(g, side, movable);
        if (mask == 0 || value > best) {
            best = value;
            best_mask = mask;
        }
    }
    for (std::size_t i = 0; i < movable.size(); ++i)
        side[movable[i]] = (best_mask >> i) & 1;
}

// Internal vertices fill up the smaller side of the clique.
void balance_clique(const ReductionEvent &ev, Side &side) {
    std::size_t count[2] = {0, 0};
    for (VertexId u : ev.boundary)
        ++count[side[u]];
    for (VertexId v : ev.removed_vertices) {
        std::uint8_t s = count[0] <= count[1] ? 0 : 1;
        side[v] = s;
        ++count[s];
    }
}

// The added edge being cut may have been counted at a profit that the
// original near-clique cannot realize; recolor the internal vertices with
// both endpoints together when that is at least as good.
void repair_near_clique(const DynamicGraph &g, const ReductionEvent &ev, Side &side) {
    VertexId u = ev.added_edges.front().u, w = ev.added_edges.front().v;
    if (side[u] == side[w])
        return;
    auto internal = internal_vertices(g, ev.boundary);
    Side best_side = side;
    Weight best = local_value(g, side, internal);
    std::vector<VertexId> rest;
    for (VertexId x : internal)
        if (x != u && x != w)
            rest.push_back(x);
    for (std::uint8_t s = 0; s < 2; ++s)
        for (std::size_t k = 0; k <= rest.size(); ++k) {
            Side trial = side;
            trial[u] = trial[w] = s;
            for (std::size_t i = 0; i < rest.size(); ++i)
                trial[rest[i]] = i < k ? 0 : 1;
            Weight value = local_value(g, trial, internal);
            if (value > best) {
                best = value;
                best_side = std::move(trial);
            }
        }
    side = std::move(best_side);
}

// Twin groups: only the number of members per side matters, so pick the best
// count for the whole group including the vertices that were kept.
void recolor_twins(const DynamicGraph &g, const ReductionEvent &ev, Side &side) {
    std::vector<VertexId> members = ev.removed_vertices;
    const VertexId first = members.front();
    for (const Neighbor &w : g.neighbors(first))
        if (std::ranges::find(ev.boundary, w.id) == ev.boundary.end() &&
            std::ranges::find(members, w.id) == members.end())
            members.push_back(w.id);
    std::ranges::sort(members);

    // gain of a member on side 0 / side 1 from its external edges
    Weight gain0 = 0, gain1 = 0;
    Weight inner = 0;
    for (const Neighbor &w : g.neighbors(first)) {
        if (std::ranges::find(ev.boundary, w.id) != ev.boundary.end())
            (side[w.id] == 1 ? gain0 : gain1) += w.attr.weight;
        else
            inner = w.attr.weight;
    }
    const auto k = static_cast<Weight>(members.size());
    Weight best_c0 = 0, best = 0;
    for (Weight c0 = 0; c0 <= k; ++c0) {
        Weight value = c0 * gain0 + (k - c0) * gain1 + inner * c0 * (k - c0);
        if (c0 == 0 || value > best) {
            best = value;
            best_c0 = c0;
        }
    }
    for (Weight i = 0; i < k; ++i)
        side[members[static_cast<std::size_t>(i)]] = i < best_c0 ? 0 : 1;
}

void recolor(const DynamicGraph &g, const ReductionEvent &ev, Side &side) {
    switch (ev.rule) {
    case Rule::R1:
    case Rule::R1c:
        balance_clique(ev, side);
        break;
    case Rule::R2:
    case Rule::R6:
        brute_force(g, side, ev.removed_vertices);
        break;
    case Rule::R3:
    case Rule::R3c:
        repair_near_clique(g, ev, side);
        break;
    case Rule::R5:
    case Rule::R8u:
    case Rule::R8s:
        recolor_twins(g, ev, side);
        break;
    case Rule::R4:
    case Rule::GadgetExpand:
        break;
    }
}

} // namespace

DynamicGraph internal_graph(const Kernel &kernel) {
    DynamicGraph g(kernel.internal_id_bound);
    std::vector<bool> kept(kernel.internal_id_bound, false);
    for (VertexId v : kernel.id_map)
        kept[v] = true;
    for (VertexId v = 0; v < kept.size(); ++v)
        if (!kept[v])
            g.remove_vertex(v);
    for (const Edge &e : kernel.graph.edges())
        g.add_edge(kernel.id_map[e.u], kernel.id_map[e.v], e.attr);
    return g;
}

Cut lift(const Kernel &kernel, const Cut &kernel_cut) {
    if (kernel_cut.side.size() < kernel.id_map.size())
        throw Error(Errc::incomplete_coloring, "kernel cut has " + std::to_string(kernel_cut.side.size()) +
                                                   " entries, kernel has " +
                                                   std::to_string(kernel.id_map.size()) + " vertices");
    Side side(kernel.internal_id_bound, 0);
    for (std::size_t i = 0; i < kernel.id_map.size(); ++i) {
        if (kernel_cut.side[i] > 1)
            throw Error(Errc::incomplete_coloring, "kernel cut side must be 0 or 1");
        side[kernel.id_map[i]] = kernel_cut.side[i];
    }

    DynamicGraph g = internal_graph(kernel);
    for (const ReductionEvent &ev : std::views::reverse(kernel.trace)) {
        undo_event(g, ev);
        recolor(g, ev, side);
    }

    Cut result;
    result.value = cut_value(g, side, Objective::weighted);
    if (kernel.input_signed)
        for (const Edge &e : g.edges())
            result.value += e.attr.weight < 0 ? 1 : 0;
    side.resize(kernel.original_vertices);
    result.side = std::move(side);
    return result;
}

} // namespace mck
