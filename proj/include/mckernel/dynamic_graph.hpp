#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mckernel/types.hpp"

namespace mck {

/***
 * Mutable simple graph with integer edge weights and optional sign labels.
 *
 * Vertex ids are dense in [0, id_bound()). Removed vertices are tombstoned and
 * their ids are never reused, so recorded reduction events stay valid for
 * solution lifting. New vertices (weight gadgets) get fresh ids at the end.
 *
 * Every adjacency list is kept sorted by neighbor id. Each mutation that
 * changes N(v) stamps T(v) with the current clock and advances the clock.
 */
class DynamicGraph {
public:
    DynamicGraph() = default;
    explicit DynamicGraph(std::size_t n);

    /***
     * Builds a graph from an edge list. Vertices [0, min_vertices) exist even
     * if isolated. Throws SelfLoop, DuplicateEdge or ZeroWeight.
     * With sort = false the adjacencies keep input order; edits require a
     * subsequent sort_adjacencies().
     */
    static DynamicGraph load(std::span<const Edge> edges, std::size_t min_vertices = 0, bool sort = true);

    // Bucket pass over an auxiliary array indexed by neighbor id: O(|V| + |E|).
    void sort_adjacencies();

    VertexId add_vertex();
    void restore_vertex(VertexId v);
    void remove_vertex(VertexId v);
    void remove_edge(VertexId u, VertexId v);
    void add_edge(VertexId u, VertexId v, EdgeAttr attr = {});

    std::size_t id_bound() const { return adjacency_.size(); }
    std::size_t num_vertices() const { return n_alive_; }
    std::size_t num_edges() const { return m_alive_; }
    bool alive(VertexId v) const { return v < alive_.size() && alive_[v]; }

    std::size_t degree(VertexId v) const;
    std::span<const Neighbor> neighbors(VertexId v) const;
    std::optional<EdgeAttr> edge(VertexId u, VertexId v) const;
    bool has_edge(VertexId u, VertexId v) const { return edge(u, v).has_value(); }

    std::vector<VertexId> vertices() const;
    // Every edge once with u < v, ascending by (u, v).
    std::vector<Edge> edges() const;

    bool is_sorted() const { return sorted_; }

    std::uint64_t timestamp(VertexId v) const { return stamp_[v]; }
    std::uint64_t clock() const { return clock_; }

    /***
     * Signed mode labels every weight +1 edge "minus" and every weight -1 edge
     * "plus"; other weights stay unlabeled. Leaving signed mode drops labels.
     */
    void set_signed_mode(bool on);
    bool signed_mode() const { return signed_; }

    // Number of edges labeled "plus".
    std::size_t num_plus_edges() const;

private:
    void require_alive(VertexId v) const;
    void touch(VertexId v) { stamp_[v] = clock_++; }
    EdgeAttr labeled(EdgeAttr attr) const;
    static bool by_id(const Neighbor &a, VertexId id) { return a.id < id; }

    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<bool> alive_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t clock_ = 1;
    std::size_t n_alive_ = 0;
    std::size_t m_alive_ = 0;
    bool sorted_ = true;
    bool signed_ = false;
};

// Attribute with the sign label implied by a weight in signed mode.
Sign sign_for_weight(Weight w);

} // namespace mck
