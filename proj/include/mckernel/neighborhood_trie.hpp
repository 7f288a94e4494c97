#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mckernel/dynamic_graph.hpp"

namespace mck {

using TrieKey = std::uint64_t;

/***
 * Trie over strictly ascending integer sequences. Keys sharing a prefix share
 * the node path up to the first differing position; each node may carry the
 * values inserted under the key ending there.
 */
class NeighborhoodTrie {
public:
    NeighborhoodTrie();

    void insert(std::span<const TrieKey> key, VertexId val);
    std::vector<VertexId> retrieve(std::span<const TrieKey> key) const;

    std::size_t node_count() const { return nodes_.size(); }

    // Calls f(values) for every node holding at least one value, in insertion
    // order of the nodes.
    template <typename F>
    void for_each_bucket(F &&f) const {
        for (const Node &node : nodes_)
            if (!node.values.empty())
                f(std::span<const VertexId>(node.values));
    }

private:
    struct Node {
        std::map<TrieKey, std::uint32_t> children;
        std::vector<VertexId> values;
    };

    std::vector<Node> nodes_;
};

struct CandidateGroup {
    std::vector<VertexId> members;  // X, ascending
    std::vector<VertexId> external; // N(X), ascending
};

/***
 * Key of N(v) ∪ {v}. Unsigned keys are the plain ids. Signed keys store
 * (id << 1) | bit with bit = 1 for a "plus" (negative) edge, and v itself as
 * (v << 1), so equal signed keys also force all edges inside the group to be
 * "minus".
 */
std::vector<TrieKey> closed_neighborhood_key(const DynamicGraph &g, VertexId v, bool signed_keys);

/***
 * Groups vertices with identical closed neighborhoods. Only groups with at
 * least two members are returned, sorted by smallest member. When candidates
 * is non-empty only those vertices are inserted.
 *
 * Any group from equal closed neighborhoods is a clique and satisfies
 * |N(X)| = deg(x) - |X| + 1 for each member x.
 */
std::vector<CandidateGroup> group_twins(const DynamicGraph &g, bool signed_keys,
                                        std::span<const VertexId> candidates = {});

bool verify_clique(const DynamicGraph &g, std::span<const VertexId> vertices);

} // namespace mck
