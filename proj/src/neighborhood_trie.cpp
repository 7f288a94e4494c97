#include "mckernel/neighborhood_trie.hpp"

#include <algorithm>
#include <functional>

namespace mck {

NeighborhoodTrie::NeighborhoodTrie() : nodes_(1) {}

void NeighborhoodTrie::insert(std::span<const TrieKey> key, VertexId val) {
    if (std::adjacent_find(key.begin(), key.end(), std::greater_equal<>()) != key.end())
        throw Error(Errc::unsorted_key, "trie key must be strictly ascending");
    std::uint32_t node = 0;
    for (TrieKey k : key) {
        auto it = nodes_[node].children.find(k);
        if (it == nodes_[node].children.end()) {
            auto child = static_cast<std::uint32_t>(nodes_.size());
            nodes_[node].children.emplace(k, child);
            nodes_.emplace_back();
            node = child;
        } else {
            node = it->second;
        }
    }
    nodes_[node].values.push_back(val);
}

std::vector<VertexId> NeighborhoodTrie::retrieve(std::span<const TrieKey> key) const {
    std::uint32_t node = 0;
    for (TrieKey k : key) {
        auto it = nodes_[node].children.find(k);
        if (it == nodes_[node].children.end())
            return {};
        node = it->second;
    }
    return nodes_[node].values;
}

std::vector<TrieKey> closed_neighborhood_key(const DynamicGraph &g, VertexId v, bool signed_keys) {
    auto nbrs = g.neighbors(v);
    std::vector<TrieKey> key;
    key.reserve(nbrs.size() + 1);
    bool placed = false;
    for (const Neighbor &w : nbrs) {
        if (!placed && v < w.id) {
            key.push_back(signed_keys ? TrieKey{v} << 1 : TrieKey{v});
            placed = true;
        }
        if (signed_keys) {
            bool plus = w.attr.sign == Sign::plus || (w.attr.sign == Sign::none && w.attr.weight < 0);
            key.push_back((TrieKey{w.id} << 1) | TrieKey{plus});
        } else {
            key.push_back(w.id);
        }
    }
    if (!placed)
        key.push_back(signed_keys ? TrieKey{v} << 1 : TrieKey{v});
    return key;
}

namespace {

// A closed twin of v is a neighbor, so it has the same degree as v. Vertices
// without such a neighbor cannot be in any group.
bool may_have_twin(const DynamicGraph &g, VertexId v) {
    auto d = g.degree(v);
    for (const Neighbor &w : g.neighbors(v))
        if (g.degree(w.id) == d)
            return true;
    return false;
}

} // namespace

std::vector<CandidateGroup> group_twins(const DynamicGraph &g, bool signed_keys,
                                        std::span<const VertexId> candidates) {
    std::vector<VertexId> all;
    if (candidates.empty()) {
        all = g.vertices();
        candidates = all;
    }

    NeighborhoodTrie trie;
    for (VertexId v : candidates) {
        if (!g.alive(v) || !may_have_twin(g, v))
            continue;
        auto key = closed_neighborhood_key(g, v, signed_keys);
        trie.insert(key, v);
    }

    std::vector<CandidateGroup> groups;
    trie.for_each_bucket([&](std::span<const VertexId> bucket) {
        if (bucket.size() < 2)
            return;
        CandidateGroup group;
        group.members.assign(bucket.begin(), bucket.end());
        std::sort(group.members.begin(), group.members.end());
        group.members.erase(std::unique(group.members.begin(), group.members.end()), group.members.end());
        if (group.members.size() < 2)
            return;
        for (const Neighbor &w : g.neighbors(group.members.front()))
            if (!std::binary_search(group.members.begin(), group.members.end(), w.id))
                group.external.push_back(w.id);
        groups.push_back(std::move(group));
    });
    std::sort(groups.begin(), groups.end(),
              [](const CandidateGroup &a, const CandidateGroup &b) { return a.members.front() < b.members.front(); });
    return groups;
}

bool verify_clique(const DynamicGraph &g, std::span<const VertexId> vertices) {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!g.alive(vertices[i]))
            return false;
        if (g.degree(vertices[i]) + 1 < vertices.size())
            return false;
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (!g.has_edge(vertices[i], vertices[j]))
                return false;
    }
    return true;
}

} // namespace mck
