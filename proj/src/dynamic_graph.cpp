#include "mckernel/dynamic_graph.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace mck {

std::string_view to_string(Errc code) {
    switch (code) {
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::self_loop: return "SelfLoop";
    case Errc::zero_weight: return "ZeroWeight";
    case Errc::missing_vertex: return "MissingVertex";
    case Errc::missing_edge: return "MissingEdge";
    case Errc::edge_exists: return "EdgeExists";
    case Errc::unsorted_key: return "UnsortedKey";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::pass_limit_exceeded: return "PassLimitExceeded";
    case Errc::too_large: return "TooLarge";
    case Errc::disconnected: return "Disconnected";
    case Errc::incomplete_coloring: return "IncompleteColoring";
    case Errc::infeasible_params: return "InfeasibleParams";
    case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

Sign sign_for_weight(Weight w) {
    if (w == 1)
        return Sign::minus;
    if (w == -1)
        return Sign::plus;
    return Sign::none;
}

namespace {

std::string pair_str(VertexId u, VertexId v) {
    std::ostringstream os;
    os << "(" << u << ", " << v << ")";
    return os.str();
}

} // namespace

DynamicGraph::DynamicGraph(std::size_t n)
    : adjacency_(n), alive_(n, true), stamp_(n, 0), n_alive_(n) {}

DynamicGraph DynamicGraph::load(std::span<const Edge> edges, std::size_t min_vertices, bool sort) {
    std::size_t n = min_vertices;
    bool labeled = false;
    for (const Edge &e : edges) {
        if (e.u == e.v)
            throw Error(Errc::self_loop, "self-loop at vertex " + std::to_string(e.u));
        if (e.attr.sign == Sign::none && e.attr.weight == 0)
            throw Error(Errc::zero_weight, "zero weight on edge " + pair_str(e.u, e.v));
        labeled = labeled || e.attr.sign != Sign::none;
        n = std::max<std::size_t>(n, std::size_t{std::max(e.u, e.v)} + 1);
    }

    std::vector<std::pair<VertexId, VertexId>> pairs;
    pairs.reserve(edges.size());
    for (const Edge &e : edges)
        pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    std::sort(pairs.begin(), pairs.end());
    auto dup = std::adjacent_find(pairs.begin(), pairs.end());
    if (dup != pairs.end())
        throw Error(Errc::duplicate_edge, "duplicate edge " + pair_str(dup->first, dup->second));

    DynamicGraph g(n);
    g.signed_ = labeled;
    for (const Edge &e : edges) {
        EdgeAttr attr = e.attr;
        if (labeled) {
            // Signed input: the label defines the objective, weights follow it.
            if (attr.sign == Sign::none)
                attr.sign = attr.weight < 0 ? Sign::plus : Sign::minus;
            attr.weight = attr.sign == Sign::plus ? -1 : 1;
        } else {
            attr.sign = Sign::none;
        }
        g.adjacency_[e.u].push_back({e.v, attr});
        g.adjacency_[e.v].push_back({e.u, attr});
    }
    g.m_alive_ = edges.size();
    g.sorted_ = false;
    if (sort)
        g.sort_adjacencies();
    return g;
}

void DynamicGraph::sort_adjacencies() {
    if (sorted_)
        return;
    // Pass 1: for every v and w in N(v), append (v, attr) to bucket w.
    // Pass 2: bucket w lists its sources in ascending v, so re-reading the
    // buckets in order rebuilds each N(v) sorted.
    std::vector<std::vector<Neighbor>> buckets(adjacency_.size());
    for (VertexId v = 0; v < adjacency_.size(); ++v)
        for (const Neighbor &w : adjacency_[v])
            buckets[w.id].push_back({v, w.attr});
    for (auto &list : adjacency_)
        list.clear();
    for (VertexId w = 0; w < buckets.size(); ++w)
        for (const Neighbor &src : buckets[w])
            adjacency_[src.id].push_back({w, src.attr});
    sorted_ = true;
}

void DynamicGraph::require_alive(VertexId v) const {
    if (!alive(v))
        throw Error(Errc::missing_vertex, "vertex " + std::to_string(v) + " is not alive");
}

EdgeAttr DynamicGraph::labeled(EdgeAttr attr) const {
    attr.sign = signed_ ? sign_for_weight(attr.weight) : Sign::none;
    return attr;
}

VertexId DynamicGraph::add_vertex() {
    auto v = static_cast<VertexId>(adjacency_.size());
    adjacency_.emplace_back();
    alive_.push_back(true);
    stamp_.push_back(clock_++);
    ++n_alive_;
    return v;
}

void DynamicGraph::restore_vertex(VertexId v) {
    if (v >= adjacency_.size() || alive_[v])
        throw Error(Errc::missing_vertex, "vertex " + std::to_string(v) + " cannot be restored");
    alive_[v] = true;
    touch(v);
    ++n_alive_;
}

void DynamicGraph::remove_vertex(VertexId v) {
    sort_adjacencies();
    require_alive(v);
    for (const Neighbor &u : adjacency_[v]) {
        auto &list = adjacency_[u.id];
        auto it = std::lower_bound(list.begin(), list.end(), v, by_id);
        list.erase(it);
        touch(u.id);
    }
    m_alive_ -= adjacency_[v].size();
    adjacency_[v].clear();
    adjacency_[v].shrink_to_fit();
    alive_[v] = false;
    touch(v);
    --n_alive_;
}

void DynamicGraph::remove_edge(VertexId u, VertexId v) {
    sort_adjacencies();
    require_alive(u);
    require_alive(v);
    auto &lu = adjacency_[u];
    auto iu = std::lower_bound(lu.begin(), lu.end(), v, by_id);
    if (iu == lu.end() || iu->id != v)
        throw Error(Errc::missing_edge, "missing edge " + pair_str(u, v));
    lu.erase(iu);
    auto &lv = adjacency_[v];
    lv.erase(std::lower_bound(lv.begin(), lv.end(), u, by_id));
    touch(u);
    touch(v);
    --m_alive_;
}

void DynamicGraph::add_edge(VertexId u, VertexId v, EdgeAttr attr) {
    sort_adjacencies();
    require_alive(u);
    require_alive(v);
    if (u == v)
        throw Error(Errc::self_loop, "self-loop at vertex " + std::to_string(u));
    if (attr.weight == 0)
        throw Error(Errc::zero_weight, "zero weight on edge " + pair_str(u, v));
    auto &lu = adjacency_[u];
    auto iu = std::lower_bound(lu.begin(), lu.end(), v, by_id);
    if (iu != lu.end() && iu->id == v)
        throw Error(Errc::edge_exists, "edge exists " + pair_str(u, v));
    attr = labeled(attr);
    lu.insert(iu, {v, attr});
    auto &lv = adjacency_[v];
    lv.insert(std::lower_bound(lv.begin(), lv.end(), u, by_id), {u, attr});
    touch(u);
    touch(v);
    ++m_alive_;
}

std::size_t DynamicGraph::degree(VertexId v) const {
    require_alive(v);
    return adjacency_[v].size();
}

std::span<const Neighbor> DynamicGraph::neighbors(VertexId v) const {
    require_alive(v);
    return adjacency_[v];
}

std::optional<EdgeAttr> DynamicGraph::edge(VertexId u, VertexId v) const {
    if (!alive(u) || !alive(v))
        return std::nullopt;
    const auto &lu = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
    VertexId other = &lu == &adjacency_[u] ? v : u;
    if (!sorted_) {
        auto hit = std::find_if(lu.begin(), lu.end(), [&](const Neighbor &w) { return w.id == other; });
        return hit == lu.end() ? std::nullopt : std::optional<EdgeAttr>(hit->attr);
    }
    auto it = std::lower_bound(lu.begin(), lu.end(), other, by_id);
    if (it == lu.end() || it->id != other)
        return std::nullopt;
    return it->attr;
}

std::vector<VertexId> DynamicGraph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(n_alive_);
    for (VertexId v = 0; v < alive_.size(); ++v)
        if (alive_[v])
            out.push_back(v);
    return out;
}

std::vector<Edge> DynamicGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_alive_);
    for (VertexId u = 0; u < adjacency_.size(); ++u)
        for (const Neighbor &w : adjacency_[u])
            if (u < w.id)
                out.push_back({u, w.id, w.attr});
    if (!sorted_)
        std::sort(out.begin(), out.end(),
                  [](const Edge &a, const Edge &b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    return out;
}

void DynamicGraph::set_signed_mode(bool on) {
    if (signed_ == on)
        return;
    signed_ = on;
    for (auto &list : adjacency_)
        for (Neighbor &w : list)
            w.attr = labeled(w.attr);
}

std::size_t DynamicGraph::num_plus_edges() const {
    std::size_t count = 0;
    for (const auto &list : adjacency_)
        for (const Neighbor &w : list)
            count += w.attr.sign == Sign::plus;
    return count / 2;
}

} // namespace mck
