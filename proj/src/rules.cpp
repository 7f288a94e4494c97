#include "mckernel/rules.hpp"

#include <algorithm>
#include <string>

namespace mck {

namespace {

[[noreturn]] void violated(const std::string &rule, const std::string &why) {
    throw Error(Errc::precondition_violated, rule + ": " + why);
}

Edge make_edge(const DynamicGraph &g, VertexId u, VertexId v, Weight w) {
    EdgeAttr attr{w, g.signed_mode() ? sign_for_weight(w) : Sign::none};
    return u < v ? Edge{u, v, attr} : Edge{v, u, attr};
}

Edge stored_edge(const DynamicGraph &g, VertexId u, VertexId v) {
    auto attr = g.edge(u, v);
    if (!attr)
        throw Error(Errc::missing_edge, "missing edge");
    return u < v ? Edge{u, v, *attr} : Edge{v, u, *attr};
}

std::vector<VertexId> sorted_set(std::span<const VertexId> vs) {
    std::vector<VertexId> out(vs.begin(), vs.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<VertexId> closed_neighborhood(const DynamicGraph &g, VertexId v) {
    std::vector<VertexId> s;
    s.reserve(g.degree(v) + 1);
    for (const Neighbor &w : g.neighbors(v))
        s.push_back(w.id);
    s.insert(std::lower_bound(s.begin(), s.end(), v), v);
    return s;
}

// All edges of G[S], u < v.
std::vector<Edge> induced_edges(const DynamicGraph &g, std::span<const VertexId> S) {
    std::vector<Edge> out;
    for (VertexId u : S)
        for (const Neighbor &w : g.neighbors(u))
            if (u < w.id && std::binary_search(S.begin(), S.end(), w.id))
                out.push_back({u, w.id, w.attr});
    return out;
}

// Every edge incident to a vertex of removed, listed once.
std::vector<Edge> incident_edges(const DynamicGraph &g, std::span<const VertexId> removed) {
    std::vector<Edge> out;
    for (VertexId u : removed)
        for (const Neighbor &w : g.neighbors(u)) {
            bool other_removed = std::find(removed.begin(), removed.end(), w.id) != removed.end();
            if (other_removed && w.id < u)
                continue;
            out.push_back(u < w.id ? Edge{u, w.id, w.attr} : Edge{w.id, u, w.attr});
        }
    return out;
}

std::size_t ceil_half(std::size_t s) { return (s + 1) / 2; }

bool all_alive(const DynamicGraph &g, std::span<const VertexId> vs) {
    return std::all_of(vs.begin(), vs.end(), [&](VertexId v) { return g.alive(v); });
}

bool unit_incident(const DynamicGraph &g, VertexId v) {
    for (const Neighbor &w : g.neighbors(v))
        if (w.attr.weight != 1)
            return false;
    return true;
}

bool signed_incident(const DynamicGraph &g, VertexId v) {
    for (const Neighbor &w : g.neighbors(v))
        if (w.attr.weight != 1 && w.attr.weight != -1)
            return false;
    return true;
}

} // namespace

Weight beta_complete(std::size_t s) {
    return static_cast<Weight>(ceil_half(s)) * static_cast<Weight>(s / 2);
}

std::optional<Weight> uniform_clique_weight(const DynamicGraph &g, std::span<const VertexId> clique) {
    std::optional<Weight> c;
    for (std::size_t i = 0; i < clique.size(); ++i) {
        if (!g.alive(clique[i]) || g.degree(clique[i]) + 1 < clique.size())
            return std::nullopt;
        for (std::size_t j = i + 1; j < clique.size(); ++j) {
            auto attr = g.edge(clique[i], clique[j]);
            if (!attr)
                return std::nullopt;
            if (c && *c != attr->weight)
                return std::nullopt;
            c = attr->weight;
        }
    }
    return c.value_or(1);
}

std::vector<VertexId> internal_vertices(const DynamicGraph &g, std::span<const VertexId> members) {
    auto S = sorted_set(members);
    std::vector<VertexId> out;
    for (VertexId v : S) {
        bool internal = true;
        for (const Neighbor &w : g.neighbors(v))
            if (!std::binary_search(S.begin(), S.end(), w.id)) {
                internal = false;
                break;
            }
        if (internal)
            out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ReductionEvent apply_rule1(DynamicGraph &g, std::span<const VertexId> clique, bool scaled) {
    const std::string name = scaled ? "R1c" : "R1";
    auto S = sorted_set(clique);
    if (S.empty() || !all_alive(g, S))
        violated(name, "clique must be a non-empty set of alive vertices");
    auto c = uniform_clique_weight(g, S);
    if (!c)
        violated(name, "not a clique with uniform edge weights");
    if (!scaled && *c != 1)
        violated(name, "clique edges must have weight 1");
    if (scaled && *c <= 0)
        violated(name, "clique weight must be positive");
    auto internal = internal_vertices(g, S);
    std::size_t external = S.size() - internal.size();
    if (external > ceil_half(S.size()))
        violated(name, "too many external vertices");

    ReductionEvent ev;
    ev.rule = scaled ? Rule::R1c : Rule::R1;
    ev.removed_vertices = internal;
    ev.removed_edges = induced_edges(g, S);
    for (VertexId v : S)
        if (!std::binary_search(internal.begin(), internal.end(), v))
            ev.boundary.push_back(v);
    ev.offset = *c * beta_complete(S.size());
    apply_event(g, ev);
    return ev;
}

ReductionEvent apply_rule2(DynamicGraph &g, const std::array<VertexId, 4> &path) {
    auto [a2, a, b, b2] = path;
    if (!all_alive(g, path))
        violated("R2", "path vertices must be alive");
    if (a2 == b2 || a2 == a || a2 == b || b2 == a || b2 == b || a == b)
        violated("R2", "path vertices must be distinct");
    if (g.degree(a) != 2 || g.degree(b) != 2)
        violated("R2", "inner vertices must have degree 2");
    auto e1 = g.edge(a2, a), e2 = g.edge(a, b), e3 = g.edge(b, b2);
    if (!e1 || !e2 || !e3)
        violated("R2", "not a path");
    if (e1->weight != 1 || e2->weight != 1 || e3->weight != 1)
        violated("R2", "path edges must have weight 1");
    if (g.has_edge(a2, b2))
        violated("R2", "path is not induced");

    ReductionEvent ev;
    ev.rule = Rule::R2;
    ev.removed_vertices = {a, b};
    ev.removed_edges = {stored_edge(g, a2, a), stored_edge(g, a, b), stored_edge(g, b, b2)};
    ev.added_edges = {make_edge(g, a2, b2, 1)};
    ev.boundary = {a2, b2};
    ev.offset = 2;
    apply_event(g, ev);
    return ev;
}

ReductionEvent apply_rule3(DynamicGraph &g, std::span<const VertexId> near_clique, bool scaled) {
    const std::string name = scaled ? "R3c" : "R3";
    auto S = sorted_set(near_clique);
    if (S.size() < 3 || !all_alive(g, S))
        violated(name, "near-clique needs at least 3 alive vertices");
    std::optional<std::pair<VertexId, VertexId>> missing;
    std::optional<Weight> c;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j) {
            auto attr = g.edge(S[i], S[j]);
            if (!attr) {
                if (missing)
                    violated(name, "more than one edge missing");
                missing = std::pair{S[i], S[j]};
            } else {
                if (c && *c != attr->weight)
                    violated(name, "edge weights are not uniform");
                c = attr->weight;
            }
        }
    if (!missing)
        violated(name, "set is already a clique");
    if (!scaled && *c != 1)
        violated(name, "edges must have weight 1");
    if (scaled && *c <= 0)
        violated(name, "edge weight must be positive");
    auto internal = internal_vertices(g, S);
    auto is_internal = [&](VertexId v) { return std::binary_search(internal.begin(), internal.end(), v); };
    if (!is_internal(missing->first) || !is_internal(missing->second))
        violated(name, "missing edge must join two internal vertices");
    if (S.size() % 2 == 0 && internal.size() <= 2)
        violated(name, "needs |S| odd or more than two internal vertices");

    ReductionEvent ev;
    ev.rule = scaled ? Rule::R3c : Rule::R3;
    ev.added_edges = {make_edge(g, missing->first, missing->second, *c)};
    ev.boundary = S;
    ev.offset = 0;
    apply_event(g, ev);
    return ev;
}

ReductionEvent apply_rule4(DynamicGraph &g, std::span<const VertexId> clique,
                           std::optional<std::pair<VertexId, VertexId>> edge) {
    auto S = sorted_set(clique);
    if (S.empty() || !all_alive(g, S))
        violated("R4", "clique must be a non-empty set of alive vertices");
    auto c = uniform_clique_weight(g, S);
    if (!c || *c != 1)
        violated("R4", "not a clique with unit weights");
    auto internal = internal_vertices(g, S);
    if (internal.size() < 2)
        violated("R4", "needs two internal vertices");
    if (S.size() % 2 == 0 && internal.size() <= 2)
        violated("R4", "needs |S| odd or more than two internal vertices");

    auto [u, v] = edge.value_or(std::pair{internal[0], internal[1]});
    auto is_internal = [&](VertexId x) { return std::binary_search(internal.begin(), internal.end(), x); };
    if (u == v || !is_internal(u) || !is_internal(v))
        violated("R4", "removed edge must join two internal vertices");

    ReductionEvent ev;
    ev.rule = Rule::R4;
    ev.removed_edges = {stored_edge(g, u, v)};
    ev.boundary = S;
    ev.offset = 0;
    apply_event(g, ev);
    return ev;
}

std::optional<CandidateGroup> refresh_group(const DynamicGraph &g, std::span<const VertexId> members,
                                            bool signed_keys) {
    auto X = sorted_set(members);
    if (X.empty() || !all_alive(g, X))
        return std::nullopt;
    auto key = closed_neighborhood_key(g, X.front(), signed_keys);
    for (std::size_t i = 1; i < X.size(); ++i)
        if (closed_neighborhood_key(g, X[i], signed_keys) != key)
            return std::nullopt;
    CandidateGroup group;
    group.members = X;
    for (const Neighbor &w : g.neighbors(X.front()))
        if (!std::binary_search(X.begin(), X.end(), w.id))
            group.external.push_back(w.id);
    return group;
}

std::optional<Rule> classify_twin_group(const DynamicGraph &g, const CandidateGroup &group, bool signed_mode) {
    auto fresh = refresh_group(g, group.members, signed_mode);
    if (!fresh)
        return std::nullopt;
    std::size_t k = fresh->members.size();
    std::size_t d = fresh->external.size();
    if (signed_mode) {
        for (VertexId x : fresh->members)
            if (!signed_incident(g, x))
                return std::nullopt;
        if (k > std::max<std::size_t>(d, 1))
            return Rule::R8s;
        return std::nullopt;
    }
    for (VertexId x : fresh->members)
        if (!unit_incident(g, x))
            return std::nullopt;
    if (k > std::max<std::size_t>(d, 1))
        return Rule::R8u;
    if (k == d && d >= 1)
        return Rule::R5;
    return std::nullopt;
}

std::optional<CandidateGroup> pendant_group(const DynamicGraph &g, VertexId x) {
    if (!g.alive(x) || g.degree(x) != 1)
        return std::nullopt;
    const Neighbor &u = g.neighbors(x).front();
    if (u.attr.weight != 1)
        return std::nullopt;
    return CandidateGroup{{x}, {u.id}};
}

namespace {

ReductionEvent remove_twins(DynamicGraph &g, const CandidateGroup &group, Rule rule, std::size_t count, Weight offset) {
    ReductionEvent ev;
    ev.rule = rule;
    ev.removed_vertices.assign(group.members.begin(), group.members.begin() + static_cast<std::ptrdiff_t>(count));
    ev.removed_edges = incident_edges(g, ev.removed_vertices);
    ev.boundary = group.external;
    ev.offset = offset;
    apply_event(g, ev);
    return ev;
}

} // namespace

ReductionEvent apply_rule5(DynamicGraph &g, const CandidateGroup &group) {
    auto fresh = group.members.size() == 1 ? pendant_group(g, group.members.front())
                                           : refresh_group(g, group.members, false);
    if (!fresh || (fresh->members.size() > 1 && classify_twin_group(g, *fresh, false) != Rule::R5))
        violated("R5", "needs a unit-weight twin clique with |X| = |N(X)| >= 1");
    return remove_twins(g, *fresh, Rule::R5, 1, static_cast<Weight>(fresh->members.size()));
}

ReductionEvent apply_rule8u(DynamicGraph &g, const CandidateGroup &group) {
    auto fresh = refresh_group(g, group.members, false);
    if (!fresh || classify_twin_group(g, *fresh, false) != Rule::R8u)
        violated("R8u", "needs a unit-weight twin clique with |X| > max(|N(X)|, 1)");
    auto deg = static_cast<Weight>(g.degree(fresh->members.front()));
    return remove_twins(g, *fresh, Rule::R8u, 2, deg);
}

ReductionEvent apply_rule8s(DynamicGraph &g, const CandidateGroup &group) {
    if (!g.signed_mode())
        violated("R8s", "graph must be in signed mode");
    auto fresh = refresh_group(g, group.members, true);
    if (!fresh || classify_twin_group(g, *fresh, true) != Rule::R8s)
        violated("R8s", "needs an all-minus signed twin clique with |X| > max(|N(X)|, 1)");
    VertexId x1 = fresh->members.front();
    Weight deg = static_cast<Weight>(g.degree(x1));
    Weight plus = 0;
    for (const Neighbor &w : g.neighbors(x1))
        plus += w.attr.weight < 0;
    // Signed offset is deg(x1); both removed vertices drop `plus` plus-edges.
    return remove_twins(g, *fresh, Rule::R8s, 2, deg - 2 * plus);
}

ReductionEvent apply_rule6(DynamicGraph &g, const std::array<VertexId, 3> &path) {
    auto [a, b, a2] = path;
    if (!all_alive(g, path) || a == a2 || a == b || b == a2)
        violated("R6", "path vertices must be alive and distinct");
    if (g.degree(b) != 2)
        violated("R6", "middle vertex must have degree 2");
    auto e1 = g.edge(a, b), e2 = g.edge(b, a2);
    if (!e1 || !e2)
        violated("R6", "not a path");
    Weight w1 = e1->weight, w2 = e2->weight;
    Weight gain = std::max<Weight>(0, w1 + w2);
    Weight merged = std::max(w1, w2) - gain;

    ReductionEvent ev;
    ev.rule = Rule::R6;
    ev.removed_vertices = {b};
    ev.removed_edges = {stored_edge(g, a, b), stored_edge(g, b, a2)};
    if (auto existing = g.edge(a, a2)) {
        ev.removed_edges.push_back(stored_edge(g, a, a2));
        merged += existing->weight;
    }
    if (merged != 0)
        ev.added_edges = {make_edge(g, a, a2, merged)};
    ev.boundary = {a, a2};
    ev.offset = gain;
    apply_event(g, ev);
    return ev;
}

std::optional<std::vector<VertexId>> find_rule1(const DynamicGraph &g, VertexId v, bool scaled) {
    if (!g.alive(v))
        return std::nullopt;
    std::size_t d = g.degree(v);
    for (const Neighbor &w : g.neighbors(v))
        if (g.degree(w.id) < d)
            return std::nullopt;
    auto S = closed_neighborhood(g, v);
    auto c = uniform_clique_weight(g, S);
    if (!c || (!scaled && *c != 1) || (scaled && *c <= 0))
        return std::nullopt;
    std::size_t external = 0;
    for (VertexId u : S)
        external += g.degree(u) > d;
    if (external > ceil_half(S.size()))
        return std::nullopt;
    return S;
}

std::optional<std::array<VertexId, 4>> find_rule2(const DynamicGraph &g, VertexId v) {
    if (!g.alive(v) || g.degree(v) != 2 || !unit_incident(g, v))
        return std::nullopt;
    auto na = g.neighbors(v);
    for (int i = 0; i < 2; ++i) {
        VertexId b = na[i].id;
        VertexId a2 = na[1 - i].id;
        if (g.degree(b) != 2 || !unit_incident(g, b))
            continue;
        auto nb = g.neighbors(b);
        VertexId b2 = nb[0].id == v ? nb[1].id : nb[0].id;
        if (a2 == b2 || g.has_edge(a2, b2))
            continue;
        return std::array<VertexId, 4>{a2, v, b, b2};
    }
    return std::nullopt;
}

std::optional<std::vector<VertexId>> find_rule3(const DynamicGraph &g, VertexId v, bool scaled) {
    if (!g.alive(v) || g.degree(v) < 2)
        return std::nullopt;
    auto S = closed_neighborhood(g, v);
    for (VertexId u : S)
        if (g.degree(u) + 2 < S.size())
            return std::nullopt;
    std::optional<std::pair<VertexId, VertexId>> missing;
    std::optional<Weight> c;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j) {
            auto attr = g.edge(S[i], S[j]);
            if (!attr) {
                if (missing)
                    return std::nullopt;
                missing = std::pair{S[i], S[j]};
            } else {
                if (c && *c != attr->weight)
                    return std::nullopt;
                c = attr->weight;
            }
        }
    if (!missing || (!scaled && *c != 1) || (scaled && *c <= 0))
        return std::nullopt;
    // Internal: N[u] inside S. S = N[v], so u is internal iff deg(u) equals
    // |S| - 1, or |S| - 2 for the two endpoints of the missing edge.
    std::size_t internal = 0;
    for (VertexId u : S) {
        bool endpoint = u == missing->first || u == missing->second;
        std::size_t full = S.size() - (endpoint ? 2 : 1);
        if (g.degree(u) == full)
            ++internal;
        else if (endpoint)
            return std::nullopt;
    }
    if (S.size() % 2 == 0 && internal <= 2)
        return std::nullopt;
    return S;
}

std::optional<std::vector<VertexId>> find_rule4(const DynamicGraph &g, VertexId v) {
    if (!g.alive(v) || g.degree(v) == 0)
        return std::nullopt;
    std::size_t d = g.degree(v);
    for (const Neighbor &w : g.neighbors(v))
        if (g.degree(w.id) < d)
            return std::nullopt;
    auto S = closed_neighborhood(g, v);
    auto c = uniform_clique_weight(g, S);
    if (!c || *c != 1)
        return std::nullopt;
    std::size_t internal = 0;
    for (VertexId u : S)
        internal += g.degree(u) == d;
    if (internal < 2 || (S.size() % 2 == 0 && internal <= 2))
        return std::nullopt;
    return S;
}

std::optional<std::array<VertexId, 3>> find_rule6(const DynamicGraph &g, VertexId v, bool unit_result) {
    if (!g.alive(v) || g.degree(v) != 2)
        return std::nullopt;
    auto nb = g.neighbors(v);
    VertexId a = nb[0].id, a2 = nb[1].id;
    if (unit_result) {
        Weight w1 = nb[0].attr.weight, w2 = nb[1].attr.weight;
        Weight merged = std::max(w1, w2) - std::max<Weight>(0, w1 + w2);
        if (auto existing = g.edge(a, a2))
            merged += existing->weight;
        if (merged < -1 || merged > 1)
            return std::nullopt;
    }
    return std::array<VertexId, 3>{a, v, a2};
}

} // namespace mck
