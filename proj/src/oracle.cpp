#include "mckernel/oracle.hpp"

#include <bit>
#include <chrono>
#include <numeric>
#include <random>
#include <string>

namespace mck {

namespace {

// Contribution of an edge as (weight if cut) + constant.
struct EdgeGain {
    Weight if_cut;
    Weight constant;
};

EdgeGain edge_gain(const EdgeAttr &attr, Objective objective) {
    switch (objective) {
    case Objective::unweighted:
        return {1, 0};
    case Objective::weighted:
        return {attr.weight, 0};
    case Objective::signed_cut:
        if (attr.sign == Sign::plus)
            return {-1, 1};
        if (attr.sign == Sign::minus)
            return {1, 0};
        return {attr.weight, 0};
    }
    return {0, 0};
}

std::vector<std::vector<VertexId>> components(const DynamicGraph &g) {
    std::vector<std::vector<VertexId>> out;
    std::vector<bool> seen(g.id_bound(), false);
    for (VertexId s : g.vertices()) {
        if (seen[s])
            continue;
        std::vector<VertexId> comp{s};
        seen[s] = true;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (const Neighbor &w : g.neighbors(comp[i]))
                if (!seen[w.id]) {
                    seen[w.id] = true;
                    comp.push_back(w.id);
                }
        out.push_back(std::move(comp));
    }
    return out;
}

} // namespace

Weight cut_value(const DynamicGraph &g, const std::vector<std::uint8_t> &side, Objective objective) {
    Weight total = 0;
    for (const Edge &e : g.edges()) {
        auto gain = edge_gain(e.attr, objective);
        total += gain.constant + (side.at(e.u) != side.at(e.v) ? gain.if_cut : 0);
    }
    return total;
}

Cut beta_exact(const DynamicGraph &g, Objective objective, const std::vector<std::int8_t> &fixed,
               std::size_t cap) {
    Cut cut;
    cut.side.assign(g.id_bound(), 0);
    auto pinned = [&](VertexId v) { return v < fixed.size() && fixed[v] >= 0; };

    for (const auto &comp : components(g)) {
        std::vector<VertexId> free;
        bool constrained = false;
        for (VertexId v : comp) {
            if (pinned(v)) {
                cut.side[v] = static_cast<std::uint8_t>(fixed[v]);
                constrained = true;
            } else {
                free.push_back(v);
            }
        }
        if (free.size() > cap)
            throw Error(Errc::too_large, "component with " + std::to_string(free.size()) +
                                             " free vertices exceeds exact cap " + std::to_string(cap));
        if (free.empty())
            continue;

        // Local adjacency of the free vertices: (neighbor id, weight if cut).
        std::vector<std::vector<std::pair<VertexId, Weight>>> adj(free.size());
        for (std::size_t i = 0; i < free.size(); ++i)
            for (const Neighbor &w : g.neighbors(free[i]))
                adj[i].emplace_back(w.id, edge_gain(w.attr, objective).if_cut);

        std::size_t bits = constrained ? free.size() : free.size() - 1;
        std::size_t offset = constrained ? 0 : 1; // free[0] stays on side 0
        Weight current = 0;
        for (VertexId v : comp)
            for (const Neighbor &w : g.neighbors(v))
                if (v < w.id && cut.side[v] != cut.side[w.id])
                    current += edge_gain(w.attr, objective).if_cut;
        Weight best = current;
        std::uint64_t best_code = 0;
        std::uint64_t limit = std::uint64_t{1} << bits;
        for (std::uint64_t i = 1; i < limit; ++i) {
            std::size_t idx = static_cast<std::size_t>(std::countr_zero(i)) + offset;
            VertexId v = free[idx];
            Weight delta = 0;
            for (auto [u, w] : adj[idx])
                delta += cut.side[v] == cut.side[u] ? w : -w;
            current += delta;
            cut.side[v] ^= 1;
            if (current > best) {
                best = current;
                best_code = i ^ (i >> 1);
            }
        }
        for (std::size_t b = 0; b < bits; ++b)
            cut.side[free[b + offset]] = static_cast<std::uint8_t>((best_code >> b) & 1);
        if (!constrained)
            cut.side[free[0]] = 0;
    }
    cut.value = cut_value(g, cut.side, objective);
    return cut;
}

Rational edwards_erdos(const DynamicGraph &g) {
    if (g.num_vertices() == 0 || components(g).size() != 1)
        throw Error(Errc::disconnected, "Edwards-Erdos bound needs a connected non-empty graph");
    Rational r{2 * static_cast<std::int64_t>(g.num_edges()) + static_cast<std::int64_t>(g.num_vertices()) - 1, 4};
    auto d = std::gcd(r.num, r.den);
    if (d > 1) {
        r.num /= d;
        r.den /= d;
    }
    return r;
}

LocalSearchResult local_search(const DynamicGraph &g, Objective objective, double time_budget_seconds,
                               std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

    LocalSearchResult result;
    std::mt19937_64 rng(seed);
    result.cut.side.assign(g.id_bound(), 0);
    for (VertexId v : g.vertices())
        result.cut.side[v] = static_cast<std::uint8_t>(rng() & 1);
    auto &side = result.cut.side;
    Weight value = cut_value(g, side, objective);
    result.samples.emplace_back(elapsed(), value);

    const auto vertices = g.vertices();
    bool improved = time_budget_seconds > 0;
    while (improved && elapsed() < time_budget_seconds) {
        improved = false;
        for (VertexId v : vertices) {
            Weight delta = 0;
            for (const Neighbor &w : g.neighbors(v)) {
                Weight c = edge_gain(w.attr, objective).if_cut;
                delta += side[v] == side[w.id] ? c : -c;
            }
            if (delta > 0) {
                side[v] ^= 1;
                value += delta;
                improved = true;
            }
        }
        result.samples.emplace_back(elapsed(), value);
        if (!improved)
            result.local_optimum = true;
    }
    result.cut.value = value;
    return result;
}

} // namespace mck
