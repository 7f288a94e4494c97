#include <doctest.h>

#include <algorithm>
#include <functional>

#include "mckernel/neighborhood_trie.hpp"
#include "mckernel/rules.hpp"
#include "test_support.hpp"

using namespace mck;
using namespace mck::testing;

namespace {

Errc error_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("no error thrown");
    return Errc::parse_error;
}

// Vertices of S with a neighbor outside S.
std::size_t naive_external(const DynamicGraph &g, const std::vector<VertexId> &S) {
    std::size_t count = 0;
    for (VertexId v : S)
        for (const Neighbor &w : g.neighbors(v))
            if (std::ranges::find(S, w.id) == S.end()) {
                ++count;
                break;
            }
    return count;
}

std::size_t naive_missing(const DynamicGraph &g, const std::vector<VertexId> &S) {
    std::size_t missing = 0;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j)
            missing += !g.has_edge(S[i], S[j]);
    return missing;
}

bool unit_weights(const DynamicGraph &g, const std::vector<VertexId> &S) {
    for (VertexId v : S)
        for (const Neighbor &w : g.neighbors(v))
            if (w.attr.weight != 1)
                return false;
    return true;
}

// Applies a reduction to a copy and checks beta(pre) = beta(post) + offset,
// then checks that undoing restores the graph.
void check_reduction(const DynamicGraph &g, const std::function<ReductionEvent(DynamicGraph &)> &apply) {
    DynamicGraph h = g;
    ReductionEvent ev = apply(h);
    Weight before = beta(g);
    Weight after = beta(h);
    if (g.signed_mode())
        CHECK(before == after + signed_offset(ev));
    else
        CHECK(before == after + ev.offset);
    undo_event(h, ev);
    CHECK(h.edges() == g.edges());
    CHECK(h.num_vertices() == g.num_vertices());
}

} // namespace

TEST_CASE("rule 1 witnesses") {
    auto k5 = complete_graph(5);
    std::vector<VertexId> all{0, 1, 2, 3, 4};
    DynamicGraph h = k5;
    auto ev = apply_rule1(h, all);
    CHECK(ev.offset == 6);
    CHECK(h.num_vertices() == 0);

    auto g = from_pairs(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {1, 5}});
    std::vector<VertexId> S{0, 1, 2, 3};
    h = g;
    ev = apply_rule1(h, S);
    CHECK(ev.offset == 4);
    CHECK(h.num_vertices() == 4);
    CHECK(h.num_edges() == 2);
    CHECK(beta(g) == beta(h) + 4);

    auto tri = from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}, {2, 5}});
    std::vector<VertexId> T{0, 1, 2};
    CHECK(error_of([&] { apply_rule1(tri, T); }) == Errc::precondition_violated);
}

TEST_CASE("rule 1 with uniform weight") {
    std::vector<Edge> edges{{0, 1, {3, Sign::none}}, {0, 2, {3, Sign::none}}, {1, 2, {3, Sign::none}}};
    auto g = DynamicGraph::load(edges);
    std::vector<VertexId> S{0, 1, 2};
    CHECK(error_of([&] {
              DynamicGraph h = g;
              apply_rule1(h, S);
          }) == Errc::precondition_violated);
    DynamicGraph h = g;
    CHECK(apply_rule1(h, S, true).offset == 6);
    CHECK(beta(g) == 6);
}

TEST_CASE("rule 2 witnesses") {
    auto p4 = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
    DynamicGraph h = p4;
    auto ev = apply_rule2(h, {0, 1, 2, 3});
    CHECK(ev.offset == 2);
    CHECK(h.num_vertices() == 2);
    CHECK(h.has_edge(0, 3));
    CHECK(beta(p4) == 3);
    CHECK(beta(h) == 1);

    auto c4 = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(error_of([&] { apply_rule2(c4, {0, 1, 2, 3}); }) == Errc::precondition_violated);
    auto tri = complete_graph(3);
    CHECK(error_of([&] { apply_rule2(tri, {2, 0, 1, 2}); }) == Errc::precondition_violated);
}

TEST_CASE("rule 3 witnesses") {
    auto k5e = complete_graph(5);
    k5e.remove_edge(0, 1);
    std::vector<VertexId> all5{0, 1, 2, 3, 4};
    DynamicGraph h = k5e;
    CHECK(apply_rule3(h, all5).offset == 0);
    CHECK(h.num_edges() == 10);
    CHECK(beta(k5e) == 6);
    CHECK(beta(h) == 6);

    auto k4e = complete_graph(4);
    k4e.remove_edge(0, 1);
    std::vector<VertexId> all4{0, 1, 2, 3};
    h = k4e;
    apply_rule3(h, all4);
    CHECK(h.num_edges() == 6);
    CHECK(beta(k4e) == 4);
    CHECK(beta(h) == 4);

    auto gated = from_pairs(6, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}});
    CHECK(error_of([&] { apply_rule3(gated, all4); }) == Errc::precondition_violated);
}

TEST_CASE("rule 4 witnesses") {
    auto k5 = complete_graph(5);
    std::vector<VertexId> all5{0, 1, 2, 3, 4};
    DynamicGraph h = k5;
    CHECK(apply_rule4(h, all5).offset == 0);
    CHECK(h.num_edges() == 9);
    CHECK(beta(h) == 6);

    auto k4 = complete_graph(4);
    std::vector<VertexId> all4{0, 1, 2, 3};
    h = k4;
    apply_rule4(h, all4);
    CHECK(beta(h) == 4);

    auto k2 = complete_graph(2);
    std::vector<VertexId> both{0, 1};
    CHECK(error_of([&] { apply_rule4(k2, both); }) == Errc::precondition_violated);
}

TEST_CASE("rules 3 and 4 undo each other") {
    std::mt19937_64 rng(21);
    int sites = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        auto g = random_graph(rng, 4 + trial % 8, 0.7);
        for (VertexId v : g.vertices()) {
            auto S = find_rule3(g, v);
            if (!S)
                continue;
            DynamicGraph h = g;
            auto ev = apply_rule3(h, *S);
            const Edge &added = ev.added_edges.front();
            apply_rule4(h, *S, std::pair{added.u, added.v});
            CHECK(h.edges() == g.edges());
            ++sites;
        }
    }
    CHECK(sites > 0);
}

TEST_CASE("rule 5 witnesses") {
    auto k4e = from_pairs(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto groups = group_twins(k4e, false);
    REQUIRE(groups.size() == 1);
    CHECK(classify_twin_group(k4e, groups[0], false) == Rule::R5);
    DynamicGraph h = k4e;
    auto ev = apply_rule5(h, groups[0]);
    CHECK(ev.offset == 2);
    CHECK(h.num_vertices() == 3);
    CHECK(h.num_edges() == 2);  // 0 and 1 stay non-adjacent: path 0-3-1
    CHECK(beta(k4e) == 4);
    CHECK(beta(h) == 2);

    auto edge_plus = from_pairs(3, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    auto pendant = pendant_group(edge_plus, 3);
    REQUIRE(pendant);
    h = edge_plus;
    CHECK(apply_rule5(h, *pendant).offset == 1);
    CHECK(beta(edge_plus) == beta(h) + 1);

    auto k4 = complete_graph(4);
    auto all = group_twins(k4, false);
    REQUIRE(all.size() == 1);
    CHECK(error_of([&] { apply_rule5(k4, all[0]); }) == Errc::precondition_violated);
}

TEST_CASE("rule 6 weight cases") {
    struct Case {
        Weight w1, w2, expected_weight, expected_offset;
    };
    for (Case c : {Case{1, 1, -1, 2}, Case{3, -1, 1, 2}, Case{-2, -3, -2, 0}}) {
        std::vector<Edge> edges{{0, 1, {c.w1, Sign::none}}, {1, 2, {c.w2, Sign::none}}};
        auto g = DynamicGraph::load(edges);
        DynamicGraph h = g;
        auto ev = apply_rule6(h, {0, 1, 2});
        CHECK(ev.offset == c.expected_offset);
        REQUIRE(h.edge(0, 2));
        CHECK(h.edge(0, 2)->weight == c.expected_weight);
        CHECK(beta(g) == beta(h) + ev.offset);
    }
}

TEST_CASE("rule 6 merges into an existing edge") {
    // triangle 0-1-2 with weights 0-1: 1, 1-2: 1, 0-2: 1 -> 0-2 becomes 1 + (-1) = 0 and is dropped
    auto tri = complete_graph(3);
    DynamicGraph h = tri;
    auto ev = apply_rule6(h, {0, 1, 2});
    CHECK(ev.offset == 2);
    CHECK(h.num_edges() == 0);
    CHECK(beta(tri) == beta(h) + 2);
}

TEST_CASE("rule 8 unsigned witnesses") {
    for (auto [n, offset, left] : {std::tuple{3, 2, 1}, std::tuple{5, 4, 3}, std::tuple{2, 1, 0}}) {
        auto k = complete_graph(n);
        auto groups = group_twins(k, false);
        REQUIRE(groups.size() == 1);
        CHECK(classify_twin_group(k, groups[0], false) == Rule::R8u);
        DynamicGraph h = k;
        auto ev = apply_rule8u(h, groups[0]);
        CHECK(ev.offset == offset);
        CHECK(h.num_vertices() == static_cast<std::size_t>(left));
        CHECK(beta(k) == beta(h) + offset);
    }
}

TEST_CASE("rule 8 signed witnesses") {
    std::vector<Edge> tri{{0, 1, {1, Sign::minus}}, {0, 2, {1, Sign::minus}}, {1, 2, {1, Sign::minus}}};
    auto g = DynamicGraph::load(tri);
    auto groups = group_twins(g, true);
    REQUIRE(groups.size() == 1);
    DynamicGraph h = g;
    auto ev = apply_rule8s(h, groups[0]);
    CHECK(signed_offset(ev) == 2);
    CHECK(beta_exact(g, Objective::signed_cut).value == 2);

    auto with_plus = tri;
    for (VertexId x : {0u, 1u, 2u})
        with_plus.push_back({x, 3, {1, Sign::plus}});
    g = DynamicGraph::load(with_plus);
    groups = group_twins(g, true);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].members == std::vector<VertexId>{0, 1, 2});
    h = g;
    ev = apply_rule8s(h, groups[0]);
    CHECK(signed_offset(ev) == 3);
    CHECK(beta_exact(g, Objective::signed_cut).value == beta_exact(h, Objective::signed_cut).value + 3);

    std::vector<Edge> mixed{{0, 1, {1, Sign::plus}}, {0, 2, {1, Sign::minus}}, {1, 2, {1, Sign::minus}}};
    g = DynamicGraph::load(mixed);
    CandidateGroup forced{{0, 1, 2}, {}};
    CHECK(error_of([&] { apply_rule8s(g, forced); }) == Errc::precondition_violated);
}

TEST_CASE("per-rule equivalence and finder soundness on random graphs") {
    std::mt19937_64 rng(99);
    std::array<std::size_t, kNumRules> sites{};
    auto count = [&](Rule r) { ++sites[static_cast<std::size_t>(r)]; };
    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t n = 2 + trial % 11;
        double p = 0.1 + 0.85 * ((trial / 11) % 10) / 9.0;
        Flavor flavor = static_cast<Flavor>(trial % 3);
        auto g = random_graph(rng, n, p, flavor);
        CAPTURE(trial);

        if (flavor == Flavor::signed_edges) {
            for (const auto &group : group_twins(g, true)) {
                if (classify_twin_group(g, group, true) != Rule::R8s)
                    continue;
                CHECK(verify_clique(g, group.members));
                CHECK(group.members.size() > std::max<std::size_t>(group.external.size(), 1));
                check_reduction(g, [&](DynamicGraph &h) { return apply_rule8s(h, group); });
                count(Rule::R8s);
            }
            continue;
        }

        for (VertexId v : g.vertices()) {
            if (auto path = find_rule6(g, v)) {
                CHECK(g.degree((*path)[1]) == 2);
                CHECK((*path)[0] != (*path)[2]);
                check_reduction(g, [&](DynamicGraph &h) { return apply_rule6(h, *path); });
                count(Rule::R6);
            }
            if (auto S = find_rule1(g, v, flavor == Flavor::weighted)) {
                CHECK(naive_missing(g, *S) == 0);
                CHECK(naive_external(g, *S) <= (S->size() + 1) / 2);
                CHECK(naive_external(g, *S) < S->size());
                check_reduction(g, [&](DynamicGraph &h) { return apply_rule1(h, *S, flavor == Flavor::weighted); });
                count(flavor == Flavor::weighted ? Rule::R1c : Rule::R1);
            }
            if (flavor == Flavor::weighted)
                continue;
            if (auto path = find_rule2(g, v)) {
                auto [a2, a, b, b2] = *path;
                CHECK(g.degree(a) == 2);
                CHECK(g.degree(b) == 2);
                CHECK(g.has_edge(a2, a));
                CHECK(g.has_edge(a, b));
                CHECK(g.has_edge(b, b2));
                CHECK(a2 != b2);
                CHECK_FALSE(g.has_edge(a2, b2));
                check_reduction(g, [&](DynamicGraph &h) { return apply_rule2(h, *path); });
                count(Rule::R2);
            }
            if (auto S = find_rule3(g, v)) {
                CHECK(naive_missing(g, *S) == 1);
                std::size_t internal = S->size() - naive_external(g, *S);
                CHECK((S->size() % 2 == 1 || internal > 2));
                check_reduction(g, [&](DynamicGraph &h) { return apply_rule3(h, *S); });
                count(Rule::R3);
            }
            if (auto S = find_rule4(g, v)) {
                CHECK(naive_missing(g, *S) == 0);
                CHECK(unit_weights(g, *S));
                std::size_t internal = S->size() - naive_external(g, *S);
                CHECK(internal >= 2);
                CHECK((S->size() % 2 == 1 || internal > 2));
                check_reduction(g, [&](DynamicGraph &h) { return apply_rule4(h, *S); });
                count(Rule::R4);
            }
            if (auto group = pendant_group(g, v)) {
                CHECK(g.degree(v) == 1);
                check_reduction(g, [&](DynamicGraph &h) { return apply_rule5(h, *group); });
                count(Rule::R5);
            }
        }
        if (flavor == Flavor::unweighted)
            for (const auto &group : group_twins(g, false)) {
                auto rule = classify_twin_group(g, group, false);
                if (!rule)
                    continue;
                CHECK(verify_clique(g, group.members));
                if (*rule == Rule::R5) {
                    CHECK(group.members.size() == group.external.size());
                    check_reduction(g, [&](DynamicGraph &h) { return apply_rule5(h, group); });
                } else {
                    CHECK(group.members.size() > std::max<std::size_t>(group.external.size(), 1));
                    check_reduction(g, [&](DynamicGraph &h) { return apply_rule8u(h, group); });
                }
                count(*rule);
            }
    }
    for (Rule r : {Rule::R1, Rule::R1c, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6, Rule::R8u, Rule::R8s}) {
        CAPTURE(to_string(r));
        CHECK(sites[static_cast<std::size_t>(r)] > 0);
    }
}
