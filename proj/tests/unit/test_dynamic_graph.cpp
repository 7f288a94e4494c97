#include <doctest.h>

#include <algorithm>
#include <map>

#include "test_support.hpp"

using namespace mck;
using namespace mck::testing;

namespace {

// Adjacency rebuilt from the edge list must match the stored one exactly.
void check_consistent(const DynamicGraph &g) {
    std::map<VertexId, std::vector<Neighbor>> rebuilt;
    std::size_t m = 0;
    for (const Edge &e : g.edges()) {
        rebuilt[e.u].push_back({e.v, e.attr});
        rebuilt[e.v].push_back({e.u, e.attr});
        ++m;
    }
    CHECK(m == g.num_edges());
    std::size_t n = 0;
    for (VertexId v = 0; v < g.id_bound(); ++v) {
        if (!g.alive(v))
            continue;
        ++n;
        auto &expected = rebuilt[v];
        std::ranges::sort(expected, {}, &Neighbor::id);
        auto actual = g.neighbors(v);
        REQUIRE(actual.size() == expected.size());
        CHECK(std::equal(actual.begin(), actual.end(), expected.begin()));
        CHECK(g.timestamp(v) < g.clock());
    }
    CHECK(n == g.num_vertices());
}

} // namespace

TEST_CASE("load builds a path and starts the clock at 1") {
    std::vector<Edge> edges{{0, 1, {}}, {1, 2, {}}};
    auto g = DynamicGraph::load(edges);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.clock() == 1);
    for (VertexId v = 0; v < 3; ++v)
        CHECK(g.timestamp(v) == 0);
}

TEST_CASE("load rejects self-loops, duplicates and zero weights") {
    std::vector<Edge> loop{{0, 0, {}}};
    std::vector<Edge> dup{{0, 1, {3, Sign::none}}, {1, 0, {2, Sign::none}}};
    std::vector<Edge> zero{{0, 1, {0, Sign::none}}};
    auto code = [](auto f) {
        try {
            f();
        } catch (const Error &e) {
            return e.code();
        }
        return Errc::parse_error;
    };
    CHECK(code([&] { DynamicGraph::load(loop); }) == Errc::self_loop);
    CHECK(code([&] { DynamicGraph::load(dup); }) == Errc::duplicate_edge);
    CHECK(code([&] { DynamicGraph::load(zero); }) == Errc::zero_weight);
}

TEST_CASE("sort_adjacencies orders neighbors") {
    std::vector<Edge> edges{{0, 5, {}}, {0, 1, {}}, {0, 3, {}}};
    auto g = DynamicGraph::load(edges, 0, false);
    CHECK_FALSE(g.is_sorted());
    g.sort_adjacencies();
    std::vector<VertexId> ids;
    for (const Neighbor &w : g.neighbors(0))
        ids.push_back(w.id);
    CHECK(ids == std::vector<VertexId>{1, 3, 5});
    auto before = g.edges();
    g.sort_adjacencies();
    CHECK(g.edges() == before);

    DynamicGraph empty;
    empty.sort_adjacencies();
    CHECK(empty.num_vertices() == 0);
    CHECK(empty.edges().empty());
}

TEST_CASE("edits keep counts and bump timestamps") {
    auto g = from_pairs(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
    g.remove_vertex(0);
    CHECK(g.num_edges() == 1);
    CHECK(g.num_vertices() == 4);
    for (VertexId v : {1u, 2u, 3u})
        CHECK(g.timestamp(v) > 0);
    CHECK(g.timestamp(4) == 0);
    check_consistent(g);

    auto h = from_pairs(3, {{1, 2}});
    auto original = h.edges();
    h.add_edge(0, 1);
    h.remove_edge(0, 1);
    CHECK(h.edges() == original);
    check_consistent(h);

    CHECK_THROWS_AS(h.remove_edge(0, 2), Error);
    try {
        h.remove_edge(0, 2);
    } catch (const Error &e) {
        CHECK(e.code() == Errc::missing_edge);
    }
    try {
        h.add_edge(1, 2);
    } catch (const Error &e) {
        CHECK(e.code() == Errc::edge_exists);
    }
    h.remove_vertex(0);
    try {
        h.degree(0);
        FAIL("expected MissingVertex");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::missing_vertex);
    }
}

TEST_CASE("degree and neighbors") {
    auto tri = complete_graph(3);
    for (VertexId v = 0; v < 3; ++v)
        CHECK(tri.degree(v) == 2);
    DynamicGraph single(1);
    CHECK(single.degree(0) == 0);
    CHECK(single.neighbors(0).empty());
    auto k5 = complete_graph(5);
    std::vector<VertexId> ids;
    for (const Neighbor &w : k5.neighbors(2))
        ids.push_back(w.id);
    CHECK(ids == std::vector<VertexId>{0, 1, 3, 4});
}

TEST_CASE("signed mode relabels unit weights") {
    std::vector<Edge> edges{{0, 1, {1, Sign::none}}, {1, 2, {-1, Sign::none}}, {0, 2, {2, Sign::none}}};
    auto g = DynamicGraph::load(edges);
    g.set_signed_mode(true);
    CHECK(g.edge(0, 1)->sign == Sign::minus);
    CHECK(g.edge(1, 2)->sign == Sign::plus);
    CHECK(g.edge(0, 2)->sign == Sign::none);
    CHECK(g.num_plus_edges() == 1);
    g.set_signed_mode(false);
    CHECK(g.edge(1, 2)->sign == Sign::none);

    std::vector<Edge> labeled{{0, 1, {1, Sign::plus}}, {1, 2, {7, Sign::none}}};
    auto s = DynamicGraph::load(labeled);
    CHECK(s.signed_mode());
    CHECK(s.edge(0, 1)->weight == -1);
    CHECK(s.edge(1, 2)->weight == 1);
    CHECK(s.edge(1, 2)->sign == Sign::minus);
}

TEST_CASE("random edit sequences keep the adjacency consistent") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = random_graph(rng, 12, 0.3, Flavor::weighted);
        std::uint64_t last_clock = g.clock();
        for (int step = 0; step < 40; ++step) {
            auto u = static_cast<VertexId>(rng() % g.id_bound());
            auto v = static_cast<VertexId>(rng() % g.id_bound());
            switch (rng() % 4) {
            case 0:
                if (g.alive(u) && g.alive(v) && u != v && !g.has_edge(u, v))
                    g.add_edge(u, v, {static_cast<Weight>(rng() % 3) + 1, Sign::none});
                break;
            case 1:
                if (g.alive(u) && g.alive(v) && g.has_edge(u, v))
                    g.remove_edge(u, v);
                break;
            case 2:
                if (g.alive(u) && rng() % 4 == 0)
                    g.remove_vertex(u);
                break;
            default:
                g.add_vertex();
            }
            CHECK(g.clock() >= last_clock);
            last_clock = g.clock();
        }
        check_consistent(g);
    }
}
