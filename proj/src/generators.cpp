#include "mckernel/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <unordered_set>

namespace mck {

namespace {

// Portable across standard libraries, unlike the std distributions.
std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

double unit_real(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

DynamicGraph generate_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
    const std::uint64_t pairs = n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
    if (m > pairs)
        throw Error(Errc::infeasible_params, "gnm: m = " + std::to_string(m) + " exceeds n(n-1)/2 = " +
                                                 std::to_string(pairs));
    // Dense requests sample the pairs to leave out instead.
    const bool complement = m > pairs / 2;
    const std::uint64_t draws = complement ? pairs - m : m;
    std::mt19937_64 rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(draws * 2);
    while (chosen.size() < draws) {
        auto u = uniform_below(rng, n), v = uniform_below(rng, n);
        if (u == v)
            continue;
        chosen.insert((std::min(u, v) << 32) | std::max(u, v));
    }
    std::vector<Edge> edges;
    edges.reserve(m);
    if (complement) {
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v)
                if (!chosen.contains((std::uint64_t{u} << 32) | v))
                    edges.push_back({u, v, {}});
    } else {
        std::vector<std::uint64_t> keys(chosen.begin(), chosen.end());
        std::ranges::sort(keys);
        for (auto key : keys)
            edges.push_back({static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu), {}});
    }
    return DynamicGraph::load(edges, n);
}

DynamicGraph generate_rgg2d(std::size_t n, double radius, std::uint64_t seed) {
    if (!(radius >= 0) || !std::isfinite(radius))
        throw Error(Errc::infeasible_params, "rgg2d: radius must be a finite non-negative number");
    std::mt19937_64 rng(seed);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = unit_real(rng);
        y[i] = unit_real(rng);
    }
    // Bucket points into square cells of side >= radius; neighbors lie in
    // the 3x3 block around a point's cell.
    std::size_t cells = radius > 0 ? static_cast<std::size_t>(1.0 / radius) : 1;
    cells = std::clamp<std::size_t>(cells, 1, std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(double(n))) + 1));
    auto cell_of = [&](double c) { return std::min(cells - 1, static_cast<std::size_t>(c * double(cells))); };
    std::vector<std::vector<VertexId>> grid(cells * cells);
    for (VertexId i = 0; i < n; ++i)
        grid[cell_of(y[i]) * cells + cell_of(x[i])].push_back(i);

    const double r2 = radius * radius;
    std::vector<Edge> edges;
    for (VertexId i = 0; i < n; ++i) {
        auto cx = cell_of(x[i]), cy = cell_of(y[i]);
        for (std::size_t gy = cy == 0 ? 0 : cy - 1; gy <= std::min(cells - 1, cy + 1); ++gy)
            for (std::size_t gx = cx == 0 ? 0 : cx - 1; gx <= std::min(cells - 1, cx + 1); ++gx)
                for (VertexId j : grid[gy * cells + gx]) {
                    if (j <= i)
                        continue;
                    double dx = x[i] - x[j], dy = y[i] - y[j];
                    if (dx * dx + dy * dy <= r2)
                        edges.push_back({i, j, {}});
                }
    }
    std::ranges::sort(edges, {}, [](const Edge &e) { return std::pair(e.u, e.v); });
    return DynamicGraph::load(edges, n);
}

double radius_for_average_degree(std::size_t n, double avg_degree) {
    if (n < 2)
        return 0.0;
    return std::sqrt(avg_degree / (static_cast<double>(n - 1) * std::numbers::pi));
}

} // namespace mck
