#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mckernel/dynamic_graph.hpp"

namespace mck {

enum class Objective {
    unweighted, // number of cut edges
    weighted,   // total weight of cut edges
    signed_cut, // minus edges cut plus plus edges uncut
};

// side[v] in {0, 1}, indexed by vertex id.
struct Cut {
    std::vector<std::uint8_t> side;
    Weight value = 0;
};

Weight cut_value(const DynamicGraph &g, const std::vector<std::uint8_t> &side, Objective objective);

inline constexpr std::size_t kDefaultExactCap = 28;

/***
 * Exact maximum cut. fixed[v] = 0 / 1 pins v to a side, -1 leaves it free
 * (an empty vector means no constraints). Components are solved
 * independently by Gray-code enumeration; the first free vertex of an
 * unconstrained component is pinned to side 0.
 * Throws TooLarge if a component has more than cap free vertices.
 */
Cut beta_exact(const DynamicGraph &g, Objective objective, const std::vector<std::int8_t> &fixed = {},
               std::size_t cap = kDefaultExactCap);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational &, const Rational &) = default;
};

// |E|/2 + (|V| - 1)/4 for a connected unweighted graph; throws Disconnected.
Rational edwards_erdos(const DynamicGraph &g);

struct LocalSearchResult {
    Cut cut;
    // (seconds since start, cut value) after the initial cut and each improving sweep
    std::vector<std::pair<double, Weight>> samples;
    bool local_optimum = false;
};

/***
 * Single-vertex-flip local search from a seeded random cut. Stops at a local
 * optimum or when time_budget_seconds is used up; a zero budget returns the
 * initial cut.
 */
LocalSearchResult local_search(const DynamicGraph &g, Objective objective, double time_budget_seconds,
                               std::uint64_t seed);

} // namespace mck
