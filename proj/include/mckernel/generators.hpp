#pragma once

#include <cstdint>

#include "mckernel/dynamic_graph.hpp"

namespace mck {

// m distinct uniform random pairs on n vertices. Throws InfeasibleParams if
// m > n(n-1)/2.
DynamicGraph generate_gnm(std::size_t n, std::size_t m, std::uint64_t seed);

// n uniform points in the unit square, edge iff distance <= radius.
DynamicGraph generate_rgg2d(std::size_t n, double radius, std::uint64_t seed);

// Radius whose expected degree, ignoring the border, is avg_degree.
double radius_for_average_degree(std::size_t n, double avg_degree);

} // namespace mck
