#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mck {

using VertexId = std::uint32_t;
using Weight = std::int64_t;

// Edge label of a Signed Max Cut instance. A "minus" edge rewards being cut,
// a "plus" edge rewards staying inside one side.
enum class Sign : std::uint8_t { none, minus, plus };

struct EdgeAttr {
    Weight weight = 1;
    Sign sign = Sign::none;

    friend bool operator==(const EdgeAttr &, const EdgeAttr &) = default;
};

struct Neighbor {
    VertexId id;
    EdgeAttr attr;

    friend bool operator==(const Neighbor &, const Neighbor &) = default;
};

struct Edge {
    VertexId u;
    VertexId v;
    EdgeAttr attr;

    friend bool operator==(const Edge &, const Edge &) = default;
};

enum class Errc {
    duplicate_edge,
    self_loop,
    zero_weight,
    missing_vertex,
    missing_edge,
    edge_exists,
    unsorted_key,
    precondition_violated,
    pass_limit_exceeded,
    too_large,
    disconnected,
    incomplete_coloring,
    infeasible_params,
    parse_error,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace mck
