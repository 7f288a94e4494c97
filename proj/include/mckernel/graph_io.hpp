#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "mckernel/dynamic_graph.hpp"
#include "mckernel/pipeline.hpp"

namespace mck {

/***
 * Edge list text format. One edge per line: "u v" or "u v w" where w is a
 * nonzero integer, or "u v +" / "u v -" for a signed edge. Lines starting
 * with '#' are comments, except "# nodes N" which declares N vertices so that
 * isolated trailing vertices survive a round trip.
 */
struct ReadOptions {
    bool one_based = false;
    // weights are read as decimals, multiplied by 10^D and rounded
    std::optional<int> scale_digits;
};

DynamicGraph parse_edge_list(std::istream &in, const ReadOptions &options = {});
DynamicGraph read_edge_list(const std::string &path, const ReadOptions &options = {});

// "# nodes N" then one line per edge in ascending (u, v) order with u < v.
// Weight 1 is omitted; signed graphs write "+" / "-".
void write_edge_list(std::ostream &out, const DynamicGraph &g, bool one_based = false);
std::string format_edge_list(const DynamicGraph &g, bool one_based = false);
void save_edge_list(const std::string &path, const DynamicGraph &g, bool one_based = false);

// JSON sidecar with offset, efficiency, rule counts, id map and the full trace.
std::string kernel_metadata(const Kernel &kernel);
// Rebuilds a Kernel from its graph file and sidecar; the result can be lifted.
Kernel kernel_from_metadata(DynamicGraph graph, const std::string &metadata);

} // namespace mck
