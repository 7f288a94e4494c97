#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mckernel/dynamic_graph.hpp"
#include "mckernel/oracle.hpp"
#include "mckernel/reduction_event.hpp"

namespace mck {

class RuleSet {
public:
    static RuleSet all() {
        RuleSet s;
        s.bits_ = (1u << kNumRules) - 1;
        return s;
    }

    bool contains(Rule r) const { return (bits_ >> static_cast<unsigned>(r)) & 1u; }
    void disable(Rule r) { bits_ &= ~(1u << static_cast<unsigned>(r)); }
    void enable(Rule r) { bits_ |= 1u << static_cast<unsigned>(r); }

private:
    std::uint32_t bits_ = 0;
};

// Disables a rule by command-line name. "R1" and "R3" also disable their
// uniform-weight variants and "R8" disables both R8u and R8s. Returns false
// for an unknown name.
bool disable_rule_by_name(RuleSet &rules, const std::string &name);

enum class OutputMode { weighted_kernel, unweighted_kernel };

struct PipelineConfig {
    RuleSet enabled_rules = RuleSet::all();
    OutputMode output_mode = OutputMode::weighted_kernel;
    std::uint64_t seed = 0;
    int max_passes = 50;
    bool timestamp_gating = true;
    // |w| above this bypasses the unweighted phases instead of being expanded
    Weight gadget_cap = 64;
};

struct PhaseTiming {
    std::string phase;
    double seconds = 0;
};

struct KernelStats {
    std::array<std::size_t, kNumRules> applications{};
    std::vector<PhaseTiming> timings;
    std::size_t n_before = 0;
    std::size_t m_before = 0;
    std::size_t n_after = 0;
    std::size_t m_after = 0;
    double efficiency = 0;
};

/***
 * Result of kernelization: beta(input) = beta(graph) + offset, where beta is
 * the weighted objective of the kernel and the input's own objective
 * (signed for labeled inputs).
 *
 * Kernel vertex i corresponds to internal vertex id_map[i]. Internal ids below
 * original_vertices are input vertices; larger ids are gadget vertices.
 */
struct Kernel {
    DynamicGraph graph;
    std::vector<VertexId> id_map;
    std::size_t original_vertices = 0;
    std::size_t internal_id_bound = 0;
    bool input_signed = false;
    Weight offset = 0;
    std::vector<ReductionEvent> trace;
    KernelStats stats;
    bool pass_limit_exceeded = false;
};

struct ExpandResult {
    DynamicGraph graph;
    std::vector<ReductionEvent> events;
    Weight offset = 0;
};

/***
 * Replaces weighted edges by unweighted gadgets: +w (w >= 2) becomes w
 * vertex-disjoint 3-edge paths, -w becomes w 2-edge paths. Each path adds 2 to
 * the cut objective, recorded as a negative event offset. Weight +1 edges and
 * edges with |w| > cap are kept.
 */
ExpandResult expand_weights(DynamicGraph g, Weight cap = 64);

Kernel kernelize(const DynamicGraph &g, const PipelineConfig &config = {});

// 1 - |V(kernel)| / |V(input)|, clamped to [0, 1].
double efficiency(const Kernel &kernel);

/***
 * Turns a cut of the kernel graph (side indexed by kernel id) into a cut of
 * the input graph by undoing the trace. The result's value is in the input's
 * objective and is at least kernel_cut value + offset; it equals beta(input)
 * when kernel_cut is optimal. Throws IncompleteColoring.
 */
Cut lift(const Kernel &kernel, const Cut &kernel_cut);

// Internal graph as it stood after the last event, rebuilt from the kernel.
DynamicGraph internal_graph(const Kernel &kernel);

} // namespace mck
