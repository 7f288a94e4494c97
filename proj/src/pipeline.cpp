#include "mckernel/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

#include "mckernel/neighborhood_trie.hpp"
#include "mckernel/rules.hpp"

namespace mck {

bool disable_rule_by_name(RuleSet &rules, const std::string &name) {
    if (name == "R1") {
        rules.disable(Rule::R1);
        rules.disable(Rule::R1c);
    } else if (name == "R3") {
        rules.disable(Rule::R3);
        rules.disable(Rule::R3c);
    } else if (name == "R8") {
        rules.disable(Rule::R8u);
        rules.disable(Rule::R8s);
    } else if (auto r = rule_from_string(name); r && *r != Rule::GadgetExpand) {
        rules.disable(*r);
    } else {
        return false;
    }
    return true;
}

namespace {

std::vector<ReductionEvent> expand_in_place(DynamicGraph &g, Weight cap) {
    std::vector<ReductionEvent> events;
    for (const Edge &e : g.edges()) {
        Weight w = e.attr.weight;
        if (w == 1 || w > cap || w < -cap)
            continue;
        ReductionEvent ev;
        ev.rule = Rule::GadgetExpand;
        ev.removed_edges = {e};
        ev.boundary = {e.u, e.v};
        auto next = static_cast<VertexId>(g.id_bound());
        Weight copies = w > 0 ? w : -w;
        for (Weight i = 0; i < copies; ++i) {
            if (w > 0) {
                VertexId x = next++, y = next++;
                ev.added_vertices.insert(ev.added_vertices.end(), {x, y});
                ev.added_edges.insert(ev.added_edges.end(), {Edge{e.u, x, {}}, Edge{x, y, {}}, Edge{e.v, y, {}}});
            } else {
                VertexId x = next++;
                ev.added_vertices.push_back(x);
                ev.added_edges.insert(ev.added_edges.end(), {Edge{e.u, x, {}}, Edge{e.v, x, {}}});
            }
        }
        ev.offset = -2 * copies;
        apply_event(g, ev);
        events.push_back(std::move(ev));
    }
    return events;
}

class Kernelizer {
public:
    Kernelizer(const DynamicGraph &input, const PipelineConfig &config) : g_(input), config_(config) {}

    Kernel run();

private:
    using clock = std::chrono::steady_clock;

    bool enabled(Rule r) const { return config_.enabled_rules.contains(r); }

    void record(ReductionEvent &&ev) {
        offset_ += ev.offset;
        ++applications_[static_cast<std::size_t>(ev.rule)];
        trace_.push_back(std::move(ev));
    }

    bool dirty(VertexId v, std::uint64_t watermark) const {
        if (g_.timestamp(v) > watermark)
            return true;
        for (const Neighbor &w : g_.neighbors(v))
            if (g_.timestamp(w.id) > watermark)
                return true;
        return false;
    }

    template <typename Round>
    void exhaust(Round &&round) {
        for (int pass = 0;; ++pass) {
            if (pass >= config_.max_passes) {
                pass_limit_ = true;
                return;
            }
            if (round() == 0)
                return;
        }
    }

    template <typename Body>
    void phase(const char *name, Body &&body) {
        auto start = clock::now();
        body();
        double seconds = std::chrono::duration<double>(clock::now() - start).count();
        auto it = std::ranges::find(timings_, name, &PhaseTiming::phase);
        if (it == timings_.end())
            timings_.push_back({name, seconds});
        else
            it->seconds += seconds;
    }

    std::size_t pass_rule1(Rule which);
    std::size_t pass_rule2();
    std::size_t pass_rule3(Rule which);
    std::size_t pass_twins(bool signed_mode);
    std::size_t pass_rule6(bool unit_result);
    std::size_t sweep_rule4();
    std::size_t pass_isolated();
    void expand();

    DynamicGraph g_;
    const PipelineConfig &config_;
    std::vector<ReductionEvent> trace_;
    Weight offset_ = 0;
    std::array<std::size_t, kNumRules> applications_{};
    std::array<std::optional<std::uint64_t>, kNumRules> watermark_{};
    std::vector<PhaseTiming> timings_;
    bool pass_limit_ = false;
};

// Gated scans skip v when neither v nor a neighbor changed since the last
// scan: applicability at v only depends on N[v], the edges inside it and the
// degrees of its members.
std::size_t Kernelizer::pass_rule1(Rule which) {
    const bool scaled = which == Rule::R1c;
    const bool gated = config_.timestamp_gating;
    const auto watermark = watermark_[static_cast<std::size_t>(which)];
    const auto start = g_.clock();
    std::size_t applied = 0;
    const auto bound = static_cast<VertexId>(g_.id_bound());
    for (VertexId v = 0; v < bound; ++v) {
        if (!g_.alive(v))
            continue;
        if (gated && watermark && !dirty(v, *watermark))
            continue;
        if (auto S = find_rule1(g_, v, scaled)) {
            record(apply_rule1(g_, *S, scaled));
            ++applied;
        }
    }
    if (gated)
        watermark_[static_cast<std::size_t>(which)] = start - 1;
    return applied;
}

std::size_t Kernelizer::pass_rule2() {
    std::size_t applied = 0;
    const auto bound = static_cast<VertexId>(g_.id_bound());
    for (VertexId v = 0; v < bound; ++v)
        if (auto path = find_rule2(g_, v)) {
            record(apply_rule2(g_, *path));
            ++applied;
        }
    return applied;
}

std::size_t Kernelizer::pass_rule3(Rule which) {
    const bool scaled = which == Rule::R3c;
    std::size_t applied = 0;
    const auto bound = static_cast<VertexId>(g_.id_bound());
    for (VertexId v = 0; v < bound; ++v)
        if (auto S = find_rule3(g_, v, scaled)) {
            record(apply_rule3(g_, *S, scaled));
            ++applied;
        }
    return applied;
}

std::size_t Kernelizer::sweep_rule4() {
    std::size_t applied = 0;
    const auto bound = static_cast<VertexId>(g_.id_bound());
    for (VertexId v = 0; v < bound; ++v)
        if (auto S = find_rule4(g_, v)) {
            record(apply_rule4(g_, *S));
            ++applied;
        }
    return applied;
}

std::size_t Kernelizer::pass_rule6(bool unit_result) {
    std::size_t applied = 0;
    const auto bound = static_cast<VertexId>(g_.id_bound());
    for (VertexId v = 0; v < bound; ++v)
        if (auto path = find_rule6(g_, v, unit_result)) {
            record(apply_rule6(g_, *path));
            ++applied;
        }
    return applied;
}

std::size_t Kernelizer::pass_isolated() {
    std::size_t applied = 0;
    for (VertexId v : g_.vertices())
        if (g_.degree(v) == 0) {
            std::array<VertexId, 1> single{v};
            record(apply_rule1(g_, single));
            ++applied;
        }
    return applied;
}

// Groups are collected once per pass. A group is skipped if one of its
// members changed earlier in the same pass; it is picked up again next pass.
std::size_t Kernelizer::pass_twins(bool signed_mode) {
    const bool gated = signed_mode && config_.timestamp_gating;
    const auto start = g_.clock();
    auto &watermark = watermark_[static_cast<std::size_t>(Rule::R8s)];

    std::vector<VertexId> candidates;
    if (gated && watermark) {
        std::vector<bool> mark(g_.id_bound(), false);
        for (VertexId v : g_.vertices())
            if (g_.timestamp(v) > *watermark) {
                mark[v] = true;
                for (const Neighbor &w : g_.neighbors(v))
                    mark[w.id] = true;
            }
        for (VertexId v = 0; v < mark.size(); ++v)
            if (mark[v])
                candidates.push_back(v);
    } else {
        candidates = g_.vertices();
    }

    std::size_t applied = 0;
    auto changed = [&](const CandidateGroup &group) {
        return std::any_of(group.members.begin(), group.members.end(),
                           [&](VertexId x) { return !g_.alive(x) || g_.timestamp(x) >= start; });
    };
    if (!candidates.empty()) {
        for (const CandidateGroup &group : group_twins(g_, signed_mode, candidates)) {
            if (changed(group))
                continue;
            auto rule = classify_twin_group(g_, group, signed_mode);
            if (!rule || !enabled(*rule))
                continue;
            if (*rule == Rule::R8s)
                record(apply_rule8s(g_, group));
            else if (*rule == Rule::R8u)
                record(apply_rule8u(g_, group));
            else
                record(apply_rule5(g_, group));
            ++applied;
        }
    }
    if (!signed_mode && enabled(Rule::R5)) {
        const auto bound = static_cast<VertexId>(g_.id_bound());
        for (VertexId v = 0; v < bound; ++v)
            if (auto group = pendant_group(g_, v)) {
                record(apply_rule5(g_, *group));
                ++applied;
            }
    }
    if (gated)
        watermark = start - 1;
    return applied;
}

void Kernelizer::expand() {
    for (auto &ev : expand_in_place(g_, config_.gadget_cap))
        record(std::move(ev));
}

Kernel Kernelizer::run() {
    Kernel kernel;
    kernel.original_vertices = g_.id_bound();
    kernel.stats.n_before = g_.num_vertices();
    kernel.stats.m_before = g_.num_edges();
    g_.sort_adjacencies();
    if (g_.signed_mode()) {
        // signed objective = weighted objective + number of plus edges
        kernel.input_signed = true;
        offset_ += static_cast<Weight>(g_.num_plus_edges());
        g_.set_signed_mode(false);
    }

    // Phases 1-5 repeat while they remove vertices; later phases can expose
    // sites for earlier ones.
    for (int round = 0; round < config_.max_passes; ++round) {
        const std::size_t before = g_.num_vertices();
        phase("expand", [&] { expand(); });
        phase("unweighted", [&] {
            exhaust([&] {
                std::size_t n = 0;
                if (enabled(Rule::R1))
                    n += pass_rule1(Rule::R1);
                if (enabled(Rule::R5) || enabled(Rule::R8u))
                    n += pass_twins(false);
                if (enabled(Rule::R2))
                    n += pass_rule2();
                if (enabled(Rule::R3))
                    n += pass_rule3(Rule::R3);
                return n;
            });
        });
        phase("signed", [&] {
            if (enabled(Rule::R6))
                exhaust([&] { return pass_rule6(true); });
            if (enabled(Rule::R8s)) {
                g_.set_signed_mode(true);
                exhaust([&] { return pass_twins(true); });
                g_.set_signed_mode(false);
            }
        });
        phase("weighted", [&] {
            if (enabled(Rule::R6))
                exhaust([&] { return pass_rule6(false); });
        });
        phase("scaled", [&] {
            exhaust([&] {
                std::size_t n = 0;
                if (enabled(Rule::R1c))
                    n += pass_rule1(Rule::R1c);
                if (enabled(Rule::R3c))
                    n += pass_rule3(Rule::R3c);
                return n;
            });
        });
        if (g_.num_vertices() >= before)
            break;
    }
    phase("unweighted-again", [&] {
        expand();
        if (enabled(Rule::R4))
            sweep_rule4();
    });
    phase("final", [&] {
        if (config_.output_mode == OutputMode::weighted_kernel && enabled(Rule::R6))
            exhaust([&] { return pass_rule6(false); });
        if (enabled(Rule::R1))
            pass_isolated();
    });

    kernel.internal_id_bound = g_.id_bound();
    kernel.id_map = g_.vertices();
    std::vector<VertexId> compact(g_.id_bound(), 0);
    for (VertexId i = 0; i < kernel.id_map.size(); ++i)
        compact[kernel.id_map[i]] = i;
    std::vector<Edge> edges = g_.edges();
    for (Edge &e : edges) {
        e.u = compact[e.u];
        e.v = compact[e.v];
        e.attr.sign = Sign::none;
    }
    kernel.graph = DynamicGraph::load(edges, kernel.id_map.size());

    kernel.offset = offset_;
    kernel.trace = std::move(trace_);
    kernel.pass_limit_exceeded = pass_limit_;
    kernel.stats.applications = applications_;
    kernel.stats.timings = std::move(timings_);
    kernel.stats.n_after = kernel.graph.num_vertices();
    kernel.stats.m_after = kernel.graph.num_edges();
    kernel.stats.efficiency = efficiency(kernel);
    return kernel;
}

} // namespace

ExpandResult expand_weights(DynamicGraph g, Weight cap) {
    g.sort_adjacencies();
    ExpandResult result;
    result.events = expand_in_place(g, cap);
    for (const auto &ev : result.events)
        result.offset += ev.offset;
    result.graph = std::move(g);
    return result;
}

Kernel kernelize(const DynamicGraph &g, const PipelineConfig &config) {
    return Kernelizer(g, config).run();
}

double efficiency(const Kernel &kernel) {
    if (kernel.stats.n_before == 0)
        return 0.0;
    double e = 1.0 - static_cast<double>(kernel.graph.num_vertices()) / static_cast<double>(kernel.stats.n_before);
    return std::clamp(e, 0.0, 1.0);
}

} // namespace mck
