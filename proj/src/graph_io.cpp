#include "mckernel/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include <json.hpp>

namespace mck {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(std::size_t line, const std::string &what) {
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r')
            ++j;
        if (j > i)
            tokens.push_back(s.substr(i, j - i));
        i = j;
    }
    return tokens;
}

template <typename T>
bool parse_number(std::string_view token, T &out) {
    if (!token.empty() && token.front() == '+')
        token.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc() && ptr == token.data() + token.size();
}

VertexId parse_id(std::string_view token, std::size_t line, bool one_based) {
    std::uint64_t id = 0;
    if (token.starts_with('+') || token.starts_with('-') || !parse_number(token, id))
        parse_fail(line, "invalid vertex id '" + std::string(token) + "'");
    if (one_based) {
        if (id == 0)
            parse_fail(line, "vertex id 0 in one-based input");
        --id;
    }
    if (id >= std::numeric_limits<VertexId>::max())
        parse_fail(line, "vertex id out of range");
    return static_cast<VertexId>(id);
}

EdgeAttr parse_weight(std::string_view token, std::size_t line, const ReadOptions &options) {
    EdgeAttr attr;
    if (token == "+" || token == "-") {
        attr.sign = token == "+" ? Sign::plus : Sign::minus;
        attr.weight = token == "+" ? -1 : 1;
        return attr;
    }
    if (options.scale_digits) {
        double w = 0;
        if (!parse_number(token, w) || !std::isfinite(w))
            parse_fail(line, "invalid weight '" + std::string(token) + "'");
        attr.weight = static_cast<Weight>(std::llround(w * std::pow(10.0, *options.scale_digits)));
    } else if (!parse_number(token, attr.weight)) {
        parse_fail(line, "invalid weight '" + std::string(token) + "'");
    }
    if (attr.weight == 0)
        parse_fail(line, "zero weight");
    return attr;
}

json edge_json(const Edge &e) { return json::array({e.u, e.v, e.attr.weight, static_cast<int>(e.attr.sign)}); }

Edge edge_from_json(const json &j) {
    return Edge{j.at(0).get<VertexId>(), j.at(1).get<VertexId>(),
                EdgeAttr{j.at(2).get<Weight>(), static_cast<Sign>(j.at(3).get<int>())}};
}

} // namespace

DynamicGraph parse_edge_list(std::istream &in, const ReadOptions &options) {
    std::vector<Edge> edges;
    std::size_t declared = 0;
    std::unordered_map<std::uint64_t, std::size_t> first_line;
    std::string text;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        auto tokens = split(text);
        if (tokens.empty())
            continue;
        if (tokens.front().starts_with('#')) {
            std::size_t n = 0;
            if (tokens.size() == 3 && tokens[0] == "#" && tokens[1] == "nodes" && parse_number(tokens[2], n))
                declared = std::max(declared, n);
            continue;
        }
        if (tokens.size() < 2 || tokens.size() > 3)
            parse_fail(line, "expected 'u v' or 'u v w'");
        Edge e;
        e.u = parse_id(tokens[0], line, options.one_based);
        e.v = parse_id(tokens[1], line, options.one_based);
        if (tokens.size() == 3)
            e.attr = parse_weight(tokens[2], line, options);
        if (e.u == e.v)
            parse_fail(line, "self-loop at vertex " + std::string(tokens[0]));
        auto key = (std::uint64_t{std::min(e.u, e.v)} << 32) | std::max(e.u, e.v);
        auto [it, fresh] = first_line.emplace(key, line);
        if (!fresh)
            parse_fail(line, "duplicate edge " + std::string(tokens[0]) + " " + std::string(tokens[1]) +
                                 " (first on line " + std::to_string(it->second) + ")");
        edges.push_back(e);
    }
    return DynamicGraph::load(edges, declared);
}

DynamicGraph read_edge_list(const std::string &path, const ReadOptions &options) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::parse_error, "cannot open " + path);
    return parse_edge_list(in, options);
}

void write_edge_list(std::ostream &out, const DynamicGraph &g, bool one_based) {
    const VertexId shift = one_based ? 1 : 0;
    out << "# nodes " << g.id_bound() << '\n';
    for (const Edge &e : g.edges()) {
        out << e.u + shift << ' ' << e.v + shift;
        if (g.signed_mode())
            out << ' ' << (e.attr.sign == Sign::plus ? '+' : '-');
        else if (e.attr.weight != 1)
            out << ' ' << e.attr.weight;
        out << '\n';
    }
}

std::string format_edge_list(const DynamicGraph &g, bool one_based) {
    std::ostringstream out;
    write_edge_list(out, g, one_based);
    return out.str();
}

void save_edge_list(const std::string &path, const DynamicGraph &g, bool one_based) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::parse_error, "cannot write " + path);
    write_edge_list(out, g, one_based);
}

std::string kernel_metadata(const Kernel &kernel) {
    json counts = json::object();
    for (Rule r : kAllRules)
        counts[std::string(to_string(r))] = kernel.stats.applications[static_cast<std::size_t>(r)];
    json trace = json::array();
    for (const ReductionEvent &ev : kernel.trace) {
        json edges_removed = json::array(), edges_added = json::array();
        for (const Edge &e : ev.removed_edges)
            edges_removed.push_back(edge_json(e));
        for (const Edge &e : ev.added_edges)
            edges_added.push_back(edge_json(e));
        trace.push_back({{"rule", std::string(to_string(ev.rule))},
                         {"offset", ev.offset},
                         {"removed_vertices", ev.removed_vertices},
                         {"added_vertices", ev.added_vertices},
                         {"removed_edges", edges_removed},
                         {"added_edges", edges_added},
                         {"boundary", ev.boundary}});
    }
    json meta = {{"offset", kernel.offset},
                 {"efficiency", kernel.stats.efficiency},
                 {"input_signed", kernel.input_signed},
                 {"original_vertices", kernel.original_vertices},
                 {"internal_id_bound", kernel.internal_id_bound},
                 {"n_before", kernel.stats.n_before},
                 {"m_before", kernel.stats.m_before},
                 {"n_after", kernel.stats.n_after},
                 {"m_after", kernel.stats.m_after},
                 {"pass_limit_exceeded", kernel.pass_limit_exceeded},
                 {"rule_counts", counts},
                 {"id_map", kernel.id_map},
                 {"trace", trace}};
    return meta.dump(1) + "\n";
}

Kernel kernel_from_metadata(DynamicGraph graph, const std::string &metadata) {
    json meta;
    try {
        meta = json::parse(metadata);
    } catch (const json::exception &e) {
        throw Error(Errc::parse_error, std::string("metadata: ") + e.what());
    }
    Kernel kernel;
    try {
        kernel.offset = meta.at("offset").get<Weight>();
        kernel.stats.efficiency = meta.at("efficiency").get<double>();
        kernel.input_signed = meta.at("input_signed").get<bool>();
        kernel.original_vertices = meta.at("original_vertices").get<std::size_t>();
        kernel.internal_id_bound = meta.at("internal_id_bound").get<std::size_t>();
        kernel.stats.n_before = meta.at("n_before").get<std::size_t>();
        kernel.stats.m_before = meta.at("m_before").get<std::size_t>();
        kernel.stats.n_after = meta.at("n_after").get<std::size_t>();
        kernel.stats.m_after = meta.at("m_after").get<std::size_t>();
        kernel.pass_limit_exceeded = meta.at("pass_limit_exceeded").get<bool>();
        kernel.id_map = meta.at("id_map").get<std::vector<VertexId>>();
        for (auto &[name, count] : meta.at("rule_counts").items())
            if (auto r = rule_from_string(name))
                kernel.stats.applications[static_cast<std::size_t>(*r)] = count.get<std::size_t>();
        for (const json &j : meta.at("trace")) {
            ReductionEvent ev;
            auto rule = rule_from_string(j.at("rule").get<std::string>());
            if (!rule)
                throw Error(Errc::parse_error, "metadata: unknown rule " + j.at("rule").get<std::string>());
            ev.rule = *rule;
            ev.offset = j.at("offset").get<Weight>();
            ev.removed_vertices = j.at("removed_vertices").get<std::vector<VertexId>>();
            ev.added_vertices = j.at("added_vertices").get<std::vector<VertexId>>();
            ev.boundary = j.at("boundary").get<std::vector<VertexId>>();
            for (const json &e : j.at("removed_edges"))
                ev.removed_edges.push_back(edge_from_json(e));
            for (const json &e : j.at("added_edges"))
                ev.added_edges.push_back(edge_from_json(e));
            kernel.trace.push_back(std::move(ev));
        }
    } catch (const json::exception &e) {
        throw Error(Errc::parse_error, std::string("metadata: ") + e.what());
    }
    if (graph.id_bound() < kernel.id_map.size())
        for (std::size_t i = graph.id_bound(); i < kernel.id_map.size(); ++i)
            graph.add_vertex();
    if (graph.id_bound() != kernel.id_map.size())
        throw Error(Errc::parse_error, "metadata: id map does not match kernel graph size");
    kernel.graph = std::move(graph);
    return kernel;
}

} // namespace mck
