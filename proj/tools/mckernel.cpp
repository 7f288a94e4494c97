#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mckernel/generators.hpp"
#include "mckernel/graph_io.hpp"
#include "mckernel/oracle.hpp"
#include "mckernel/pipeline.hpp"

using namespace mck;
using nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitPassLimit = 3;

struct InputOptions {
    std::string path;
    bool one_based = false;
    std::optional<int> scale_digits;

    ReadOptions read_options() const { return {one_based, scale_digits}; }
};

void add_input_options(CLI::App *cmd, InputOptions &in) {
    cmd->add_option("--input,-i", in.path, "edge list file")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--one-based", in.one_based, "vertex ids in files start at 1");
    cmd->add_option("--scale-weights", in.scale_digits, "read decimal weights, multiply by 10^D and round");
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::parse_error, "cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::parse_error, "cannot write " + path);
    out << content;
}

std::string stem(const std::string &path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

PipelineConfig make_config(const std::vector<std::string> &disabled, const std::string &mode, std::uint64_t seed) {
    PipelineConfig config;
    config.seed = seed;
    config.output_mode = mode == "unweighted" ? OutputMode::unweighted_kernel : OutputMode::weighted_kernel;
    for (const auto &name : disabled)
        if (!disable_rule_by_name(config.enabled_rules, name))
            throw CLI::ValidationError("--disable-rule", "unknown rule " + name);
    return config;
}

ordered_json rule_counts(const KernelStats &stats) {
    ordered_json counts = ordered_json::object();
    for (Rule r : kAllRules)
        counts[std::string(to_string(r))] = stats.applications[static_cast<std::size_t>(r)];
    return counts;
}

int run_kernelize(const InputOptions &in, const std::string &output, const std::string &mode,
                  const std::vector<std::string> &disabled, std::uint64_t seed, bool timings) {
    PipelineConfig config = make_config(disabled, mode, seed);
    DynamicGraph g = read_edge_list(in.path, in.read_options());
    Kernel kernel = kernelize(g, config);
    save_edge_list(output, kernel.graph, in.one_based);
    write_file(output + ".meta.json", kernel_metadata(kernel));

    ordered_json report;
    report["instance"] = stem(in.path);
    report["n_before"] = kernel.stats.n_before;
    report["m_before"] = kernel.stats.m_before;
    report["n_after"] = kernel.stats.n_after;
    report["m_after"] = kernel.stats.m_after;
    report["efficiency"] = kernel.stats.efficiency;
    report["offset"] = kernel.offset;
    report["input_signed"] = kernel.input_signed;
    report["rule_counts"] = rule_counts(kernel.stats);
    if (timings) {
        ordered_json t = ordered_json::object();
        for (const auto &p : kernel.stats.timings)
            t[p.phase] = p.seconds;
        report["phase_seconds"] = t;
    }
    report["config"] = {{"mode", mode},
                        {"disabled_rules", disabled},
                        {"one_based", in.one_based},
                        {"scale_weights", in.scale_digits ? ordered_json(*in.scale_digits) : ordered_json(nullptr)},
                        {"max_passes", config.max_passes},
                        {"gadget_cap", config.gadget_cap}};
    report["seed"] = seed;
    report["pass_limit_exceeded"] = kernel.pass_limit_exceeded;
    std::cout << report.dump(2) << '\n';
    if (kernel.pass_limit_exceeded) {
        std::cerr << "error: " << to_string(Errc::pass_limit_exceeded) << ": a phase did not converge within "
                  << config.max_passes << " passes\n";
        return kExitPassLimit;
    }
    return 0;
}

DynamicGraph generate(const std::string &model, std::size_t n, std::optional<std::size_t> m,
                      std::optional<double> radius, std::optional<double> avg_degree, std::uint64_t seed) {
    if (model == "gnm") {
        if (!m && avg_degree)
            m = static_cast<std::size_t>(*avg_degree * static_cast<double>(n) / 2.0 + 0.5);
        if (!m)
            throw CLI::ValidationError("gnm needs --m or --avg-degree");
        return generate_gnm(n, *m, seed);
    }
    if (!radius && avg_degree)
        radius = radius_for_average_degree(n, *avg_degree);
    if (!radius)
        throw CLI::ValidationError("rgg2d needs --radius or --avg-degree");
    return generate_rgg2d(n, *radius, seed);
}

int run_verify(const InputOptions &in, const std::vector<std::string> &disabled, std::uint64_t seed) {
    PipelineConfig config = make_config(disabled, "weighted", seed);
    DynamicGraph g = read_edge_list(in.path, in.read_options());
    Kernel kernel = kernelize(g, config);
    Objective objective = g.signed_mode() ? Objective::signed_cut : Objective::weighted;
    Weight beta = beta_exact(g, objective).value;
    Cut kernel_cut = beta_exact(kernel.graph, Objective::weighted);
    Cut lifted = lift(kernel, kernel_cut);
    Weight lifted_check = cut_value(g, lifted.side, objective);
    bool pass = kernel_cut.value + kernel.offset == beta && lifted.value == beta && lifted_check == beta &&
                !kernel.pass_limit_exceeded;
    std::cout << "beta " << beta << '\n'
              << "kernel_beta " << kernel_cut.value << '\n'
              << "offset " << kernel.offset << '\n'
              << "lifted " << lifted_check << '\n'
              << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : kExitFail;
}

struct AblateOptions {
    std::string model = "rgg2d";
    std::size_t n = 2048;
    std::size_t trials = 150;
    std::vector<double> avg_degrees;
    std::vector<std::string> disabled;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

// One CSV row per (instance, config). Instances are spread evenly over the
// degree sweep; rows come out in instance order regardless of threads.
void run_ablate(const AblateOptions &opt, std::ostream &out) {
    std::vector<double> degrees = opt.avg_degrees.empty() ? std::vector<double>{2.0} : opt.avg_degrees;
    std::vector<std::pair<std::string, PipelineConfig>> configs{{"full", PipelineConfig{}}};
    for (const auto &name : opt.disabled)
        configs.emplace_back("no-" + name, make_config({name}, "weighted", opt.seed));

    std::vector<std::string> rows(opt.trials);
    auto work = [&](std::size_t i) {
        double degree = degrees[i % degrees.size()];
        std::uint64_t seed = opt.seed + i;
        DynamicGraph g = generate(opt.model, opt.n, std::nullopt, std::nullopt, degree, seed);
        std::ostringstream s;
        for (const auto &[label, config] : configs) {
            Kernel k = kernelize(g, config);
            s << opt.model << ',' << i << ',' << degree << ',' << seed << ',' << label << ',' << k.stats.n_before << ','
              << k.stats.m_before << ',' << k.stats.n_after << ',' << k.stats.m_after << ',' << k.stats.efficiency
              << '\n';
        }
        rows[i] = s.str();
    };
    unsigned threads = std::max(1u, opt.threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < opt.trials; i += threads)
                work(i);
        });
    for (auto &th : pool)
        th.join();

    out << "model,instance,avg_degree,seed,config,n_before,m_before,n_after,m_after,efficiency\n";
    for (const auto &row : rows)
        out << row;
}

std::vector<std::uint8_t> read_cut(const std::string &path, std::size_t n) {
    std::vector<std::uint8_t> side(n, 0);
    std::vector<bool> seen(n, false);
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::parse_error, "cannot open " + path);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream s(line);
        std::size_t v;
        int c;
        if (!(s >> v >> c) || v >= n || (c != 0 && c != 1))
            throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected 'vertex side'");
        side[v] = static_cast<std::uint8_t>(c);
        seen[v] = true;
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!seen[v])
            throw Error(Errc::incomplete_coloring, "no side given for kernel vertex " + std::to_string(v));
    return side;
}

int run_lift(const std::string &kernel_path, const std::string &cut_path, const std::string &output, bool one_based) {
    DynamicGraph graph = read_edge_list(kernel_path, {one_based, std::nullopt});
    Kernel kernel = kernel_from_metadata(std::move(graph), slurp(kernel_path + ".meta.json"));
    Cut kernel_cut = cut_path.empty() ? beta_exact(kernel.graph, Objective::weighted)
                                      : Cut{read_cut(cut_path, kernel.id_map.size()), 0};
    Cut lifted = lift(kernel, kernel_cut);
    std::ostringstream s;
    s << "# value " << lifted.value << '\n';
    for (std::size_t v = 0; v < lifted.side.size(); ++v)
        s << v + (one_based ? 1 : 0) << ' ' << int(lifted.side[v]) << '\n';
    if (output.empty())
        std::cout << s.str();
    else
        write_file(output, s.str());
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Max Cut kernelization toolkit"};
    app.require_subcommand(1);
    int status = 0;

    InputOptions kin;
    std::string k_output, k_mode = "weighted";
    std::vector<std::string> k_disabled;
    std::uint64_t k_seed = 0;
    bool k_timings = false;
    auto *kcmd = app.add_subcommand("kernelize", "reduce an instance and write kernel plus metadata");
    add_input_options(kcmd, kin);
    kcmd->add_option("--output,-o", k_output, "kernel edge list; metadata goes to <output>.meta.json")->required();
    kcmd->add_option("--mode", k_mode, "kernel weights")->check(CLI::IsMember({"weighted", "unweighted"}));
    kcmd->add_option("--disable-rule", k_disabled, "R1 R2 R3 R4 R5 R6 R8 R8u R8s R1c R3c");
    kcmd->add_option("--seed", k_seed);
    kcmd->add_flag("--timings", k_timings, "include per-phase wall times in the report");
    kcmd->callback([&] { status = run_kernelize(kin, k_output, k_mode, k_disabled, k_seed, k_timings); });

    std::string g_model, g_output;
    std::size_t g_n = 0;
    std::optional<std::size_t> g_m;
    std::optional<double> g_radius, g_degree;
    std::uint64_t g_seed = 0;
    bool g_one_based = false;
    auto *gcmd = app.add_subcommand("generate", "write a random GNM or RGG2D instance");
    gcmd->add_option("--model", g_model)->required()->check(CLI::IsMember({"gnm", "rgg2d"}));
    gcmd->add_option("--n", g_n)->required();
    gcmd->add_option("--m", g_m);
    gcmd->add_option("--radius", g_radius);
    gcmd->add_option("--avg-degree", g_degree);
    gcmd->add_option("--seed", g_seed);
    gcmd->add_option("--output,-o", g_output, "defaults to standard output");
    gcmd->add_flag("--one-based", g_one_based);
    gcmd->callback([&] {
        DynamicGraph g = generate(g_model, g_n, g_m, g_radius, g_degree, g_seed);
        if (g_output.empty())
            write_edge_list(std::cout, g, g_one_based);
        else
            save_edge_list(g_output, g, g_one_based);
    });

    InputOptions vin;
    std::uint64_t v_seed = 0;
    auto *vcmd = app.add_subcommand("verify", "check kernel offset and lifting against exact solutions");
    add_input_options(vcmd, vin);
    std::vector<std::string> v_disabled;
    vcmd->add_option("--disable-rule", v_disabled);
    vcmd->add_option("--seed", v_seed);
    vcmd->callback([&] { status = run_verify(vin, v_disabled, v_seed); });

    AblateOptions aopt;
    std::string a_output;
    auto *acmd = app.add_subcommand("ablate", "efficiency samples with single rules disabled, as CSV");
    acmd->add_option("--model", aopt.model)->check(CLI::IsMember({"gnm", "rgg2d"}));
    acmd->add_option("--n", aopt.n);
    acmd->add_option("--trials", aopt.trials);
    acmd->add_option("--avg-degree", aopt.avg_degrees, "instances cycle through these average degrees");
    acmd->add_option("--disable-rule", aopt.disabled, "one extra config per rule");
    acmd->add_option("--seed", aopt.seed);
    acmd->add_option("--threads", aopt.threads);
    acmd->add_option("--output,-o", a_output, "defaults to standard output");
    acmd->callback([&] {
        if (a_output.empty()) {
            run_ablate(aopt, std::cout);
        } else {
            std::ofstream out(a_output, std::ios::binary);
            run_ablate(aopt, out);
        }
    });

    std::string l_kernel, l_cut, l_output;
    bool l_one_based = false;
    auto *lcmd = app.add_subcommand("lift", "turn a kernel cut into a cut of the input graph");
    lcmd->add_option("--kernel", l_kernel, "kernel edge list written by kernelize")->required();
    lcmd->add_option("--cut", l_cut, "'vertex side' lines; solved exactly when omitted");
    lcmd->add_option("--output,-o", l_output);
    lcmd->add_flag("--one-based", l_one_based);
    lcmd->callback([&] { status = run_lift(l_kernel, l_cut, l_output, l_one_based); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    } catch (const Error &e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kExitFail;
    }
    return status;
}
