#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "infl/cascade.hpp"
#include "infl/centrality.hpp"
#include "infl/icerr.hpp"
#include "infl/profile.hpp"
#include "infl/rr.hpp"

namespace {

using namespace infl;

struct Options {
    std::string input, model = "ic", model_file, fn = "rch", mode = "individual";
    std::string groups_file, output, format = "csv", trace_path, dump_csv;
    std::string seed_set, root;
    double p = -1.0;  // <0 means "weights come from the input file"
    int delta = -1;
    double eps = 0.1, ell = 1.0;
    int k = 1, workers = 1, basis_n = 3;
    std::uint64_t seed = 0, trials = 10, count = 10, mc_perms = 0;
    bool remap = false, allow_n5 = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad value for ") + what + ": " + text);
    }
}

struct Loaded {
    TriggeringModel model;
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> by_label;
};

Loaded load_model(const Options& opt) {
    if (opt.input.empty()) throw std::invalid_argument("--input is required");
    const std::string text = slurp(opt.input);
    const bool uniform = opt.p >= 0.0;
    EdgeListFormat fmt = EdgeListFormat::Unweighted;
    if (!uniform && opt.model == "ic") fmt = EdgeListFormat::IcWeighted;
    if (!uniform && opt.model == "lt") fmt = EdgeListFormat::LtWeighted;
    ParsedGraph parsed = parse_edge_list(text, fmt, opt.remap);
    auto graph = std::make_shared<const DirectedGraph>(std::move(parsed.graph));

    std::optional<TriggeringModel> model;
    if (opt.model == "ic") {
        if (!opt.model_file.empty())
            throw std::invalid_argument("--model-file only applies to --model explicit");
        model = uniform ? TriggeringModel::make_ic_uniform(graph, opt.p)
                        : TriggeringModel::make_ic(graph, *parsed.weights);
    } else if (opt.model == "lt") {
        if (!opt.model_file.empty())
            throw std::invalid_argument("--model-file only applies to --model explicit");
        model = uniform ? TriggeringModel::make_lt_uniform(graph, opt.p)
                        : TriggeringModel::make_lt(graph, *parsed.weights);
    } else if (opt.model == "explicit") {
        if (opt.model_file.empty())
            throw std::invalid_argument("--model explicit requires --model-file");
        if (opt.remap)
            throw std::invalid_argument("--remap is not supported with explicit model files");
        if (uniform) throw std::invalid_argument("--p does not apply to explicit models");
        model = TriggeringModel::make_explicit(
            graph, parse_explicit_model(slurp(opt.model_file), *graph));
    } else {
        throw std::invalid_argument("unknown model kind: " + opt.model);
    }

    Loaded loaded{std::move(*model), std::move(parsed.labels), {}};
    for (std::size_t i = 0; i < loaded.labels.size(); ++i)
        loaded.by_label.emplace(loaded.labels[i], static_cast<int>(i));
    return loaded;
}

int resolve_node(const std::string& token, const Loaded& loaded) {
    const std::string t = trim(token);
    if (t.empty()) throw std::invalid_argument("empty node reference");
    if (!loaded.by_label.empty()) {
        auto it = loaded.by_label.find(t);
        if (it == loaded.by_label.end()) throw std::invalid_argument("unknown node label: " + t);
        return it->second;
    }
    std::size_t pos = 0;
    long v = -1;
    try {
        v = std::stol(t, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad node id: " + t);
    }
    if (pos != t.size()) throw std::invalid_argument("bad node id: " + t);
    if (v < 0 || v >= loaded.model.n()) throw std::invalid_argument("node id out of range: " + t);
    return static_cast<int>(v);
}

std::vector<int> parse_node_list(const std::string& text, const Loaded& loaded) {
    std::vector<int> nodes;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ','))
        if (!trim(token).empty()) nodes.push_back(resolve_node(token, loaded));
    if (nodes.empty()) throw std::invalid_argument("empty node list");
    return nodes;
}

// groups file: one group per line, comma-separated ids; '#' starts a comment
std::vector<std::vector<int>> load_groups(const std::string& path, const Loaded& loaded) {
    std::vector<std::vector<int>> groups;
    std::istringstream in(slurp(path));
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        groups.push_back(parse_node_list(line, loaded));
    }
    if (groups.empty()) throw std::invalid_argument("groups file has no groups: " + path);
    return groups;
}

DistanceFunction make_fn(const Options& opt) {
    if (opt.fn == "deg") return DistanceFunction::from(NodeWiseFunction::deg());
    if (opt.fn == "har") return DistanceFunction::from(NodeWiseFunction::har());
    if (opt.fn == "rch") return DistanceFunction::from(NodeWiseFunction::rch());
    if (opt.fn == "soi") {
        if (opt.delta < 0) throw std::invalid_argument("--fn soi requires --delta");
        return DistanceFunction::from(NodeWiseFunction::soi(opt.delta));
    }
    if (opt.fn == "cls") return DistanceFunction::closeness();
    throw std::invalid_argument("unknown centrality function: " + opt.fn);
}

Mode parse_mode(const std::string& mode) {
    if (mode == "individual") return Mode::Individual;
    if (mode == "group") return Mode::Group;
    if (mode == "shapley") return Mode::Shapley;
    throw std::invalid_argument("unknown mode: " + mode);
}

void emit_report(const CentralityReport& rep, const Loaded& loaded, const Options& opt) {
    if (opt.format == "json")
        write_out(opt.output, report_to_json(rep, loaded.labels));
    else
        write_out(opt.output, report_to_csv(rep, loaded.labels));
}

int run_estimate(const Options& opt) {
    Loaded loaded = load_model(opt);
    DistanceFunction f = make_fn(opt);
    if (!f.additive)
        throw std::invalid_argument("closeness is not additive; use the exact oracle");
    EstimatorConfig cfg;
    cfg.eps = opt.eps;
    cfg.ell = opt.ell;
    cfg.k = opt.k;
    cfg.mode = parse_mode(opt.mode);
    cfg.g = f.gfn;
    cfg.seed = opt.seed;
    cfg.workers = opt.workers;
    if (const char* cap = std::getenv("CC_MAX_RR_SETS"))
        cfg.max_rr_sets = parse_u64(cap, "CC_MAX_RR_SETS");
    if (cfg.mode == Mode::Group) {
        if (opt.groups_file.empty()) throw std::invalid_argument("group mode requires --groups");
        cfg.groups = load_groups(opt.groups_file, loaded);
    } else if (!opt.groups_file.empty()) {
        throw std::invalid_argument("--groups requires --mode group");
    }
    EstimationTrace trace;
    CentralityReport rep = estimate(loaded.model, cfg, &trace);
    if (!opt.trace_path.empty()) {
        write_out(opt.trace_path, trace_to_json(trace));
        std::cerr << "phase 1: " << trace.phase1_sets << " RR sets, lb=" << trace.lb << "; phase 2: "
                  << trace.phase2_sets << " RR sets\n";
    }
    emit_report(rep, loaded, opt);
    return 0;
}

int run_exact(const Options& opt) {
    Loaded loaded = load_model(opt);
    DistanceFunction f = make_fn(opt);
    Mode mode = parse_mode(opt.mode);
    std::vector<std::vector<int>> groups;
    if (mode == Mode::Group) {
        if (opt.groups_file.empty()) throw std::invalid_argument("group mode requires --groups");
        groups = load_groups(opt.groups_file, loaded);
    } else if (!opt.groups_file.empty()) {
        throw std::invalid_argument("--groups requires --mode group");
    }
    ShapleyOptions sh;
    sh.mc_permutations = opt.mc_perms;
    sh.seed = opt.seed;
    emit_report(exact_influence_centrality(loaded.model, f, mode, groups, sh), loaded, opt);
    return 0;
}

int run_basis_check(const Options& opt) {
    RankReport rank = basis_rank_check(opt.basis_n, opt.allow_n5);
    std::ostringstream line;
    line << "M=" << rank.M << ", |L|=" << rank.layered_count << ", rank=" << rank.rank
         << ", full-rank=" << (rank.full_rank ? "true" : "false") << "\n";
    write_out(opt.output, line.str());
    if (!opt.dump_csv.empty()) {
        SequenceIndex index = enumerate_sequences(opt.basis_n);
        std::ostringstream csv;
        csv << "instance,levels,vector\n";
        auto instances = enumerate_layered_instances(opt.basis_n);
        for (std::size_t c = 0; c < instances.size(); ++c) {
            ProfileVector vec = layered_instance_vector(instances[c], index);
            csv << c << ',';
            DistanceVector levels(static_cast<std::size_t>(opt.basis_n), kInfDist);
            for (std::size_t t = 0; t < instances[c].layers.size(); ++t)
                for (int v : instances[c].layers[t])
                    levels[static_cast<std::size_t>(v)] = static_cast<HopDist>(t);
            for (std::size_t v = 0; v < levels.size(); ++v) {
                if (v) csv << ';';
                if (is_inf(levels[v]))
                    csv << "inf";
                else
                    csv << levels[v];
            }
            csv << ',';
            for (std::size_t j = 0; j < vec.values.size(); ++j) {
                if (j) csv << ';';
                csv << vec.values[j];
            }
            csv << '\n';
        }
        write_out(opt.dump_csv, csv.str());
    }
    return 0;
}

int run_simulate(const Options& opt) {
    Loaded loaded = load_model(opt);
    if (opt.seed_set.empty()) throw std::invalid_argument("simulate requires --seed-set");
    std::vector<int> seeds = parse_node_list(opt.seed_set, loaded);
    RngStream base(opt.seed, 4);
    std::ostringstream out;
    out << "trial,node,time\n";
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
        CascadingSequence seq = simulate_cascade(loaded.model, seeds, base);
        for (int v = 0; v < loaded.model.n(); ++v) {
            auto vs = static_cast<std::size_t>(v);
            out << t << ',' << (loaded.labels.empty() ? std::to_string(v) : loaded.labels[vs])
                << ',';
            if (is_inf(seq.times[vs]))
                out << "inf";
            else
                out << seq.times[vs];
            out << '\n';
        }
    }
    write_out(opt.output, out.str());
    return 0;
}

int run_rr_dump(const Options& opt) {
    Loaded loaded = load_model(opt);
    std::optional<int> root;
    if (!opt.root.empty()) root = resolve_node(opt.root, loaded);
    RngStream base(opt.seed, 3);
    std::ostringstream out;
    for (std::uint64_t t = 0; t < opt.count; ++t)
        out << rr_set_to_line(sample_rr_set(loaded.model, base.fork(t), root), loaded.labels)
            << '\n';
    write_out(opt.output, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"influence-based network centralities: exact oracles and RR-set estimation"};
    app.require_subcommand(1);

    auto add_model = [&](CLI::App* c) {
        c->add_option("--input", opt.input, "edge-list file")->required();
        c->add_option("--model", opt.model, "diffusion model (ic, lt, explicit)")
            ->check(CLI::IsMember({"ic", "lt", "explicit"}));
        c->add_option("--model-file", opt.model_file,
                      "triggering distribution file for --model explicit");
        c->add_option("--p", opt.p, "uniform weight for every edge (input must be unweighted)");
        c->add_flag("--remap", opt.remap, "treat node ids as labels and remap them densely");
    };
    auto add_fn = [&](CLI::App* c) {
        c->add_option("--fn", opt.fn, "centrality function (deg, har, rch, soi, cls)")
            ->check(CLI::IsMember({"deg", "har", "rch", "soi", "cls"}));
        c->add_option("--delta", opt.delta, "sphere-of-influence radius for --fn soi");
    };
    auto add_mode = [&](CLI::App* c) {
        c->add_option("--mode", opt.mode, "individual, group, or shapley")
            ->check(CLI::IsMember({"individual", "group", "shapley"}));
        c->add_option("--groups", opt.groups_file,
                      "groups file for group mode (one comma-separated group per line)");
    };
    auto add_output = [&](CLI::App* c) {
        c->add_option("--output", opt.output, "output path (default: stdout)");
        c->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_seed = [&](CLI::App* c) {
        c->add_option("--seed", opt.seed, "RNG seed");
    };

    CLI::App* est = app.add_subcommand("estimate", "two-phase RR-set estimation");
    add_model(est);
    add_fn(est);
    add_mode(est);
    add_output(est);
    add_seed(est);
    est->add_option("--eps", opt.eps, "relative-error target");
    est->add_option("--ell", opt.ell, "confidence exponent");
    est->add_option("--k", opt.k, "rank index for the phase-1 stop rule");
    est->add_option("--workers", opt.workers, "worker thread count");
    est->add_option("--trace", opt.trace_path, "write the estimation trace as JSON");

    CLI::App* exa = app.add_subcommand("exact", "exhaustive-enumeration oracle");
    add_model(exa);
    add_fn(exa);
    add_mode(exa);
    add_output(exa);
    add_seed(exa);
    exa->add_option("--mc-perms", opt.mc_perms,
                    "Monte Carlo permutations for Shapley beyond the exact-size guard");

    CLI::App* basis = app.add_subcommand("basis-check", "layered-instance basis rank check");
    basis->add_option("--n", opt.basis_n, "node count (2-5)")->check(CLI::Range(2, 5));
    basis->add_flag("--allow-n5", opt.allow_n5, "opt in to the large n=5 computation");
    basis->add_option("--dump", opt.dump_csv, "write the basis vectors as CSV");
    add_output(basis);

    CLI::App* sim = app.add_subcommand("simulate", "sample cascade traces from a seed set");
    add_model(sim);
    add_output(sim);
    add_seed(sim);
    sim->add_option("--seed-set", opt.seed_set, "comma-separated seed nodes")->required();
    sim->add_option("--trials", opt.trials, "number of cascades");

    CLI::App* dump = app.add_subcommand("rr-dump", "sample raw RR sets");
    add_model(dump);
    add_output(dump);
    add_seed(dump);
    dump->add_option("--count", opt.count, "number of RR sets");
    dump->add_option("--root", opt.root, "fix the RR root (default: uniform)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (est->parsed()) return run_estimate(opt);
        if (exa->parsed()) return run_exact(opt);
        if (basis->parsed()) return run_basis_check(opt);
        if (sim->parsed()) return run_simulate(opt);
        if (dump->parsed()) return run_rr_dump(opt);
        throw std::invalid_argument("no command given");
    } catch (const ResourceCapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
