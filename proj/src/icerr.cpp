#include "infl/icerr.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

#include <json.hpp>

namespace infl {
namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

int floor_log2(int n) { return std::bit_width(static_cast<unsigned>(n)) - 1; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

enum class Kernel { Individual, Shapley, Group };

struct GroupIndex {
    std::size_t count = 0;
    std::vector<std::vector<int>> of_node;  // node -> query-group ids
};

// generate RR sets with global indices [begin, end) in contiguous per-worker
// blocks and merge the per-worker accumulators in worker order, so a fixed
// (seed, workers) pair replays exactly and workers=1 is bit-reproducible
void run_batch(const TriggeringModel& model, const NodeWiseFunction& g, Kernel kernel,
               const GroupIndex* gidx, const RngStream& base, std::uint64_t begin,
               std::uint64_t end, int workers, std::vector<double>& acc) {
    if (begin >= end) return;
    const std::uint64_t count = end - begin;
    const auto nworkers = static_cast<std::uint64_t>(workers);
    const std::uint64_t chunk = (count + nworkers - 1) / nworkers;
    std::vector<std::vector<double>> local(static_cast<std::size_t>(workers),
                                           std::vector<double>(acc.size(), 0.0));
    auto work = [&](int w) {
        const std::uint64_t lo = begin + chunk * static_cast<std::uint64_t>(w);
        const std::uint64_t hi = std::min(end, lo + chunk);
        auto& mine = local[static_cast<std::size_t>(w)];
        std::vector<std::uint64_t> stamp;  // per-set first-hit marker, group kernel only
        if (kernel == Kernel::Group) stamp.assign(gidx->count, ~std::uint64_t{0});
        for (std::uint64_t t = lo; t < hi; ++t) {
            RRSet set = sample_rr_set(model, base.fork(t));
            switch (kernel) {
            case Kernel::Individual:
                rr_accumulate_individual(set, g, mine);
                break;
            case Kernel::Shapley:
                rr_accumulate_shapley(set, g, mine);
                break;
            case Kernel::Group:
                // dist is nondecreasing, so the first hit per group is its min
                for (std::size_t i = 0; i < set.nodes.size(); ++i) {
                    for (int j : gidx->of_node[static_cast<std::size_t>(set.nodes[i])]) {
                        auto js = static_cast<std::size_t>(j);
                        if (stamp[js] == t) continue;
                        stamp[js] = t;
                        mine[js] += g.g(set.dist[i]);
                    }
                }
                break;
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& th : threads) th.join();
    }
    for (const auto& mine : local)
        for (std::size_t v = 0; v < acc.size(); ++v) acc[v] += mine[v];
}

} // namespace

std::uint64_t theta_schedule(int n, double eps_prime, double ell, int i) {
    require(n >= 2, "schedule needs at least two nodes");
    require(eps_prime > 0.0, "eps' must be positive");
    require(ell > 0.0, "ell must be positive");
    const int imax = floor_log2(n) - 1;
    if (i < 1 || i > imax) throw std::invalid_argument("schedule index out of range");
    const double x = static_cast<double>(n) / std::exp2(i);
    const double num = static_cast<double>(n) *
                       ((ell + 1.0) * std::log(n) + std::log(std::log2(static_cast<double>(n))) +
                        std::log(2.0)) *
                       (2.0 + 2.0 / 3.0 * eps_prime);
    return static_cast<std::uint64_t>(std::ceil(num / (eps_prime * eps_prime * x)));
}

std::uint64_t final_theta(int n, double eps, double ell, double lb) {
    require(n >= 1, "model has no nodes");
    require(eps > 0.0, "eps must be positive");
    require(ell > 0.0, "ell must be positive");
    require(lb >= 1.0, "lower bound must be at least 1");
    const double num = static_cast<double>(n) * ((ell + 1.0) * std::log(n) + std::log(4.0)) *
                       (2.0 + 2.0 / 3.0 * eps);
    return static_cast<std::uint64_t>(std::ceil(num / (eps * eps * lb)));
}

double kth_largest(const std::vector<double>& values, int k) {
    require(k >= 1 && static_cast<std::size_t>(k) <= values.size(),
            "order statistic index out of range");
    std::vector<double> tmp(values);
    auto nth = tmp.begin() + (k - 1);
    std::nth_element(tmp.begin(), nth, tmp.end(), std::greater<>());
    return *nth;
}

CentralityReport estimate(const TriggeringModel& model, const EstimatorConfig& cfg,
                          EstimationTrace* trace_out) {
    const int n = model.n();
    require(n >= 1, "model has no nodes");
    require(cfg.eps > 0.0, "eps must be positive");
    require(cfg.ell > 0.0, "ell must be positive");
    require(cfg.k >= 1 && cfg.k <= n, "k must lie in [1, n]");
    require(cfg.workers >= 1, "worker count must be at least 1");
    require(cfg.max_rr_sets >= 1, "RR-set budget must be positive");

    GroupIndex gidx;
    if (cfg.mode == Mode::Group) {
        require(!cfg.groups.empty(), "group mode requires at least one group");
        gidx.count = cfg.groups.size();
        gidx.of_node.assign(static_cast<std::size_t>(n), {});
        for (std::size_t j = 0; j < cfg.groups.size(); ++j) {
            require(!cfg.groups[j].empty(), "groups must be nonempty");
            std::vector<char> seen(static_cast<std::size_t>(n), 0);
            for (int v : cfg.groups[j]) {
                require(v >= 0 && v < n, "group member out of range");
                require(!seen[static_cast<std::size_t>(v)], "duplicate node in group");
                seen[static_cast<std::size_t>(v)] = 1;
                gidx.of_node[static_cast<std::size_t>(v)].push_back(static_cast<int>(j));
            }
        }
    } else {
        require(cfg.groups.empty(), "groups are only meaningful in group mode");
    }

    EstimationTrace trace;
    const double eps_prime = std::sqrt(2.0) * cfg.eps;
    std::uint64_t generated = 0;
    auto charge = [&](std::uint64_t more) {
        if (generated + more > cfg.max_rr_sets)
            throw ResourceCapError("RR-set budget exceeded: " +
                                   std::to_string(generated + more) + " sets needed, cap " +
                                   std::to_string(cfg.max_rr_sets));
        generated += more;
    };

    // Phase 1: adaptively lower-bound the k-th largest centrality; the stop
    // rule always reads per-node accumulators, even for group queries
    auto t0 = std::chrono::steady_clock::now();
    const Kernel phase1_kernel =
        cfg.mode == Mode::Shapley ? Kernel::Shapley : Kernel::Individual;
    RngStream phase1_base(cfg.seed, 1);
    std::vector<double> est(static_cast<std::size_t>(n), 0.0);
    double lb = 1.0;
    std::uint64_t theta_prev = 0;
    const int imax = floor_log2(n) - 1;
    for (int i = 1; i <= imax; ++i) {
        const double x = static_cast<double>(n) / std::exp2(i);
        const std::uint64_t theta_i = theta_schedule(n, eps_prime, cfg.ell, i);
        charge(theta_i - theta_prev);
        run_batch(model, cfg.g, phase1_kernel, &gidx, phase1_base, theta_prev, theta_i,
                  cfg.workers, est);
        theta_prev = theta_i;
        const double est_k = kth_largest(est, cfg.k);
        const bool stop = static_cast<double>(n) * est_k / static_cast<double>(theta_i) >=
                          (1.0 + eps_prime) * x;
        trace.iterations.push_back({i, x, theta_i, est_k, stop});
        if (stop) {
            lb = static_cast<double>(n) * est_k /
                 (static_cast<double>(theta_i) * (1.0 + eps_prime));
            break;
        }
    }
    trace.lb = lb;
    trace.phase1_sets = theta_prev;
    trace.phase1_seconds = seconds_since(t0);

    // Phase 2: fresh RR sets from an independent stream
    t0 = std::chrono::steady_clock::now();
    const std::uint64_t theta = final_theta(n, cfg.eps, cfg.ell, lb);
    trace.theta = theta;
    charge(theta);
    const Kernel phase2_kernel = cfg.mode == Mode::Group     ? Kernel::Group
                                 : cfg.mode == Mode::Shapley ? Kernel::Shapley
                                                             : Kernel::Individual;
    RngStream phase2_base(cfg.seed, 2);
    const std::size_t width =
        cfg.mode == Mode::Group ? gidx.count : static_cast<std::size_t>(n);
    std::vector<double> acc(width, 0.0);
    run_batch(model, cfg.g, phase2_kernel, &gidx, phase2_base, 0, theta, cfg.workers, acc);
    const double scale = static_cast<double>(n) / static_cast<double>(theta);
    for (double& v : acc) v *= scale;
    trace.phase2_sets = theta;
    trace.phase2_seconds = seconds_since(t0);

    CentralityReport rep;
    rep.mode = cfg.mode;
    rep.function = cfg.g.name();
    rep.exact = false;
    rep.eps = cfg.eps;
    rep.ell = cfg.ell;
    rep.k = cfg.k;
    if (cfg.mode == Mode::Group) {
        rep.groups = cfg.groups;
        rep.group_values = std::move(acc);
    } else {
        rep.values = std::move(acc);
    }
    if (trace_out) *trace_out = trace;
    return rep;
}

std::string trace_to_json(const EstimationTrace& trace) {
    nlohmann::json j;
    auto iters = nlohmann::json::array();
    for (const auto& it : trace.iterations) {
        iters.push_back({{"i", it.i},
                         {"x", it.x},
                         {"theta_i", it.theta_i},
                         {"est_k", it.est_k},
                         {"stopped", it.stopped}});
    }
    j["iterations"] = iters;
    j["lb"] = trace.lb;
    j["theta"] = trace.theta;
    j["phase1_sets"] = trace.phase1_sets;
    j["phase2_sets"] = trace.phase2_sets;
    j["phase1_seconds"] = trace.phase1_seconds;
    j["phase2_seconds"] = trace.phase2_seconds;
    j["psi_k_assumed"] = trace.psi_k_assumed;
    return j.dump(2) + "\n";
}

} // namespace infl
