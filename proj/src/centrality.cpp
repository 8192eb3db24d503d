#include "infl/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "infl/rng.hpp"

namespace infl {
namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void validate_groups(int n, const std::vector<std::vector<int>>& groups) {
    require(!groups.empty(), "group mode requires at least one group");
    for (const auto& grp : groups) {
        require(!grp.empty(), "groups must be nonempty");
        for (int v : grp) require(v >= 0 && v < n, "group member out of range");
        auto sorted = grp;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                "duplicate node in group");
    }
}

// value of the empty coalition: every node unreachable
double empty_value(int n, const DistanceFunction& f) {
    return f.eval(DistanceVector(static_cast<std::size_t>(n), kInfDist));
}

// exact Shapley values of mask -> val[mask] by averaging marginal
// contributions over all n! orders
std::vector<double> shapley_from_table(int n, const std::vector<double>& val) {
    std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::uint64_t perms = 0;
    do {
        ++perms;
        std::uint32_t mask = 0;
        double prev = val[0];
        for (int v : order) {
            mask |= 1u << v;
            phi[static_cast<std::size_t>(v)] += val[mask] - prev;
            prev = val[mask];
        }
    } while (std::next_permutation(order.begin(), order.end()));
    for (double& x : phi) x /= static_cast<double>(perms);
    return phi;
}

// Monte Carlo fallback over sampled orders; coalition passed as a sorted
// node list; returns per-node means and standard errors
template <typename CoalitionValue>
void shapley_sampled(int n, std::uint64_t num_perms, RngStream rng, CoalitionValue&& value,
                     double v_empty, std::vector<double>& mean, std::vector<double>& se) {
    require(num_perms > 0, "Monte Carlo Shapley requires at least one permutation");
    mean.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<double> m2(static_cast<std::size_t>(n), 0.0);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> coalition;
    for (std::uint64_t t = 0; t < num_perms; ++t) {
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.next_below(i)]);
        coalition.clear();
        double prev = v_empty;
        for (int v : order) {
            coalition.insert(std::lower_bound(coalition.begin(), coalition.end(), v), v);
            double cur = value(coalition);
            double delta = cur - prev;
            prev = cur;
            auto vi = static_cast<std::size_t>(v);
            double d1 = delta - mean[vi];
            mean[vi] += d1 / static_cast<double>(t + 1);
            m2[vi] += d1 * (delta - mean[vi]);
        }
    }
    se.assign(static_cast<std::size_t>(n), 0.0);
    if (num_perms > 1) {
        for (std::size_t v = 0; v < se.size(); ++v)
            se[v] = std::sqrt(m2[v] / static_cast<double>(num_perms - 1) /
                              static_cast<double>(num_perms));
    }
}

std::vector<int> mask_nodes(std::uint32_t mask) {
    std::vector<int> nodes;
    for (int v = 0; mask != 0; ++v, mask >>= 1)
        if (mask & 1u) nodes.push_back(v);
    return nodes;
}

} // namespace

std::string NodeWiseFunction::name() const {
    switch (kind) {
    case GKind::Deg: return "deg";
    case GKind::Har: return "har";
    case GKind::Rch: return "rch";
    case GKind::Soi: return "soi(" + std::to_string(delta) + ")";
    }
    return "?";
}

NodeWiseFunction NodeWiseFunction::soi(int delta) {
    if (delta < 0) throw std::invalid_argument("soi radius must be nonnegative");
    return {GKind::Soi, delta};
}

double DistanceFunction::eval(const DistanceVector& d) const {
    if (additive) {
        double sum = 0.0;
        for (HopDist x : d) sum += gfn.g(x);
        return sum;
    }
    // closeness: zero when anything is unreachable (or the sum is zero)
    double sum = 0.0;
    for (HopDist x : d) {
        if (is_inf(x)) return 0.0;
        sum += static_cast<double>(x);
    }
    return sum > 0.0 ? 1.0 / sum : 0.0;
}

std::string DistanceFunction::name() const { return additive ? gfn.name() : "cls"; }

std::string mode_name(Mode mode) {
    switch (mode) {
    case Mode::Individual: return "individual";
    case Mode::Group: return "group";
    case Mode::Shapley: return "shapley";
    }
    return "?";
}

CentralityReport graph_centrality(const DirectedGraph& g, const DistanceFunction& f, Mode mode,
                                  const std::vector<std::vector<int>>& groups,
                                  const ShapleyOptions& opts) {
    const int n = g.n();
    CentralityReport rep;
    rep.mode = mode;
    rep.function = f.name();
    rep.exact = true;

    switch (mode) {
    case Mode::Individual: {
        rep.values.resize(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            rep.values[static_cast<std::size_t>(v)] = f.eval(bfs_distances(g, {v}));
        break;
    }
    case Mode::Group: {
        validate_groups(n, groups);
        rep.groups = groups;
        rep.group_values.reserve(groups.size());
        for (const auto& grp : groups) rep.group_values.push_back(f.eval(bfs_distances(g, grp)));
        break;
    }
    case Mode::Shapley: {
        if (n <= kMaxGraphShapley) {
            std::vector<double> val(std::size_t{1} << n);
            val[0] = empty_value(n, f);
            for (std::uint32_t mask = 1; mask < val.size(); ++mask)
                val[mask] = f.eval(bfs_distances(g, mask_nodes(mask)));
            rep.values = shapley_from_table(n, val);
        } else {
            if (opts.mc_permutations == 0)
                throw std::invalid_argument(
                    "graph Shapley beyond 9 nodes needs Monte Carlo permutations");
            rep.exact = false;
            auto value = [&](const std::vector<int>& coalition) {
                return f.eval(bfs_distances(g, coalition));
            };
            shapley_sampled(n, opts.mc_permutations, RngStream(opts.seed, 0x5a), value,
                            empty_value(n, f), rep.values, rep.std_errors);
        }
        break;
    }
    }
    return rep;
}

namespace {

// materialized live-edge outcome distribution for repeated seed queries
struct OutcomeTable {
    std::vector<DirectedGraph> graphs;
    std::vector<double> probs;
};

OutcomeTable materialize_outcomes(const TriggeringModel& model) {
    OutcomeTable table;
    for_each_live_edge_outcome(model, [&](const DirectedGraph& live, double p) {
        if (p <= 0.0) return;
        table.graphs.push_back(live);
        table.probs.push_back(p);
    });
    return table;
}

double expected_value(const OutcomeTable& table, const std::vector<int>& seeds,
                      const DistanceFunction& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < table.graphs.size(); ++i)
        acc += table.probs[i] * f.eval(bfs_distances(table.graphs[i], seeds));
    return acc;
}

} // namespace

CentralityReport exact_influence_centrality(const TriggeringModel& model,
                                            const DistanceFunction& f, Mode mode,
                                            const std::vector<std::vector<int>>& groups,
                                            const ShapleyOptions& opts) {
    const int n = model.n();
    CentralityReport rep;
    rep.mode = mode;
    rep.function = f.name();
    rep.exact = true;

    switch (mode) {
    case Mode::Individual: {
        rep.values.assign(static_cast<std::size_t>(n), 0.0);
        for_each_live_edge_outcome(model, [&](const DirectedGraph& live, double p) {
            if (p <= 0.0) return;
            for (int v = 0; v < n; ++v)
                rep.values[static_cast<std::size_t>(v)] += p * f.eval(bfs_distances(live, {v}));
        });
        break;
    }
    case Mode::Group: {
        validate_groups(n, groups);
        rep.groups = groups;
        rep.group_values.assign(groups.size(), 0.0);
        for_each_live_edge_outcome(model, [&](const DirectedGraph& live, double p) {
            if (p <= 0.0) return;
            for (std::size_t j = 0; j < groups.size(); ++j)
                rep.group_values[j] += p * f.eval(bfs_distances(live, groups[j]));
        });
        break;
    }
    case Mode::Shapley: {
        if (n <= kMaxInfluenceShapley) {
            std::vector<double> val(std::size_t{1} << n, 0.0);
            std::vector<std::vector<int>> nodes_of(val.size());
            for (std::uint32_t mask = 1; mask < val.size(); ++mask)
                nodes_of[mask] = mask_nodes(mask);
            double f_empty = empty_value(n, f);
            for_each_live_edge_outcome(model, [&](const DirectedGraph& live, double p) {
                if (p <= 0.0) return;
                val[0] += p * f_empty;
                for (std::uint32_t mask = 1; mask < val.size(); ++mask)
                    val[mask] += p * f.eval(bfs_distances(live, nodes_of[mask]));
            });
            rep.values = shapley_from_table(n, val);
        } else {
            if (opts.mc_permutations == 0)
                throw std::invalid_argument(
                    "influence Shapley beyond 8 nodes needs Monte Carlo permutations");
            rep.exact = false;
            OutcomeTable table = materialize_outcomes(model);
            auto value = [&](const std::vector<int>& coalition) {
                return expected_value(table, coalition, f);
            };
            shapley_sampled(n, opts.mc_permutations, RngStream(opts.seed, 0x5b), value,
                            empty_value(n, f), rep.values, rep.std_errors);
        }
        break;
    }
    }
    return rep;
}

std::vector<double> profile_centrality(const ProfileVector& profile, const SequenceIndex& index,
                                       const DistanceFunction& f) {
    const int n = profile.n;
    require(index.n == n, "profile and index disagree on node count");
    require(profile.values.size() == index.keys.size(), "profile length mismatch");
    std::vector<double> psi(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < n; ++v) {
        double mass = 0.0;
        for (std::size_t j = 0; j < index.keys.size(); ++j) {
            const DistanceVector& times = index.keys[j];
            // keep sequences seeded by exactly {v}
            if (times[static_cast<std::size_t>(v)] != 0) continue;
            bool only_v = true;
            for (int u = 0; u < n && only_v; ++u)
                only_v = (u == v) || times[static_cast<std::size_t>(u)] != 0;
            if (!only_v) continue;
            psi[static_cast<std::size_t>(v)] += profile.values[j] * f.eval(times);
            mass += profile.values[j];
        }
        // the stationary sequence from {v} carries the leftover mass
        DistanceVector still(static_cast<std::size_t>(n), kInfDist);
        still[static_cast<std::size_t>(v)] = 0;
        psi[static_cast<std::size_t>(v)] += (1.0 - mass) * f.eval(still);
    }
    return psi;
}

bool check_anonymity(const TriggeringModel& model, const DistanceFunction& f,
                     const std::vector<int>& perm, double tol) {
    const int n = model.n();
    require(static_cast<int>(perm.size()) == n, "permutation length mismatch");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : perm) {
        require(v >= 0 && v < n, "permutation entry out of range");
        require(!seen[static_cast<std::size_t>(v)], "permutation entry repeated");
        seen[static_cast<std::size_t>(v)] = 1;
    }
    auto lhs = exact_influence_centrality(model, f, Mode::Individual);
    auto rhs = exact_influence_centrality(model.relabel(perm), f, Mode::Individual);
    for (int v = 0; v < n; ++v) {
        double a = lhs.values[static_cast<std::size_t>(v)];
        double b = rhs.values[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])];
        if (std::abs(a - b) > tol) return false;
    }
    return true;
}

bool check_bayesian(const TriggeringModel& m1, const TriggeringModel& m2, double alpha,
                    const DistanceFunction& f, double tol) {
    const int n = m1.n();
    require(m2.n() == n, "mixture components must share the node count");
    require(n <= kMaxProfileNodes, "Bayesian check relies on profile enumeration");
    require(alpha >= 0.0 && alpha <= 1.0, "mixture weight must lie in [0,1]");

    SequenceIndex index = enumerate_sequences(n);
    ProfileVector p1 = exact_profile(m1, index);
    ProfileVector p2 = exact_profile(m2, index);
    ProfileVector mix{n, std::vector<double>(index.keys.size(), 0.0)};
    for (std::size_t j = 0; j < mix.values.size(); ++j)
        mix.values[j] = alpha * p1.values[j] + (1.0 - alpha) * p2.values[j];

    std::vector<double> lhs = profile_centrality(mix, index, f);
    auto r1 = exact_influence_centrality(m1, f, Mode::Individual);
    auto r2 = exact_influence_centrality(m2, f, Mode::Individual);
    for (int v = 0; v < n; ++v) {
        auto vi = static_cast<std::size_t>(v);
        double rhs = alpha * r1.values[vi] + (1.0 - alpha) * r2.values[vi];
        if (std::abs(lhs[vi] - rhs) > tol) return false;
    }
    return true;
}

} // namespace infl
