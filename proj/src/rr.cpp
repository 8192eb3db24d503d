#include "infl/rr.hpp"

#include <algorithm>
#include <stdexcept>

namespace infl {

RRSet sample_rr_set(const TriggeringModel& model, RngStream rng, std::optional<int> root_opt) {
    const DirectedGraph& g = model.graph();
    const int n = g.n();
    if (n == 0) throw std::invalid_argument("cannot sample an RR set from an empty graph");
    int root = root_opt ? *root_opt : static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    if (root < 0 || root >= n) throw std::invalid_argument("RR root out of range");

    RRSet set;
    set.root = root;
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[static_cast<std::size_t>(root)] = 1;
    set.nodes.push_back(root);
    set.dist.push_back(0);
    // each node is dequeued (and its triggering set sampled) at most once
    for (std::size_t head = 0; head < set.nodes.size(); ++head) {
        int u = set.nodes[head];
        HopDist d = set.dist[head];
        RngStream sub = rng.fork(static_cast<std::uint64_t>(u));
        for (int w : sample_triggering_set(model, u, sub)) {
            if (visited[static_cast<std::size_t>(w)]) continue;
            visited[static_cast<std::size_t>(w)] = 1;
            set.nodes.push_back(w);
            set.dist.push_back(d + 1);
        }
    }
    set.delta = static_cast<int>(set.dist.back());
    set.level_sizes.assign(static_cast<std::size_t>(set.delta) + 1, 0);
    for (HopDist d : set.dist) ++set.level_sizes[d];
    return set;
}

void rr_accumulate_individual(const RRSet& set, const NodeWiseFunction& g,
                              std::vector<double>& acc) {
    for (std::size_t i = 0; i < set.nodes.size(); ++i)
        acc[static_cast<std::size_t>(set.nodes[i])] += g.g(set.dist[i]);
}

std::vector<double> rr_shapley_levels(const RRSet& set, const NodeWiseFunction& g) {
    const int delta = set.delta;
    const double r = static_cast<double>(set.size());
    // suffix[k] = members at distance >= k; r - suffix[k+1] = members within k
    std::vector<double> suffix(static_cast<std::size_t>(delta) + 2, 0.0);
    for (int k = delta; k >= 0; --k)
        suffix[static_cast<std::size_t>(k)] = suffix[static_cast<std::size_t>(k) + 1] +
                                              set.level_sizes[static_cast<std::size_t>(k)];
    std::vector<double> phi(static_cast<std::size_t>(delta) + 1, 0.0);
    double tail = 0.0;  // sum over levels above k of g(i) * (1/(r-s_i) - 1/(r-s_{i+1}))
    for (int k = delta; k >= 0; --k) {
        auto ks = static_cast<std::size_t>(k);
        phi[ks] = g.g(static_cast<HopDist>(k)) / (r - suffix[ks + 1]) - tail;
        if (k > 0)
            tail += g.g(static_cast<HopDist>(k)) * (1.0 / (r - suffix[ks]) - 1.0 / (r - suffix[ks + 1]));
    }
    return phi;
}

void rr_accumulate_shapley(const RRSet& set, const NodeWiseFunction& g,
                           std::vector<double>& acc) {
    std::vector<double> phi = rr_shapley_levels(set, g);
    for (std::size_t i = 0; i < set.nodes.size(); ++i)
        acc[static_cast<std::size_t>(set.nodes[i])] += phi[set.dist[i]];
}

double rr_group_contribution(const RRSet& set, const NodeWiseFunction& g,
                             const std::vector<char>& member) {
    for (std::size_t i = 0; i < set.nodes.size(); ++i)  // dist is sorted: first hit is the min
        if (member[static_cast<std::size_t>(set.nodes[i])]) return g.g(set.dist[i]);
    return 0.0;
}

double rr_group_contribution(const RRSet& set, const NodeWiseFunction& g,
                             const std::vector<int>& group) {
    int n = 0;
    for (int v : set.nodes) n = std::max(n, v + 1);
    for (int v : group) n = std::max(n, v + 1);
    std::vector<char> member(static_cast<std::size_t>(n), 0);
    for (int v : group) member[static_cast<std::size_t>(v)] = 1;
    return rr_group_contribution(set, g, member);
}

std::string rr_set_to_line(const RRSet& set, const std::vector<std::string>& labels) {
    auto name = [&](int v) {
        return labels.empty() ? std::to_string(v) : labels[static_cast<std::size_t>(v)];
    };
    std::string out = name(set.root) + " | ";
    for (std::size_t i = 0; i < set.nodes.size(); ++i) {
        if (i) out += ',';
        out += name(set.nodes[i]) + ':' + std::to_string(set.dist[i]);
    }
    return out;
}

} // namespace infl
