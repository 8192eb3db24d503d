#include "infl/cascade.hpp"

namespace infl {

std::vector<std::vector<int>> CascadingSequence::sets() const {
    const int n = static_cast<int>(times.size());
    std::vector<std::vector<int>> out(n);
    for (int t = 0; t < n; ++t)
        for (int u = 0; u < n; ++u)
            if (!is_inf(times[u]) && times[u] <= static_cast<HopDist>(t))
                out[t].push_back(u);
    return out;
}

CascadingSequence simulate_cascade(const TriggeringModel& model,
                                   const std::vector<int>& seed_set, RngStream& rng) {
    if (seed_set.empty())
        throw std::invalid_argument("simulate_cascade: empty seed set");
    const DirectedGraph& g = model.graph();
    const int n = g.n();
    RngStream base = rng.split();

    CascadingSequence seq;
    seq.times.assign(n, kInfDist);
    std::vector<int> frontier;
    for (int s : seed_set) {
        if (s < 0 || s >= n)
            throw std::invalid_argument("simulate_cascade: seed out of range");
        if (seq.times[s] != 0) {
            seq.times[s] = 0;
            frontier.push_back(s);
        }
    }

    std::vector<char> sampled(n, 0);
    std::vector<std::vector<int>> tset(n);
    std::vector<int> next;
    for (HopDist t = 1; !frontier.empty(); ++t) {
        next.clear();
        for (int u : frontier) {
            for (int v : g.out_neighbors(u)) {
                if (!is_inf(seq.times[v])) continue;
                if (!sampled[v]) {
                    RngStream node_rng = base.fork(v);
                    tset[v] = sample_triggering_set(model, v, node_rng);
                    sampled[v] = 1;
                }
                // v activates iff its triggering set intersects the frontier
                for (int w : tset[v]) {
                    if (seq.times[w] == t - 1) {
                        seq.times[v] = t;
                        next.push_back(v);
                        break;
                    }
                }
            }
        }
        frontier.swap(next);
    }
    return seq;
}

CascadingSequence bfs_instance_sequence(const DirectedGraph& g,
                                        const std::vector<int>& seed_set) {
    if (seed_set.empty())
        throw std::invalid_argument("bfs_instance_sequence: empty seed set");
    return CascadingSequence{bfs_distances(g, seed_set)};
}

ValidationResult validate_sequence(const DirectedGraph& g, const CascadingSequence& seq) {
    const int n = g.n();
    if (static_cast<int>(seq.times.size()) != n)
        return {false, "sequence length does not match graph size"};

    HopDist max_t = 0;
    bool any_seed = false;
    for (int u = 0; u < n; ++u) {
        const HopDist t = seq.times[u];
        if (is_inf(t)) continue;
        if (t >= static_cast<HopDist>(n))
            return {false, "node " + std::to_string(u) + " activated at step " +
                               std::to_string(t) + " >= n"};
        if (t == 0) any_seed = true;
        max_t = std::max(max_t, t);
    }
    if (!any_seed) return {false, "empty seed set S_0"};

    // strict growth until stabilization: every step up to max_t is nonempty
    std::vector<char> step_used(max_t + 1, 0);
    for (int u = 0; u < n; ++u)
        if (!is_inf(seq.times[u])) step_used[seq.times[u]] = 1;
    for (HopDist t = 0; t <= max_t; ++t)
        if (!step_used[t])
            return {false, "no node activated at step " + std::to_string(t) +
                               " but later steps are nonempty"};

    // G-continuity: a node activated at t needs an in-neighbor at t-1
    for (int u = 0; u < n; ++u) {
        const HopDist t = seq.times[u];
        if (is_inf(t) || t == 0) continue;
        bool reached = false;
        for (int w : g.in_neighbors(u)) {
            if (seq.times[w] == t - 1) {
                reached = true;
                break;
            }
        }
        if (!reached)
            return {false, "node " + std::to_string(u) + " activated at step " +
                               std::to_string(t) + " with no in-neighbor active at step " +
                               std::to_string(t - 1)};
    }
    return {};
}

} // namespace infl
