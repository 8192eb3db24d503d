#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "infl/graph.hpp"
#include "infl/rng.hpp"

namespace infl {

enum class ModelKind { IC, LT, Explicit };

// one atom of a per-node triggering-set distribution
struct TriggeringEntry {
    std::vector<int> subset;  // sorted subset of in-neighbors
    double p;
};

// Immutable triggering-set diffusion model over a fixed graph. T(v) is a
// random subset of v's in-neighbors: IC includes each in-neighbor u
// independently with probability p_uv; LT picks at most one in-neighbor
// (u with probability b_uv, nothing with the residual mass); Explicit
// stores the distribution outright.
class TriggeringModel {
public:
    static TriggeringModel make_ic(std::shared_ptr<const DirectedGraph> g,
                                   const EdgeWeightMap& p);
    static TriggeringModel make_ic_uniform(std::shared_ptr<const DirectedGraph> g, double p);
    static TriggeringModel make_lt(std::shared_ptr<const DirectedGraph> g,
                                   const EdgeWeightMap& b);
    static TriggeringModel make_lt_uniform(std::shared_ptr<const DirectedGraph> g, double b);
    // dists[v] may be empty, meaning T(v) = {} with probability 1
    static TriggeringModel make_explicit(std::shared_ptr<const DirectedGraph> g,
                                         std::vector<std::vector<TriggeringEntry>> dists);

    ModelKind kind() const { return kind_; }
    const DirectedGraph& graph() const { return *graph_; }
    std::shared_ptr<const DirectedGraph> graph_ptr() const { return graph_; }
    int n() const { return graph_->n(); }

    // IC/LT weight of in-edge (in_neighbors(v)[i], v)
    double in_weight(int v, std::size_t i) const { return in_w_[v][i]; }
    const std::vector<TriggeringEntry>& explicit_dist(int v) const { return dists_[v]; }

    // relabeled copy: node v becomes perm[v]
    TriggeringModel relabel(const std::vector<int>& perm) const;

private:
    TriggeringModel() = default;

    ModelKind kind_ = ModelKind::IC;
    std::shared_ptr<const DirectedGraph> graph_;
    std::vector<std::vector<double>> in_w_;            // IC/LT, aligned with in_neighbors
    std::vector<std::vector<TriggeringEntry>> dists_;  // Explicit only
};

// One draw of T(v), consuming randomness from rng in in-neighbor order.
std::vector<int> sample_triggering_set(const TriggeringModel& model, int v, RngStream& rng);

// One joint draw of all triggering sets: edge set {(u,v) : u in T(v)}.
// Node v's set is read from fork(v) of a split of rng, so the result is
// coupled exactly with simulate_cascade run on an equal-state stream.
DirectedGraph sample_live_edge_graph(const TriggeringModel& model, RngStream& rng);

// ---- exact enumeration of the model's randomness ----------------------

// per-node atoms of the triggering distribution, degenerate nodes collapsed
struct NodeOptions {
    std::vector<std::vector<int>> subsets;
    std::vector<double> probs;
};

inline constexpr std::uint64_t kMaxJointSupport = 1u << 16;

// Expands per-node triggering distributions (IC: subsets of the edges with
// 0 < p < 1, certain edges always present; LT: one-neighbor atoms plus the
// residual; Explicit: the stored entries). Throws when the joint support
// would exceed kMaxJointSupport.
std::vector<NodeOptions> enumerate_triggering_options(const TriggeringModel& model);

// Visits every live-edge outcome with its probability. The DirectedGraph
// argument is reused between calls; copy it if it must outlive the visit.
void for_each_live_edge_outcome(const TriggeringModel& model,
                                const std::function<void(const DirectedGraph&, double)>& fn);

// ---- explicit-model file format ---------------------------------------
//
//   v : {u1,u2} 0.3 {} 0.7
//
// one node per line, '#' comments allowed; unlisted nodes default to the
// always-empty triggering set.
std::vector<std::vector<TriggeringEntry>> parse_explicit_model(const std::string& text,
                                                               const DirectedGraph& g);

} // namespace infl
