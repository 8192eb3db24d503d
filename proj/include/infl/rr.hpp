#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infl/centrality.hpp"
#include "infl/model.hpp"
#include "infl/rng.hpp"

namespace infl {

// reverse-reachable set: the nodes that reach a (uniformly drawn) root in
// one sampled live-edge graph, with their reverse-BFS distances
struct RRSet {
    int root = 0;
    std::vector<int> nodes;     // BFS order from the root
    std::vector<HopDist> dist;  // aligned with nodes, nondecreasing
    std::vector<std::uint32_t> level_sizes;  // count per distance 0..delta
    int delta = 0;

    std::size_t size() const { return nodes.size(); }
};

// one RR set from its own stream; the root is drawn uniformly unless given,
// and each dequeued node's triggering set comes from a per-node substream
RRSet sample_rr_set(const TriggeringModel& model, RngStream rng,
                    std::optional<int> root = std::nullopt);

// additive kernel: member u contributes g(level(u)); n * mean over RR sets
// is unbiased for psi[f]_u
void rr_accumulate_individual(const RRSet& set, const NodeWiseFunction& g,
                              std::vector<double>& acc);

// Shapley kernel of the min-distance game on one RR set; the value only
// depends on a member's level, so phi is returned per level 0..delta
std::vector<double> rr_shapley_levels(const RRSet& set, const NodeWiseFunction& g);
void rr_accumulate_shapley(const RRSet& set, const NodeWiseFunction& g,
                           std::vector<double>& acc);

// group kernel: g of the minimum level over members present in the set
double rr_group_contribution(const RRSet& set, const NodeWiseFunction& g,
                             const std::vector<char>& member);
double rr_group_contribution(const RRSet& set, const NodeWiseFunction& g,
                             const std::vector<int>& group);

// debug dump: "root | u:dist,u:dist,..." over members in BFS order
std::string rr_set_to_line(const RRSet& set, const std::vector<std::string>& labels = {});

} // namespace infl
