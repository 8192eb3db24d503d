#pragma once

#include <string>
#include <vector>

#include "infl/model.hpp"

namespace infl {

// A monotone activation trace stored as per-node activation times;
// S_t = {u : times[u] <= t}, kInfDist = never activated. Runs for at
// most n-1 steps, after which any cascade has stabilized.
struct CascadingSequence {
    std::vector<HopDist> times;

    bool operator==(const CascadingSequence&) const = default;

    // no activation after step 0
    bool stationary() const {
        for (HopDist t : times)
            if (t > 0 && !is_inf(t)) return false;
        return true;
    }

    // expanded S_0..S_{n-1} view (handy in tests and traces)
    std::vector<std::vector<int>> sets() const;
};

// Forward diffusion from seed_set. Triggering sets are sampled lazily for
// touched nodes only, each from fork(v) of one split of rng, which makes
// the result identical to BFS in the live-edge graph drawn from an
// equal-state stream.
CascadingSequence simulate_cascade(const TriggeringModel& model,
                                   const std::vector<int>& seed_set, RngStream& rng);

// The deterministic sequence of the graph itself: activation time equals
// BFS distance from the seed set.
CascadingSequence bfs_instance_sequence(const DirectedGraph& g,
                                        const std::vector<int>& seed_set);

struct ValidationResult {
    bool ok = true;
    std::string diagnostic;  // first violated node/step when !ok
    explicit operator bool() const { return ok; }
};

// Monotonicity (nonempty S_0, no gaps before stabilization) and
// G-continuity (every node activated at t has an in-neighbor activated
// at exactly t-1).
ValidationResult validate_sequence(const DirectedGraph& g, const CascadingSequence& seq);

} // namespace infl
