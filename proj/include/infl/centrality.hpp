#pragma once

#include <string>
#include <vector>

#include "infl/profile.hpp"

namespace infl {

// ---- distance functions -----------------------------------------------

enum class GKind { Deg, Har, Rch, Soi };

// node-wise g with g(inf) = 0; additive f(d) = sum_u g(d_u)
struct NodeWiseFunction {
    GKind kind = GKind::Rch;
    int delta = 1;  // soi radius

    double g(HopDist d) const {
        if (is_inf(d)) return 0.0;
        switch (kind) {
        case GKind::Deg: return d == 1 ? 1.0 : 0.0;
        case GKind::Har: return d == 0 ? 0.0 : 1.0 / static_cast<double>(d);
        case GKind::Rch: return 1.0;
        case GKind::Soi: return d <= static_cast<HopDist>(delta) ? 1.0 : 0.0;
        }
        return 0.0;
    }

    std::string name() const;

    static NodeWiseFunction deg() { return {GKind::Deg, 1}; }
    static NodeWiseFunction har() { return {GKind::Har, 1}; }
    static NodeWiseFunction rch() { return {GKind::Rch, 1}; }
    static NodeWiseFunction soi(int delta);
};

// additive node-wise functions plus (non-additive) closeness; closeness is
// exact-oracle-only and rejected by the RR estimator
struct DistanceFunction {
    bool additive = true;
    NodeWiseFunction gfn;

    double eval(const DistanceVector& d) const;
    std::string name() const;

    static DistanceFunction from(NodeWiseFunction g) { return {true, g}; }
    static DistanceFunction closeness() { return {false, {}}; }
};

// ---- reports ----------------------------------------------------------

enum class Mode { Individual, Group, Shapley };

std::string mode_name(Mode mode);

struct CentralityReport {
    Mode mode = Mode::Individual;
    std::string function;
    bool exact = true;
    std::vector<double> values;            // per node (individual / shapley)
    std::vector<std::vector<int>> groups;  // group mode queries
    std::vector<double> group_values;
    std::vector<double> std_errors;        // Monte Carlo Shapley fallback only
    double eps = 0.0, ell = 0.0;           // estimation parameters
    int k = 0;
};

std::string report_to_csv(const CentralityReport& rep,
                          const std::vector<std::string>& labels = {});
std::string report_to_json(const CentralityReport& rep,
                           const std::vector<std::string>& labels = {});

// ---- exact centralities -----------------------------------------------

inline constexpr int kMaxGraphShapley = 9;
inline constexpr int kMaxInfluenceShapley = 8;

struct ShapleyOptions {
    std::uint64_t mc_permutations = 0;  // enables the sampling fallback above the guards
    std::uint64_t seed = 0;
};

// graph-theoretical centralities: f of the BFS distance vector of a node /
// group, or the exact Shapley value of S -> f(d(S)) via the full
// permutation average (coalition values memoized)
CentralityReport graph_centrality(const DirectedGraph& g, const DistanceFunction& f, Mode mode,
                                  const std::vector<std::vector<int>>& groups = {},
                                  const ShapleyOptions& opts = {});

// influence-based centralities by exhaustive live-edge enumeration:
// psi[f]_v = E[f(cascading distances from {v})], group form seeds the whole
// set, Shapley form is the Shapley value of the group function
CentralityReport exact_influence_centrality(const TriggeringModel& model,
                                            const DistanceFunction& f, Mode mode,
                                            const std::vector<std::vector<int>>& groups = {},
                                            const ShapleyOptions& opts = {});

// individual centralities read off a profile vector (seed {v} entries plus
// the implicit stationary residual); the Bayesian-mixture code path
std::vector<double> profile_centrality(const ProfileVector& profile, const SequenceIndex& index,
                                       const DistanceFunction& f);

// psi commutes with relabeling nodes by perm
bool check_anonymity(const TriggeringModel& model, const DistanceFunction& f,
                     const std::vector<int>& perm, double tol = 1e-9);

// psi of the alpha-mixture profile equals the mixture of the psi's
bool check_bayesian(const TriggeringModel& m1, const TriggeringModel& m2, double alpha,
                    const DistanceFunction& f, double tol = 1e-9);

} // namespace infl
