#pragma once

#include <map>
#include <vector>

#include "infl/cascade.hpp"

namespace infl {

// All monotone non-stationary cascading sequences over n nodes, keyed by
// their activation-time arrays in lexicographic order (unreached sorts
// last). Stationary sequences carry the implicit residual probability
// mass and are not indexed.
struct SequenceIndex {
    int n = 0;
    std::vector<std::vector<HopDist>> keys;     // sorted, size M
    std::map<std::vector<HopDist>, int> lookup;

    int M() const { return static_cast<int>(keys.size()); }

    // -1 for stationary sequences; throws for malformed keys
    int index_of(const CascadingSequence& seq) const;
};

inline constexpr int kMaxProfileNodes = 5;  // M(5) = 1050 and it explodes from there

SequenceIndex enumerate_sequences(int n);

// every layered spec with t >= 1 (disjoint nonempty layers), in the order
// of the sequence each spec traces when seeded with its own first layer;
// there are exactly M of them
std::vector<LayeredGraphSpec> enumerate_layered_instances(int n);

// probability of each indexed sequence for the seed set it starts with
struct ProfileVector {
    int n = 0;
    std::vector<double> values;  // length M, entries in [0,1]
};

// 1 at the BFS sequence each nonempty seed produces in the layered graph
// (0-layer specs give the all-zero vector)
ProfileVector layered_instance_vector(const LayeredGraphSpec& spec, const SequenceIndex& index);

// sums outcome probabilities per (seed, sequence); per-seed masses plus the
// implicit stationary residual total 1
ProfileVector exact_profile(const TriggeringModel& model, const SequenceIndex& index);

struct RankReport {
    int n = 0;
    int M = 0;
    int layered_count = 0;
    int rank = 0;
    bool full_rank = false;
    bool exact = false;  // rational elimination (n <= 4) vs pivoted doubles
};

// rank of the M x M matrix of layered-instance vectors; n=5 is behind a
// flag because the 1050^2 system needs the floating-point path
RankReport basis_rank_check(int n, bool allow_n5 = false);

struct BasisDecomposition {
    int n = 0;
    std::vector<double> lambda;  // aligned with enumerate_layered_instances(n)
    double residual = 0.0;       // max-norm reconstruction error
    double lambda_sum = 0.0;
};

// solves the M x M system; coefficients may be negative
BasisDecomposition decompose(const ProfileVector& profile);

// affine reconstruction: sum_i lambda_i psi(B_i) + (1 - sum lambda) psi(null)
std::vector<double> reconstruct_centrality(const BasisDecomposition& decomp,
                                           const std::vector<std::vector<double>>& psi_basis,
                                           const std::vector<double>& psi_null);

} // namespace infl
