#include "infl/profile.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace infl {

namespace {

using Rational = boost::multiprecision::cpp_rational;

void check_profile_n(int n) {
    if (n < 1 || n > kMaxProfileNodes)
        throw std::invalid_argument("profile enumeration supports 1 <= n <= " +
                                    std::to_string(kMaxProfileNodes) + ", got " +
                                    std::to_string(n));
}

// ordered tuples of >= 2 disjoint nonempty subsets of {0..n-1}; calls
// fn(levels) where levels[v] is the tuple position of v or kInfDist
template <class Fn>
void for_each_layering(int n, Fn&& fn) {
    std::vector<HopDist> levels(n, kInfDist);
    std::vector<int> pool(n);
    for (int v = 0; v < n; ++v) pool[v] = v;

    // choose a nonempty subset of pool as layer `depth`, recurse on the rest
    auto rec = [&](auto&& self, const std::vector<int>& rest, HopDist depth) -> void {
        const int k = static_cast<int>(rest.size());
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> next;
            for (int i = 0; i < k; ++i) {
                if (mask >> i & 1)
                    levels[rest[i]] = depth;
                else
                    next.push_back(rest[i]);
            }
            if (depth >= 1) fn(levels);
            if (!next.empty()) self(self, next, depth + 1);
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) levels[rest[i]] = kInfDist;
        }
    };
    rec(rec, pool, 0);
}

std::vector<std::vector<int>> layers_from_levels(const std::vector<HopDist>& levels) {
    HopDist top = 0;
    for (HopDist l : levels)
        if (!is_inf(l)) top = std::max(top, l);
    std::vector<std::vector<int>> layers(top + 1);
    for (int v = 0; v < static_cast<int>(levels.size()); ++v)
        if (!is_inf(levels[v])) layers[levels[v]].push_back(v);
    return layers;
}

int rank_rational(std::vector<std::vector<Rational>> a) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r) {
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        for (int r = rank + 1; r < rows; ++r) {
            if (a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[rank][col];
            for (int c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

int rank_double(std::vector<std::vector<double>> a, double tol) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = rank;
        for (int r = rank + 1; r < rows; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) <= tol) continue;
        std::swap(a[rank], a[piv]);
        for (int r = rank + 1; r < rows; ++r) {
            if (a[r][col] == 0.0) continue;
            const double f = a[r][col] / a[rank][col];
            for (int c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

// in-place LU solve with partial pivoting; throws on singularity
std::vector<double> lu_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-12)
            throw std::runtime_error("basis matrix numerically singular");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

std::vector<std::vector<double>> basis_matrix(const SequenceIndex& index,
                                              const std::vector<LayeredGraphSpec>& specs) {
    const int M = index.M();
    std::vector<std::vector<double>> a(M, std::vector<double>(M, 0.0));
    for (int c = 0; c < M; ++c) {
        const ProfileVector v = layered_instance_vector(specs[c], index);
        for (int r = 0; r < M; ++r) a[r][c] = v.values[r];
    }
    return a;
}

} // namespace

int SequenceIndex::index_of(const CascadingSequence& seq) const {
    if (static_cast<int>(seq.times.size()) != n)
        throw std::invalid_argument("sequence length does not match index");
    if (seq.stationary()) return -1;
    auto it = lookup.find(seq.times);
    if (it == lookup.end())
        throw std::logic_error("sequence not present in index (not monotone?)");
    return it->second;
}

SequenceIndex enumerate_sequences(int n) {
    check_profile_n(n);
    SequenceIndex idx;
    idx.n = n;
    for_each_layering(n, [&](const std::vector<HopDist>& levels) { idx.keys.push_back(levels); });
    std::sort(idx.keys.begin(), idx.keys.end());
    for (int i = 0; i < static_cast<int>(idx.keys.size()); ++i) idx.lookup[idx.keys[i]] = i;
    return idx;
}

std::vector<LayeredGraphSpec> enumerate_layered_instances(int n) {
    check_profile_n(n);
    std::vector<std::pair<std::vector<HopDist>, LayeredGraphSpec>> tagged;
    for_each_layering(n, [&](const std::vector<HopDist>& levels) {
        tagged.push_back({levels, LayeredGraphSpec{n, layers_from_levels(levels)}});
    });
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<LayeredGraphSpec> specs;
    specs.reserve(tagged.size());
    for (auto& t : tagged) specs.push_back(std::move(t.second));
    return specs;
}

ProfileVector layered_instance_vector(const LayeredGraphSpec& spec, const SequenceIndex& index) {
    if (spec.n != index.n)
        throw std::invalid_argument("layered spec and sequence index disagree on n");
    const int n = spec.n;
    ProfileVector out{n, std::vector<double>(index.M(), 0.0)};
    const DirectedGraph g = build_layered_graph(spec);
    std::vector<int> seed;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        seed.clear();
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) seed.push_back(v);
        const int i = index.index_of(bfs_instance_sequence(g, seed));
        if (i >= 0) out.values[i] = 1.0;
    }
    return out;
}

ProfileVector exact_profile(const TriggeringModel& model, const SequenceIndex& index) {
    if (model.n() != index.n)
        throw std::invalid_argument("model and sequence index disagree on n");
    const int n = model.n();
    ProfileVector out{n, std::vector<double>(index.M(), 0.0)};
    std::vector<int> seed;
    for_each_live_edge_outcome(model, [&](const DirectedGraph& live, double p) {
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            seed.clear();
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1) seed.push_back(v);
            const int i = index.index_of(bfs_instance_sequence(live, seed));
            if (i >= 0) out.values[i] += p;
        }
    });
    return out;
}

RankReport basis_rank_check(int n, bool allow_n5) {
    check_profile_n(n);
    if (n == kMaxProfileNodes && !allow_n5)
        throw std::invalid_argument("basis_rank_check: n=5 must be explicitly enabled");
    const SequenceIndex index = enumerate_sequences(n);
    const auto specs = enumerate_layered_instances(n);
    RankReport rep;
    rep.n = n;
    rep.M = index.M();
    rep.layered_count = static_cast<int>(specs.size());
    rep.exact = n <= 4;
    const auto a = basis_matrix(index, specs);
    if (rep.exact) {
        std::vector<std::vector<Rational>> q(a.size(), std::vector<Rational>(a.size()));
        for (std::size_t r = 0; r < a.size(); ++r)
            for (std::size_t c = 0; c < a.size(); ++c) q[r][c] = static_cast<int>(a[r][c]);
        rep.rank = rank_rational(std::move(q));
    } else {
        rep.rank = rank_double(a, 1e-9);
    }
    rep.full_rank = rep.rank == rep.M && rep.M == rep.layered_count;
    return rep;
}

BasisDecomposition decompose(const ProfileVector& profile) {
    check_profile_n(profile.n);
    const SequenceIndex index = enumerate_sequences(profile.n);
    if (static_cast<int>(profile.values.size()) != index.M())
        throw std::invalid_argument("profile length does not match M");
    const auto specs = enumerate_layered_instances(profile.n);
    const auto a = basis_matrix(index, specs);

    BasisDecomposition d;
    d.n = profile.n;
    d.lambda = index.M() == 0 ? std::vector<double>{} : lu_solve(a, profile.values);
    for (double l : d.lambda) d.lambda_sum += l;
    for (int r = 0; r < index.M(); ++r) {
        double s = 0.0;
        for (int c = 0; c < index.M(); ++c) s += a[r][c] * d.lambda[c];
        d.residual = std::max(d.residual, std::abs(s - profile.values[r]));
    }
    return d;
}

std::vector<double> reconstruct_centrality(const BasisDecomposition& decomp,
                                           const std::vector<std::vector<double>>& psi_basis,
                                           const std::vector<double>& psi_null) {
    if (psi_basis.size() != decomp.lambda.size())
        throw std::invalid_argument("reconstruct_centrality: basis value count mismatch");
    std::vector<double> out(psi_null.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (1.0 - decomp.lambda_sum) * psi_null[i];
    for (std::size_t b = 0; b < psi_basis.size(); ++b) {
        if (psi_basis[b].size() != psi_null.size())
            throw std::invalid_argument("reconstruct_centrality: value vector length mismatch");
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += decomp.lambda[b] * psi_basis[b][i];
    }
    return out;
}

} // namespace infl
