#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace infl {

// Hop distances live in {0,...,n-1} plus an unreachable sentinel. The
// sentinel is never an operand of arithmetic: BFS only increments finite
// parent distances and every distance function branches on it first.
using HopDist = std::uint32_t;
inline constexpr HopDist kInfDist = std::numeric_limits<HopDist>::max();
inline constexpr bool is_inf(HopDist d) { return d == kInfDist; }

using DistanceVector = std::vector<HopDist>;

class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(int n) : n_(n), out_(n), in_(n) {}

    int n() const { return n_; }
    std::size_t m() const { return m_; }

    const std::vector<int>& out_neighbors(int v) const { return out_[v]; }
    const std::vector<int>& in_neighbors(int v) const { return in_[v]; }

    // rejects self-loops and duplicates (weights would be ambiguous)
    void add_edge(int u, int v) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw std::invalid_argument("add_edge: node id out of range");
        if (u == v)
            throw std::invalid_argument("add_edge: self-loop");
        if (has_edge(u, v))
            throw std::invalid_argument("add_edge: duplicate edge");
        out_[u].push_back(v);
        in_[v].push_back(u);
        ++m_;
    }

    bool has_edge(int u, int v) const {
        const auto& smaller = out_[u].size() <= in_[v].size() ? out_[u] : in_[v];
        const int needle = out_[u].size() <= in_[v].size() ? v : u;
        for (int w : smaller)
            if (w == needle) return true;
        return false;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> es;
        es.reserve(m_);
        for (int u = 0; u < n_; ++u)
            for (int v : out_[u]) es.emplace_back(u, v);
        return es;
    }

private:
    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::vector<int>> out_, in_;
};

// ---- edge-list ingestion ----------------------------------------------

enum class EdgeListFormat { Unweighted, IcWeighted, LtWeighted };

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// keyed by (u << 32) | v
using EdgeWeightMap = std::unordered_map<std::uint64_t, double>;

inline std::uint64_t edge_key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

struct ParsedGraph {
    DirectedGraph graph;
    std::optional<EdgeWeightMap> weights;  // present for weighted formats
    std::vector<std::string> labels;       // original ids; empty unless remapped
};

// Line format: "u v" or "u v w", whitespace separated, '#' starts a comment.
// With remap=false, n = 1 + max id; with remap=true ids are compacted in
// first-appearance order and `labels` keeps the originals.
ParsedGraph parse_edge_list(const std::string& text, EdgeListFormat format,
                            bool remap = false);

// ---- BFS --------------------------------------------------------------

// min over sources of directed hop distance; kInfDist where unreachable
DistanceVector bfs_distances(const DirectedGraph& g, const std::vector<int>& sources);

// "node,distance" lines with literal inf for unreachable
std::string distances_to_csv(const DistanceVector& d);

// ---- layered graphs ---------------------------------------------------

struct LayeredGraphSpec {
    int n = 0;
    std::vector<std::vector<int>> layers;  // R_0,...,R_t; t=0 -> null instance
};

// complete bipartite edges between consecutive layers, everything else isolated
DirectedGraph build_layered_graph(const LayeredGraphSpec& spec);

} // namespace infl
