#include "infl/graph.hpp"

#include <deque>
#include <sstream>
#include <unordered_set>

namespace infl {

namespace {

struct RawEdge {
    long long u, v;  // ids as written, for error messages
    double w;
    bool has_w;
    int line;
    int du = 0, dv = 0;  // dense ids actually inserted
};

long long parse_id(const std::string& tok, int line) {
    std::size_t pos = 0;
    long long id;
    try {
        id = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": bad node id '" + tok + "'");
    }
    if (pos != tok.size() || id < 0)
        throw ParseError("line " + std::to_string(line) + ": bad node id '" + tok + "'");
    return id;
}

} // namespace

ParsedGraph parse_edge_list(const std::string& text, EdgeListFormat format, bool remap) {
    const bool weighted = format != EdgeListFormat::Unweighted;
    std::vector<RawEdge> raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        const std::size_t want = weighted ? 3 : 2;
        if (toks.size() != want)
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(want) + " fields, got " +
                             std::to_string(toks.size()));
        RawEdge e{parse_id(toks[0], lineno), parse_id(toks[1], lineno), 0.0, weighted, lineno};
        if (weighted) {
            try {
                std::size_t pos = 0;
                e.w = std::stod(toks[2], &pos);
                if (pos != toks[2].size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": bad weight '" + toks[2] + "'");
            }
            if (!(e.w >= 0.0 && e.w <= 1.0))
                throw ParseError("line " + std::to_string(lineno) + ": weight " + toks[2] +
                                 " outside [0,1]");
        }
        raw.push_back(e);
    }

    ParsedGraph out;
    std::unordered_map<long long, int> dense;
    auto to_dense = [&](long long id) {
        auto [it, fresh] = dense.emplace(id, static_cast<int>(dense.size()));
        if (fresh) out.labels.push_back(std::to_string(id));
        return it->second;
    };

    int n = 0;
    if (remap) {
        for (auto& e : raw) {
            e.du = to_dense(e.u);
            e.dv = to_dense(e.v);
        }
        n = static_cast<int>(dense.size());
    } else {
        long long mx = -1;
        for (const auto& e : raw) mx = std::max({mx, e.u, e.v});
        if (mx >= (1LL << 31) - 1)
            throw ParseError("node id " + std::to_string(mx) +
                             " too large; use remapping for sparse id spaces");
        n = static_cast<int>(mx + 1);
        for (auto& e : raw) {
            e.du = static_cast<int>(e.u);
            e.dv = static_cast<int>(e.v);
        }
    }

    out.graph = DirectedGraph(n);
    if (weighted) out.weights.emplace();
    for (const auto& e : raw) {
        const int u = e.du, v = e.dv;
        if (u == v)
            throw ParseError("line " + std::to_string(e.line) + ": self-loop at node " +
                             std::to_string(e.u));
        if (out.graph.has_edge(u, v))
            throw ParseError("line " + std::to_string(e.line) + ": duplicate edge " +
                             std::to_string(e.u) + " -> " + std::to_string(e.v));
        out.graph.add_edge(u, v);
        if (weighted) (*out.weights)[edge_key(u, v)] = e.w;
    }
    return out;
}

DistanceVector bfs_distances(const DirectedGraph& g, const std::vector<int>& sources) {
    if (sources.empty())
        throw std::invalid_argument("bfs_distances: empty source set");
    DistanceVector d(g.n(), kInfDist);
    std::deque<int> q;
    for (int s : sources) {
        if (s < 0 || s >= g.n())
            throw std::invalid_argument("bfs_distances: source out of range");
        if (d[s] != 0) {
            d[s] = 0;
            q.push_back(s);
        }
    }
    while (!q.empty()) {
        const int u = q.front();
        q.pop_front();
        for (int v : g.out_neighbors(u)) {
            if (is_inf(d[v])) {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
        }
    }
    return d;
}

std::string distances_to_csv(const DistanceVector& d) {
    std::string s = "node,distance\n";
    for (std::size_t v = 0; v < d.size(); ++v) {
        s += std::to_string(v);
        s += ',';
        s += is_inf(d[v]) ? "inf" : std::to_string(d[v]);
        s += '\n';
    }
    return s;
}

DirectedGraph build_layered_graph(const LayeredGraphSpec& spec) {
    std::unordered_set<int> seen;
    for (const auto& layer : spec.layers) {
        if (layer.empty())
            throw std::invalid_argument("build_layered_graph: empty layer");
        for (int v : layer) {
            if (v < 0 || v >= spec.n)
                throw std::invalid_argument("build_layered_graph: node id out of range");
            if (!seen.insert(v).second)
                throw std::invalid_argument("build_layered_graph: layers not disjoint");
        }
    }
    DirectedGraph g(spec.n);
    for (std::size_t i = 1; i < spec.layers.size(); ++i)
        for (int u : spec.layers[i - 1])
            for (int v : spec.layers[i])
                g.add_edge(u, v);
    return g;
}

} // namespace infl
