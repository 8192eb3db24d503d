#include "infl/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace infl {

namespace {

constexpr double kLtSumSlack = 1e-12;
constexpr double kProbSumTol = 1e-9;
constexpr int kExplicitInDegCap = 20;

std::vector<std::vector<double>> weights_from_map(const DirectedGraph& g,
                                                  const EdgeWeightMap& w) {
    std::vector<std::vector<double>> in_w(g.n());
    for (int v = 0; v < g.n(); ++v) {
        const auto& nbrs = g.in_neighbors(v);
        in_w[v].reserve(nbrs.size());
        for (int u : nbrs) {
            auto it = w.find(edge_key(u, v));
            if (it == w.end())
                throw std::invalid_argument("missing weight for edge " + std::to_string(u) +
                                            " -> " + std::to_string(v));
            if (!(it->second >= 0.0 && it->second <= 1.0))
                throw std::invalid_argument("edge weight outside [0,1]");
            in_w[v].push_back(it->second);
        }
    }
    return in_w;
}

std::vector<std::vector<double>> uniform_weights(const DirectedGraph& g, double w) {
    if (!(w >= 0.0 && w <= 1.0))
        throw std::invalid_argument("edge weight outside [0,1]");
    std::vector<std::vector<double>> in_w(g.n());
    for (int v = 0; v < g.n(); ++v)
        in_w[v].assign(g.in_neighbors(v).size(), w);
    return in_w;
}

void check_lt_sums(const DirectedGraph& g, const std::vector<std::vector<double>>& in_w) {
    for (int v = 0; v < g.n(); ++v) {
        double s = 0.0;
        for (double b : in_w[v]) s += b;
        if (s > 1.0 + kLtSumSlack)
            throw std::invalid_argument("LT weights into node " + std::to_string(v) +
                                        " sum to " + std::to_string(s) + " > 1");
    }
}

} // namespace

TriggeringModel TriggeringModel::make_ic(std::shared_ptr<const DirectedGraph> g,
                                         const EdgeWeightMap& p) {
    TriggeringModel m;
    m.kind_ = ModelKind::IC;
    m.in_w_ = weights_from_map(*g, p);
    m.graph_ = std::move(g);
    return m;
}

TriggeringModel TriggeringModel::make_ic_uniform(std::shared_ptr<const DirectedGraph> g,
                                                 double p) {
    TriggeringModel m;
    m.kind_ = ModelKind::IC;
    m.in_w_ = uniform_weights(*g, p);
    m.graph_ = std::move(g);
    return m;
}

TriggeringModel TriggeringModel::make_lt(std::shared_ptr<const DirectedGraph> g,
                                         const EdgeWeightMap& b) {
    TriggeringModel m;
    m.kind_ = ModelKind::LT;
    m.in_w_ = weights_from_map(*g, b);
    check_lt_sums(*g, m.in_w_);
    m.graph_ = std::move(g);
    return m;
}

TriggeringModel TriggeringModel::make_lt_uniform(std::shared_ptr<const DirectedGraph> g,
                                                 double b) {
    TriggeringModel m;
    m.kind_ = ModelKind::LT;
    m.in_w_ = uniform_weights(*g, b);
    check_lt_sums(*g, m.in_w_);
    m.graph_ = std::move(g);
    return m;
}

TriggeringModel TriggeringModel::make_explicit(std::shared_ptr<const DirectedGraph> g,
                                               std::vector<std::vector<TriggeringEntry>> dists) {
    dists.resize(g->n());
    for (int v = 0; v < g->n(); ++v) {
        auto& dist = dists[v];
        if (dist.empty()) {
            dist.push_back({{}, 1.0});
            continue;
        }
        if (g->in_neighbors(v).size() > kExplicitInDegCap)
            throw std::invalid_argument("explicit distribution at node " + std::to_string(v) +
                                        ": in-degree above cap " +
                                        std::to_string(kExplicitInDegCap));
        std::unordered_set<int> nbrs(g->in_neighbors(v).begin(), g->in_neighbors(v).end());
        double total = 0.0;
        for (auto& e : dist) {
            if (e.p < 0.0)
                throw std::invalid_argument("explicit distribution at node " +
                                            std::to_string(v) + ": negative probability");
            total += e.p;
            std::sort(e.subset.begin(), e.subset.end());
            if (std::adjacent_find(e.subset.begin(), e.subset.end()) != e.subset.end())
                throw std::invalid_argument("explicit distribution at node " +
                                            std::to_string(v) + ": repeated node in subset");
            for (int u : e.subset)
                if (!nbrs.count(u))
                    throw std::invalid_argument("explicit distribution at node " +
                                                std::to_string(v) + ": " + std::to_string(u) +
                                                " is not an in-neighbor");
        }
        if (std::abs(total - 1.0) > kProbSumTol)
            throw std::invalid_argument("explicit distribution at node " + std::to_string(v) +
                                        ": probabilities sum to " + std::to_string(total));
    }
    TriggeringModel m;
    m.kind_ = ModelKind::Explicit;
    m.dists_ = std::move(dists);
    m.graph_ = std::move(g);
    return m;
}

TriggeringModel TriggeringModel::relabel(const std::vector<int>& perm) const {
    const int n = graph_->n();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("relabel: permutation size mismatch");
    auto g2 = std::make_shared<DirectedGraph>(n);
    for (auto [u, v] : graph_->edges()) g2->add_edge(perm[u], perm[v]);

    if (kind_ == ModelKind::Explicit) {
        std::vector<std::vector<TriggeringEntry>> dists(n);
        for (int v = 0; v < n; ++v) {
            dists[perm[v]] = dists_[v];
            for (auto& e : dists[perm[v]])
                for (int& u : e.subset) u = perm[u];
        }
        return make_explicit(std::move(g2), std::move(dists));
    }

    EdgeWeightMap w;
    for (int v = 0; v < n; ++v) {
        const auto& nbrs = graph_->in_neighbors(v);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            w[edge_key(perm[nbrs[i]], perm[v])] = in_w_[v][i];
    }
    return kind_ == ModelKind::IC ? make_ic(std::move(g2), w) : make_lt(std::move(g2), w);
}

std::vector<int> sample_triggering_set(const TriggeringModel& model, int v, RngStream& rng) {
    const auto& nbrs = model.graph().in_neighbors(v);
    std::vector<int> t;
    switch (model.kind()) {
    case ModelKind::IC:
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            if (rng.next_unit() < model.in_weight(v, i)) t.push_back(nbrs[i]);
        break;
    case ModelKind::LT: {
        double u = rng.next_unit();
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            u -= model.in_weight(v, i);
            if (u < 0.0) {
                t.push_back(nbrs[i]);
                break;
            }
        }
        break;  // residual mass: empty set
    }
    case ModelKind::Explicit: {
        const auto& dist = model.explicit_dist(v);
        double u = rng.next_unit();
        std::size_t pick = dist.size() - 1;  // absorb rounding slack in the last atom
        for (std::size_t i = 0; i < dist.size(); ++i) {
            u -= dist[i].p;
            if (u < 0.0) {
                pick = i;
                break;
            }
        }
        t = dist[pick].subset;
        break;
    }
    }
    return t;
}

DirectedGraph sample_live_edge_graph(const TriggeringModel& model, RngStream& rng) {
    RngStream base = rng.split();
    DirectedGraph live(model.n());
    for (int v = 0; v < model.n(); ++v) {
        RngStream node_rng = base.fork(v);
        for (int u : sample_triggering_set(model, v, node_rng)) live.add_edge(u, v);
    }
    return live;
}

std::vector<NodeOptions> enumerate_triggering_options(const TriggeringModel& model) {
    const DirectedGraph& g = model.graph();
    std::vector<NodeOptions> opts(g.n());
    std::uint64_t joint = 1;
    for (int v = 0; v < g.n(); ++v) {
        const auto& nbrs = g.in_neighbors(v);
        auto& o = opts[v];
        switch (model.kind()) {
        case ModelKind::IC: {
            std::vector<int> certain;
            std::vector<std::pair<int, double>> uncertain;
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                const double p = model.in_weight(v, i);
                if (p >= 1.0)
                    certain.push_back(nbrs[i]);
                else if (p > 0.0)
                    uncertain.emplace_back(nbrs[i], p);
            }
            if (uncertain.size() >= 17)
                throw std::invalid_argument("joint triggering support too large to enumerate");
            const std::size_t k = uncertain.size();
            for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
                std::vector<int> sub = certain;
                double p = 1.0;
                for (std::size_t i = 0; i < k; ++i) {
                    if (mask >> i & 1) {
                        sub.push_back(uncertain[i].first);
                        p *= uncertain[i].second;
                    } else {
                        p *= 1.0 - uncertain[i].second;
                    }
                }
                o.subsets.push_back(std::move(sub));
                o.probs.push_back(p);
            }
            break;
        }
        case ModelKind::LT: {
            double residual = 1.0;
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                const double b = model.in_weight(v, i);
                residual -= b;
                if (b > 0.0) {
                    o.subsets.push_back({nbrs[i]});
                    o.probs.push_back(b);
                }
            }
            if (residual > 1e-15 || o.subsets.empty()) {
                o.subsets.push_back({});
                o.probs.push_back(std::max(residual, 0.0));
            }
            break;
        }
        case ModelKind::Explicit:
            for (const auto& e : model.explicit_dist(v)) {
                if (e.p <= 0.0) continue;
                o.subsets.push_back(e.subset);
                o.probs.push_back(e.p);
            }
            if (o.subsets.empty()) {
                o.subsets.push_back({});
                o.probs.push_back(1.0);
            }
            break;
        }
        joint *= static_cast<std::uint64_t>(o.subsets.size());
        if (joint > kMaxJointSupport)
            throw std::invalid_argument("joint triggering support too large to enumerate");
    }
    return opts;
}

void for_each_live_edge_outcome(const TriggeringModel& model,
                                const std::function<void(const DirectedGraph&, double)>& fn) {
    const auto opts = enumerate_triggering_options(model);
    const int n = model.n();
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
        DirectedGraph live(n);
        double p = 1.0;
        for (int v = 0; v < n; ++v) {
            p *= opts[v].probs[pick[v]];
            for (int u : opts[v].subsets[pick[v]]) live.add_edge(u, v);
        }
        if (p > 0.0) fn(live, p);
        int v = 0;
        while (v < n && ++pick[v] == opts[v].subsets.size()) pick[v++] = 0;
        if (v == n) break;
    }
}

std::vector<std::vector<TriggeringEntry>> parse_explicit_model(const std::string& text,
                                                               const DirectedGraph& g) {
    std::vector<std::vector<TriggeringEntry>> dists(g.n());
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        int v;
        try {
            std::size_t pos = 0;
            v = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad node id '" + tok + "'");
        }
        if (v < 0 || v >= g.n())
            throw ParseError("line " + std::to_string(lineno) + ": node id out of range");
        if (!(ls >> tok) || tok != ":")
            throw ParseError("line " + std::to_string(lineno) + ": expected ':' after node id");
        if (!dists[v].empty())
            throw ParseError("line " + std::to_string(lineno) + ": node " + std::to_string(v) +
                             " listed twice");
        std::vector<TriggeringEntry> dist;
        while (ls >> tok) {
            if (tok.front() != '{' || tok.back() != '}')
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected {subset}, got '" + tok + "'");
            TriggeringEntry e;
            const std::string inner = tok.substr(1, tok.size() - 2);
            std::istringstream ss(inner);
            for (std::string id; std::getline(ss, id, ',');) {
                try {
                    std::size_t pos = 0;
                    e.subset.push_back(std::stoi(id, &pos));
                    if (pos != id.size()) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    throw ParseError("line " + std::to_string(lineno) + ": bad node id '" +
                                     id + "' in subset");
                }
            }
            if (!(ls >> e.p))
                throw ParseError("line " + std::to_string(lineno) +
                                 ": missing probability after subset");
            dist.push_back(std::move(e));
        }
        if (dist.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty distribution");
        dists[v] = std::move(dist);
    }
    return dists;
}

} // namespace infl
