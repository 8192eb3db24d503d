#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include <json.hpp>

#include "infl/centrality.hpp"

using namespace infl;

namespace {

DirectedGraph example_graph() {
    return build_layered_graph({10, {{0, 1}, {2, 3, 4}, {5, 6}, {7, 8, 9}}});
}

std::shared_ptr<const DirectedGraph> shared(DirectedGraph g) {
    return std::make_shared<const DirectedGraph>(std::move(g));
}

std::shared_ptr<const DirectedGraph> single_edge() {
    DirectedGraph g(2);
    g.add_edge(0, 1);
    return shared(std::move(g));
}

const DistanceFunction kDeg = DistanceFunction::from(NodeWiseFunction::deg());
const DistanceFunction kHar = DistanceFunction::from(NodeWiseFunction::har());
const DistanceFunction kRch = DistanceFunction::from(NodeWiseFunction::rch());
const DistanceFunction kCls = DistanceFunction::closeness();

} // namespace

TEST_CASE("node-wise g values") {
    NodeWiseFunction deg = NodeWiseFunction::deg();
    CHECK(deg.g(0) == 0.0);
    CHECK(deg.g(1) == 1.0);
    CHECK(deg.g(2) == 0.0);
    CHECK(deg.g(kInfDist) == 0.0);

    NodeWiseFunction har = NodeWiseFunction::har();
    CHECK(har.g(0) == 0.0);
    CHECK(har.g(1) == 1.0);
    CHECK(har.g(2) == 0.5);
    CHECK(har.g(3) == doctest::Approx(1.0 / 3));
    CHECK(har.g(kInfDist) == 0.0);

    NodeWiseFunction rch = NodeWiseFunction::rch();
    CHECK(rch.g(0) == 1.0);
    CHECK(rch.g(7) == 1.0);
    CHECK(rch.g(kInfDist) == 0.0);

    NodeWiseFunction soi = NodeWiseFunction::soi(2);
    CHECK(soi.g(0) == 1.0);  // the sphere includes the seed itself
    CHECK(soi.g(2) == 1.0);
    CHECK(soi.g(3) == 0.0);
    CHECK(soi.g(kInfDist) == 0.0);
    CHECK_THROWS_AS(NodeWiseFunction::soi(-1), std::invalid_argument);

    CHECK(NodeWiseFunction::deg().name() == "deg");
    CHECK(NodeWiseFunction::soi(2).name() == "soi(2)");
    CHECK(kCls.name() == "cls");
}

TEST_CASE("closeness evaluation") {
    CHECK(kCls.eval({0, 1, 2}) == doctest::Approx(1.0 / 3));
    CHECK(kCls.eval({0, kInfDist, 2}) == 0.0);
    CHECK(kCls.eval({0}) == 0.0);  // lone node: zero distance sum
}

TEST_CASE("individual centralities on the example graph") {
    DirectedGraph g = example_graph();
    CHECK(graph_centrality(g, kDeg, Mode::Individual).values[0] == 3.0);
    CHECK(graph_centrality(g, kHar, Mode::Individual).values[0] == doctest::Approx(5.0));
    CHECK(graph_centrality(g, kRch, Mode::Individual).values[0] == 9.0);
    CHECK(graph_centrality(g, kCls, Mode::Individual).values[0] == 0.0);  // node 1 unreachable

    DistanceFunction soi1 = DistanceFunction::from(NodeWiseFunction::soi(1));
    DistanceFunction soi3 = DistanceFunction::from(NodeWiseFunction::soi(3));
    auto deg = graph_centrality(g, kDeg, Mode::Individual).values;
    auto s1 = graph_centrality(g, soi1, Mode::Individual).values;
    auto s3 = graph_centrality(g, soi3, Mode::Individual).values;
    auto rch = graph_centrality(g, kRch, Mode::Individual).values;
    for (int v = 0; v < 10; ++v) {
        CHECK(s1[v] == deg[v] + 1.0);  // radius 1 = out-degree plus self
        CHECK(s3[v] == rch[v]);        // radius >= diameter = reachability
    }
}

TEST_CASE("soi interpolates between deg and rch on stochastic instances") {
    RngStream rng(321, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(4));
        DirectedGraph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng.next_unit() < 0.4) g.add_edge(u, v);
        TriggeringModel m = TriggeringModel::make_ic_uniform(shared(std::move(g)),
                                                            0.1 + 0.8 * rng.next_unit());
        DistanceFunction soi1 = DistanceFunction::from(NodeWiseFunction::soi(1));
        DistanceFunction soin = DistanceFunction::from(NodeWiseFunction::soi(n - 1));
        auto deg = exact_influence_centrality(m, kDeg, Mode::Individual).values;
        auto rch = exact_influence_centrality(m, kRch, Mode::Individual).values;
        auto s1 = exact_influence_centrality(m, soi1, Mode::Individual).values;
        auto sn = exact_influence_centrality(m, soin, Mode::Individual).values;
        for (int v = 0; v < n; ++v) {
            CHECK(s1[v] == doctest::Approx(deg[v] + 1.0).epsilon(1e-12));
            CHECK(sn[v] == doctest::Approx(rch[v]).epsilon(1e-12));
        }
    }
}

TEST_CASE("group reachability is monotone in the group") {
    RngStream rng(654, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(4));
        DirectedGraph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng.next_unit() < 0.4) g.add_edge(u, v);
        TriggeringModel m = TriggeringModel::make_ic_uniform(shared(std::move(g)),
                                                            0.1 + 0.8 * rng.next_unit());
        // a random chain of nested groups S_1 ⊂ S_2 ⊂ ... built from a shuffle
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        for (int v = n - 1; v > 0; --v)
            std::swap(order[v], order[rng.next_below(static_cast<std::uint64_t>(v + 1))]);
        std::vector<std::vector<int>> groups;
        for (int len = 1; len <= n; ++len)
            groups.emplace_back(order.begin(), order.begin() + len);
        auto vals = exact_influence_centrality(m, kRch, Mode::Group, groups).group_values;
        for (int i = 1; i < n; ++i) CHECK(vals[i - 1] <= vals[i] + 1e-12);
    }
}

TEST_CASE("closeness on a chain") {
    DirectedGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    auto cls = graph_centrality(g, kCls, Mode::Individual).values;
    CHECK(cls[0] == doctest::Approx(1.0 / 3));
    CHECK(cls[1] == 0.0);
    CHECK(cls[2] == 0.0);
}

TEST_CASE("group centralities use joint distances") {
    DirectedGraph g = example_graph();
    auto rep = graph_centrality(g, kRch, Mode::Group, {{0, 1}, {9}, {0}});
    CHECK(rep.group_values[0] == 10.0);  // both sources cover everything
    CHECK(rep.group_values[1] == 1.0);
    CHECK(rep.group_values[2] == 9.0);
    // singleton groups agree with individual values
    auto ind = graph_centrality(g, kHar, Mode::Individual).values;
    auto grp = graph_centrality(g, kHar, Mode::Group, {{3}, {7}});
    CHECK(grp.group_values[0] == doctest::Approx(ind[3]));
    CHECK(grp.group_values[1] == doctest::Approx(ind[7]));
}

TEST_CASE("group validation") {
    DirectedGraph g(3);
    CHECK_THROWS_AS(graph_centrality(g, kRch, Mode::Group, {}), std::invalid_argument);
    CHECK_THROWS_AS(graph_centrality(g, kRch, Mode::Group, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(graph_centrality(g, kRch, Mode::Group, {{3}}), std::invalid_argument);
    CHECK_THROWS_AS(graph_centrality(g, kRch, Mode::Group, {{1, 1}}), std::invalid_argument);
}

TEST_CASE("graph Shapley efficiency and symmetry") {
    DirectedGraph g = build_layered_graph({4, {{0, 1}, {2, 3}}});
    auto rch = graph_centrality(g, kRch, Mode::Shapley).values;
    double total = 0.0;
    for (double x : rch) total += x;
    CHECK(total == doctest::Approx(4.0).epsilon(1e-12));  // f(d(V)) = n for rch
    CHECK(rch[0] == doctest::Approx(rch[1]));
    CHECK(rch[2] == doctest::Approx(rch[3]));
    CHECK(rch[0] > rch[2]);  // sources also cover the sinks

    auto har = graph_centrality(g, kHar, Mode::Shapley).values;
    total = 0.0;
    for (double x : har) total += x;
    CHECK(total == doctest::Approx(0.0).epsilon(1e-12));  // f of the all-zero vector
}

TEST_CASE("Shapley on an edgeless graph gives every node its own unit") {
    auto rep = graph_centrality(DirectedGraph(5), kRch, Mode::Shapley);
    for (double x : rep.values) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("graph Shapley guard and Monte Carlo fallback") {
    DirectedGraph star(10);
    for (int v = 1; v < 10; ++v) star.add_edge(0, v);
    CHECK_THROWS_AS(graph_centrality(star, kRch, Mode::Shapley), std::invalid_argument);

    ShapleyOptions opts;
    opts.mc_permutations = 4000;
    opts.seed = 5;
    auto rep = graph_centrality(star, kRch, Mode::Shapley, {}, opts);
    CHECK_FALSE(rep.exact);
    REQUIRE(rep.std_errors.size() == 10);
    // hub: phi = 10 - 9/2; leaves: 1/2 (covered iff the hub comes later)
    CHECK(std::abs(rep.values[0] - 5.5) <= 5 * rep.std_errors[0] + 1e-9);
    for (int v = 1; v < 10; ++v)
        CHECK(std::abs(rep.values[v] - 0.5) <= 5 * rep.std_errors[v] + 1e-9);

    // an edgeless game has constant marginals, so sampling is exact
    auto flat = graph_centrality(DirectedGraph(10), kRch, Mode::Shapley, {}, opts);
    for (int v = 0; v < 10; ++v) {
        CHECK(flat.values[v] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(flat.std_errors[v] == 0.0);
    }
}

TEST_CASE("influence centralities collapse to graph centralities when p=1") {
    auto g = shared(example_graph());
    TriggeringModel m = TriggeringModel::make_ic_uniform(g, 1.0);
    for (const DistanceFunction& f : {kDeg, kHar, kRch, kCls}) {
        auto det = graph_centrality(*g, f, Mode::Individual).values;
        auto inf = exact_influence_centrality(m, f, Mode::Individual).values;
        REQUIRE(det.size() == inf.size());
        for (std::size_t v = 0; v < det.size(); ++v)
            CHECK(inf[v] == doctest::Approx(det[v]).epsilon(1e-12));
    }
    auto det = graph_centrality(*g, kHar, Mode::Group, {{0, 1}, {5}}).group_values;
    auto inf = exact_influence_centrality(m, kHar, Mode::Group, {{0, 1}, {5}}).group_values;
    CHECK(inf[0] == doctest::Approx(det[0]).epsilon(1e-12));
    CHECK(inf[1] == doctest::Approx(det[1]).epsilon(1e-12));
}

TEST_CASE("influence centralities of a single half-live edge") {
    TriggeringModel m = TriggeringModel::make_ic_uniform(single_edge(), 0.5);
    auto rch = exact_influence_centrality(m, kRch, Mode::Individual).values;
    CHECK(rch[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(rch[1] == doctest::Approx(1.0).epsilon(1e-12));
    auto har = exact_influence_centrality(m, kHar, Mode::Individual).values;
    CHECK(har[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(har[1] == 0.0);
    auto grp = exact_influence_centrality(m, kRch, Mode::Group, {{0, 1}, {1}});
    CHECK(grp.group_values[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(grp.group_values[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("influence Shapley values on a single half-live edge") {
    TriggeringModel m = TriggeringModel::make_ic_uniform(single_edge(), 0.5);
    auto phi = exact_influence_centrality(m, kRch, Mode::Shapley).values;
    // val({0}) = 1.5, val({1}) = 1, val({0,1}) = 2
    CHECK(phi[0] == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(phi[1] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(phi[0] + phi[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("influence Shapley guard and Monte Carlo fallback") {
    DirectedGraph star(9);
    for (int v = 1; v < 9; ++v) star.add_edge(0, v);
    TriggeringModel m = TriggeringModel::make_ic_uniform(shared(std::move(star)), 1.0);
    CHECK_THROWS_AS(exact_influence_centrality(m, kRch, Mode::Shapley), std::invalid_argument);

    ShapleyOptions opts;
    opts.mc_permutations = 3000;
    opts.seed = 11;
    auto rep = exact_influence_centrality(m, kRch, Mode::Shapley, {}, opts);
    CHECK_FALSE(rep.exact);
    CHECK(std::abs(rep.values[0] - 5.0) <= 5 * rep.std_errors[0] + 1e-9);
    for (int v = 1; v < 9; ++v)
        CHECK(std::abs(rep.values[v] - 0.5) <= 5 * rep.std_errors[v] + 1e-9);
}

TEST_CASE("profile centralities match outcome enumeration") {
    DirectedGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    auto gp = shared(std::move(g));
    std::vector<TriggeringModel> models;
    models.push_back(TriggeringModel::make_ic_uniform(gp, 0.6));
    models.push_back(TriggeringModel::make_lt_uniform(gp, 0.45));

    SequenceIndex idx = enumerate_sequences(3);
    for (const auto& m : models) {
        ProfileVector prof = exact_profile(m, idx);
        for (const DistanceFunction& f : {kDeg, kHar, kRch, kCls}) {
            auto via_profile = profile_centrality(prof, idx, f);
            auto direct = exact_influence_centrality(m, f, Mode::Individual).values;
            for (int v = 0; v < 3; ++v)
                CHECK(via_profile[v] == doctest::Approx(direct[v]).epsilon(1e-12));
        }
    }
}

TEST_CASE("anonymity holds under relabeling") {
    DirectedGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
    TriggeringModel m = TriggeringModel::make_ic_uniform(shared(std::move(g)), 0.4);
    CHECK(check_anonymity(m, kHar, {1, 2, 3, 0}));
    CHECK(check_anonymity(m, kCls, {3, 0, 1, 2}));
    CHECK(check_anonymity(m, kRch, {2, 0, 3, 1}));
    CHECK_THROWS_AS(check_anonymity(m, kRch, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(check_anonymity(m, kRch, {0, 0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(check_anonymity(m, kRch, {0, 1, 2, 4}), std::invalid_argument);
}

TEST_CASE("Bayesian mixtures average the centralities") {
    auto gp = single_edge();
    TriggeringModel hot = TriggeringModel::make_ic_uniform(gp, 0.9);
    TriggeringModel cold = TriggeringModel::make_ic_uniform(gp, 0.1);
    CHECK(check_bayesian(hot, cold, 0.25, kRch));
    CHECK(check_bayesian(hot, cold, 0.0, kHar));
    CHECK(check_bayesian(hot, cold, 1.0, kCls));

    DirectedGraph g3(3);
    g3.add_edge(0, 1);
    g3.add_edge(1, 2);
    auto gp3 = shared(std::move(g3));
    TriggeringModel ic = TriggeringModel::make_ic_uniform(gp3, 0.5);
    TriggeringModel lt = TriggeringModel::make_lt_uniform(gp3, 0.3);
    CHECK(check_bayesian(ic, lt, 0.6, kHar));

    CHECK_THROWS_AS(check_bayesian(hot, cold, -0.1, kRch), std::invalid_argument);
    CHECK_THROWS_AS(check_bayesian(hot, ic, 0.5, kRch), std::invalid_argument);
}

TEST_CASE("reports serialize to csv") {
    TriggeringModel m = TriggeringModel::make_ic_uniform(single_edge(), 0.5);
    auto rep = exact_influence_centrality(m, kRch, Mode::Individual);
    CHECK(report_to_csv(rep) == "node,value\n0,1.5\n1,1\n");
    CHECK(report_to_csv(rep, {"alpha", "beta"}) == "node,value\nalpha,1.5\nbeta,1\n");

    auto grp = exact_influence_centrality(m, kRch, Mode::Group, {{0, 1}, {1}});
    CHECK(report_to_csv(grp) == "group,value\n0;1,2\n1,1\n");
}

TEST_CASE("reports serialize to json") {
    TriggeringModel m = TriggeringModel::make_ic_uniform(single_edge(), 0.5);
    auto rep = exact_influence_centrality(m, kRch, Mode::Individual);
    auto j = nlohmann::json::parse(report_to_json(rep));
    CHECK(j["mode"] == "individual");
    CHECK(j["function"] == "rch");
    CHECK(j["method"] == "exact");
    CHECK(j["values"]["0"] == 1.5);
    CHECK(j["values"]["1"] == 1.0);

    auto grp = exact_influence_centrality(m, kRch, Mode::Group, {{0, 1}});
    auto jg = nlohmann::json::parse(report_to_json(grp, {"a", "b"}));
    CHECK(jg["groups"][0]["nodes"][0] == "a");
    CHECK(jg["groups"][0]["value"] == 2.0);
}
