#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <memory>

#include "infl/centrality.hpp"
#include "infl/profile.hpp"

using namespace infl;

namespace {

std::shared_ptr<const DirectedGraph> single_edge() {
    DirectedGraph g(2);
    g.add_edge(0, 1);
    return std::make_shared<const DirectedGraph>(std::move(g));
}

} // namespace

TEST_CASE("sequence counts per node count") {
    CHECK(enumerate_sequences(1).M() == 0);
    CHECK(enumerate_sequences(2).M() == 2);
    CHECK(enumerate_sequences(3).M() == 18);
    CHECK(enumerate_sequences(4).M() == 134);
    CHECK(enumerate_sequences(5).M() == 1050);
    CHECK_THROWS_AS(enumerate_sequences(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sequences(6), std::invalid_argument);
}

TEST_CASE("keys are activation arrays in lexicographic order") {
    SequenceIndex idx = enumerate_sequences(2);
    REQUIRE(idx.keys.size() == 2);
    CHECK(idx.keys[0] == std::vector<HopDist>{0, 1});
    CHECK(idx.keys[1] == std::vector<HopDist>{1, 0});

    SequenceIndex idx3 = enumerate_sequences(3);
    int two_layers = 0, three_layers = 0;
    for (const auto& key : idx3.keys) {
        HopDist top = 0;
        for (HopDist t : key)
            if (!is_inf(t)) top = std::max(top, t);
        (top == 1 ? two_layers : three_layers) += 1;
    }
    CHECK(two_layers == 12);
    CHECK(three_layers == 6);
    for (std::size_t i = 1; i < idx3.keys.size(); ++i) CHECK(idx3.keys[i - 1] < idx3.keys[i]);
}

TEST_CASE("index lookup distinguishes stationary and malformed sequences") {
    SequenceIndex idx = enumerate_sequences(2);
    CHECK(idx.index_of({{0, 1}}) == 0);
    CHECK(idx.index_of({{1, 0}}) == 1);
    CHECK(idx.index_of({{0, kInfDist}}) == -1);  // stationary: not indexed
    CHECK(idx.index_of({{0, 0}}) == -1);
    CHECK_THROWS_AS(idx.index_of({{0}}), std::invalid_argument);
    CHECK_THROWS_AS(idx.index_of({{1, kInfDist}}), std::logic_error);  // no seed at 0
}

TEST_CASE("layered instances align with the sequence order") {
    for (int n = 2; n <= 4; ++n) {
        SequenceIndex idx = enumerate_sequences(n);
        auto specs = enumerate_layered_instances(n);
        REQUIRE(static_cast<int>(specs.size()) == idx.M());
        // each spec seeded with its own first layer traces exactly key c
        for (int c = 0; c < idx.M(); ++c) {
            ProfileVector vec = layered_instance_vector(specs[c], idx);
            CHECK(vec.values[c] == 1.0);
        }
    }
}

TEST_CASE("layered instance vector on two nodes") {
    SequenceIndex idx = enumerate_sequences(2);
    ProfileVector vec = layered_instance_vector({2, {{0}, {1}}}, idx);
    CHECK(vec.values == std::vector<double>{1.0, 0.0});
    vec = layered_instance_vector({2, {{1}, {0}}}, idx);
    CHECK(vec.values == std::vector<double>{0.0, 1.0});
    CHECK_THROWS_AS(layered_instance_vector({3, {{0}, {1}}}, idx), std::invalid_argument);
}

TEST_CASE("exact profile of a single half-edge") {
    TriggeringModel m = TriggeringModel::make_ic_uniform(single_edge(), 0.5);
    SequenceIndex idx = enumerate_sequences(2);
    ProfileVector prof = exact_profile(m, idx);
    CHECK(prof.values[0] == doctest::Approx(0.5).epsilon(1e-12));  // (0,1): edge live
    CHECK(prof.values[1] == 0.0);                                  // (1,0): impossible
}

TEST_CASE("per-seed masses stay within one") {
    DirectedGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    TriggeringModel m =
        TriggeringModel::make_ic_uniform(std::make_shared<const DirectedGraph>(std::move(g)), 0.7);
    SequenceIndex idx = enumerate_sequences(3);
    ProfileVector prof = exact_profile(m, idx);
    // group indexed mass by the seed set S_0 encoded in each key
    std::map<std::vector<bool>, double> mass;
    for (int j = 0; j < idx.M(); ++j) {
        std::vector<bool> seed(3);
        for (int v = 0; v < 3; ++v) seed[v] = idx.keys[j][v] == 0;
        mass[seed] += prof.values[j];
    }
    for (const auto& [seed, p] : mass) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0 + 1e-12);
    }
}

TEST_CASE("basis has full rank for small n") {
    for (int n = 2; n <= 4; ++n) {
        RankReport rep = basis_rank_check(n);
        CHECK(rep.n == n);
        CHECK(rep.M == rep.layered_count);
        CHECK(rep.rank == rep.M);
        CHECK(rep.full_rank);
        CHECK(rep.exact);
    }
}

TEST_CASE("n=5 rank check is opt-in") {
    CHECK_THROWS_AS(basis_rank_check(5), std::invalid_argument);
    RankReport rep = basis_rank_check(5, true);
    CHECK(rep.M == 1050);
    CHECK(rep.rank == 1050);
    CHECK(rep.full_rank);
    CHECK_FALSE(rep.exact);
}

TEST_CASE("decomposition inverts layered instance vectors") {
    SequenceIndex idx = enumerate_sequences(3);
    auto specs = enumerate_layered_instances(3);
    for (int c : {0, 7, 17}) {
        BasisDecomposition d = decompose(layered_instance_vector(specs[c], idx));
        CHECK(d.residual <= 1e-9);
        CHECK(d.lambda_sum == doctest::Approx(1.0).epsilon(1e-9));
        for (int i = 0; i < idx.M(); ++i)
            CHECK(d.lambda[i] == doctest::Approx(i == c ? 1.0 : 0.0).epsilon(1e-9));
    }
}

TEST_CASE("decomposition of a stochastic profile reconstructs centralities") {
    TriggeringModel m = TriggeringModel::make_ic_uniform(single_edge(), 0.5);
    SequenceIndex idx = enumerate_sequences(2);
    BasisDecomposition d = decompose(exact_profile(m, idx));
    CHECK(d.lambda[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.lambda[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.lambda_sum == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.residual <= 1e-12);

    DistanceFunction har = DistanceFunction::from(NodeWiseFunction::har());
    auto specs = enumerate_layered_instances(2);
    std::vector<std::vector<double>> psi_basis;
    for (const auto& spec : specs)
        psi_basis.push_back(
            graph_centrality(build_layered_graph(spec), har, Mode::Individual).values);
    std::vector<double> psi_null =
        graph_centrality(DirectedGraph(2), har, Mode::Individual).values;

    std::vector<double> rec = reconstruct_centrality(d, psi_basis, psi_null);
    auto exact = exact_influence_centrality(m, har, Mode::Individual);
    REQUIRE(rec.size() == exact.values.size());
    for (std::size_t v = 0; v < rec.size(); ++v)
        CHECK(rec[v] == doctest::Approx(exact.values[v]).epsilon(1e-12));
}

TEST_CASE("reconstruction validates its inputs") {
    BasisDecomposition d;
    d.n = 2;
    d.lambda = {1.0, 0.0};
    d.lambda_sum = 1.0;
    CHECK_THROWS_AS(reconstruct_centrality(d, {{1.0, 0.0}}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_centrality(d, {{1.0}, {0.0, 1.0}}, {0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("decompose rejects length mismatches") {
    ProfileVector bad{2, {0.5}};
    CHECK_THROWS_AS(decompose(bad), std::invalid_argument);
}
