#include <doctest.h>

#include "oracles.hpp"

#include <ranksurprise/centrality.hpp>
#include <ranksurprise/error.hpp>
#include <ranksurprise/parallel.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

using namespace ranksurprise;

namespace {

GraphSnapshot graph(std::size_t universe, std::vector<std::tuple<node, node, std::uint64_t>> edges) {
    return GraphSnapshot(0, false, universe, std::move(edges));
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

} // namespace

TEST_CASE("pagerank: directed 3-cycle is uniform") {
    const auto g = graph(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
    const auto table = pagerank(g);
    CHECK(table.converged);
    for (double s : table.scores)
        CHECK(std::abs(s - 1.0 / 3.0) <= 1e-12);
}

TEST_CASE("pagerank: dangling target matches the dense linear solve") {
    const auto g = graph(2, {{0, 1, 1}});
    const auto table = pagerank(g);
    const auto expected = oracle::dense_pagerank(g, 0.85);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(std::abs(table.scores[i] - expected[i]) <= 1e-10);
    // By hand: pi_A = (1-d)/2 + d pi_B / 2 and pi_A + pi_B = 1 give pi_A = 0.5 / 1.425.
    CHECK(std::abs(table.scores[0] - 0.5 / 1.425) <= 1e-10);
    CHECK(table.scores[1] > table.scores[0]);
}

TEST_CASE("pagerank: heavier edge attracts more mass") {
    const auto g = graph(3, {{0, 1, 3}, {0, 2, 1}});
    const auto table = pagerank(g);
    const auto expected = oracle::dense_pagerank(g, 0.85);
    CHECK(table.scores[1] > table.scores[2]);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(table.scores[i] - expected[i]) <= 1e-10);
}

TEST_CASE("pagerank: non-convergence is reported, not thrown") {
    const auto g = graph(3, {{0, 1, 1}, {1, 2, 5}, {2, 0, 1}, {0, 2, 1}});
    PagerankConfig config;
    config.max_iterations = 2;
    const auto table = pagerank(g, config);
    CHECK_FALSE(table.converged);
    CHECK(table.iterations == 2);
    CHECK(std::abs(sum(table.scores) - 1.0) <= 1e-12);
}

TEST_CASE("pagerank: errors") {
    const auto empty = graph(2, {});
    CHECK_THROWS_AS(pagerank(empty), DataError);
    PagerankConfig bad;
    bad.damping = 1.0;
    CHECK_THROWS_AS(pagerank(graph(2, {{0, 1, 1}}), bad), InvalidArgument);
}

TEST_CASE("property: pagerank agrees with the dense oracle, sums to one, is scale invariant") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 80)(rng);
        const double density = std::uniform_real_distribution<double>(0.01, 0.2)(rng);
        const auto g = oracle::random_snapshot(rng, n, density, 9);
        const auto table = pagerank(g);
        const auto expected = oracle::dense_pagerank(g, 0.85);
        REQUIRE(table.converged);
        CHECK(std::abs(sum(table.scores) - 1.0) <= 1e-9);
        for (std::size_t i = 0; i < expected.size(); ++i) {
            REQUIRE(std::abs(table.scores[i] - expected[i]) <= 1e-8);
            REQUIRE(table.scores[i] > 0.0);
            REQUIRE(table.scores[i] < 1.0);
        }

        std::vector<std::tuple<node, node, std::uint64_t>> scaled;
        for (node u : g.nodes()) {
            const auto ns = g.out_edges().neighbors(u);
            const auto ws = g.out_edges().neighbor_weights(u);
            for (std::size_t k = 0; k < ns.size(); ++k)
                scaled.emplace_back(u, ns[k], ws[k] * 7);
        }
        const auto scaled_table = pagerank(GraphSnapshot(0, false, g.universe(), scaled));
        for (std::size_t i = 0; i < expected.size(); ++i)
            REQUIRE(std::abs(scaled_table.scores[i] - table.scores[i]) <= 1e-10);
    }
}

TEST_CASE("pagerank: parallel kernel matches the serial reference and is thread-count independent") {
    std::mt19937_64 rng(5);
    const auto g = oracle::random_snapshot(rng, 3000, 0.002, 4);
    const auto reference = serial::pagerank(g);
    const int saved = max_threads();
    set_threads(1);
    const auto one = pagerank(g);
    set_threads(4);
    const auto four = pagerank(g);
    set_threads(saved);
    CHECK(one.scores == four.scores);
    CHECK(one.iterations == four.iterations);
    for (std::size_t i = 0; i < reference.size(); ++i)
        REQUIRE(std::abs(reference.scores[i] - one.scores[i]) <= 1e-12);
}

TEST_CASE("disruption: focal cited only in isolation scores 1") {
    // focal=0, citers x=1, y=2 cite only 0; focal cites z=3 which nobody else cites.
    const auto g = graph(4, {{1, 0, 1}, {2, 0, 1}, {0, 3, 1}});
    const auto counts = disruption_counts(g, 0);
    CHECK(counts.only == 2);
    CHECK(counts.both == 0);
    CHECK(counts.bypass == 0);
    CHECK(disruption(g, 0) == 1.0);
}

TEST_CASE("disruption: citers that also cite the focal's influence score -1") {
    const auto g = graph(4, {{1, 0, 1}, {2, 0, 1}, {0, 3, 1}, {1, 3, 1}, {2, 3, 1}});
    CHECK(disruption(g, 0) == -1.0);
}

TEST_CASE("disruption: bypass citers enter the denominator only when enabled") {
    // 1 cites only the focal, 4 cites the focal's influence 3 but not the focal.
    const auto g = graph(5, {{1, 0, 1}, {0, 3, 1}, {4, 3, 1}});
    CHECK(disruption(g, 0, {true}) == doctest::Approx(0.5));
    CHECK(disruption(g, 0, {false}) == 1.0);
}

TEST_CASE("disruption: isolated-from-citers node is 0, absent focal throws") {
    const auto g = graph(3, {{0, 1, 1}});
    CHECK(disruption(g, 0) == 0.0);
    CHECK_THROWS_AS(disruption(g, 2), InvalidArgument);
}

TEST_CASE("disruption_all: covers the node set within [-1, 1]") {
    const auto g = graph(2, {{0, 1, 1}});
    const auto table = disruption_all(g);
    CHECK(table.nodes == std::vector<node>{0, 1});
    CHECK(table.measure == Measure::disruption);
    CHECK_THROWS_AS(disruption_all(graph(2, {})), DataError);
}

TEST_CASE("property: disruption equals brute-force enumeration, serial and parallel") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 30)(rng);
        const auto g = oracle::random_snapshot(rng, n, std::uniform_real_distribution<double>(0.02, 0.4)(rng));
        for (bool bypass : {true, false}) {
            const auto table = disruption_all(g, {bypass});
            const auto reference = serial::disruption_all(g, {bypass});
            CHECK(table.scores == reference.scores);
            for (std::size_t i = 0; i < table.size(); ++i) {
                REQUIRE(table.scores[i] == oracle::brute_disruption(g, table.nodes[i], bypass));
                REQUIRE(table.scores[i] >= -1.0);
                REQUIRE(table.scores[i] <= 1.0);
            }
        }
    }
}

TEST_CASE("property: new isolated citer never lowers disruption, consolidating citer never raises it") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 20)(rng);
        const auto g = oracle::random_snapshot(rng, n, 0.2);
        std::vector<std::tuple<node, node, std::uint64_t>> edges;
        for (node u : g.nodes())
            for (node v : g.out_edges().neighbors(u))
                edges.emplace_back(u, v, 1);
        const node focal = g.nodes()[std::uniform_int_distribution<std::size_t>(0, g.node_count() - 1)(rng)];
        const node fresh = static_cast<node>(n);
        const double before = disruption(g, focal);

        auto isolated = edges;
        isolated.emplace_back(fresh, focal, 1);
        CHECK(disruption(GraphSnapshot(0, false, n + 1, isolated), focal) >= before);

        const auto influences = g.out_edges().neighbors(focal);
        if (!influences.empty()) {
            auto consolidating = edges;
            consolidating.emplace_back(fresh, focal, 1);
            consolidating.emplace_back(fresh, influences.front(), 1);
            CHECK(disruption(GraphSnapshot(0, false, n + 1, consolidating), focal) <= before);
        }
    }
}

TEST_CASE("score table export is ordered by label with a metadata line") {
    const NodeDictionary dict({"b", "a", "c"});
    const auto g = graph(3, {{dict.at("c"), dict.at("a"), 1}, {dict.at("b"), dict.at("a"), 1}});
    std::ostringstream out;
    write_score_table(out, disruption_all(g), dict);
    CHECK(out.str() == "# t=0,measure=disruption,converged=true,iterations=0\nnode,score\na,1\nb,0\nc,0\n");
}
