#include <doctest.h>

#include "oracles.hpp"

#include <ranksurprise/error.hpp>
#include <ranksurprise/ranking.hpp>

#include <cmath>
#include <sstream>

using namespace ranksurprise;

namespace {

ScoreTable table(std::vector<double> scores, Measure m = Measure::pagerank) {
    ScoreTable t;
    t.measure = m;
    for (node i = 0; i < scores.size(); ++i)
        t.nodes.push_back(i);
    t.scores = std::move(scores);
    return t;
}

// Scores drawn from a small pool so ties are common.
std::vector<double> tied_scores(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> pool(0, static_cast<int>(n / 3 + 1));
    std::vector<double> v(n);
    for (auto& x : v)
        x = pool(rng) * 0.25 - 1.0;
    return v;
}

} // namespace

TEST_CASE("rank: distinct scores") {
    const auto r = rank(table({3.0, 2.0, 1.0}));
    CHECK(r.g == std::vector<std::uint32_t>{1, 2, 3});
    CHECK(r.n == 3);
    CHECK(r.x(0) == doctest::Approx(1.0 / 3.0));
    CHECK(r.x(1) == doctest::Approx(2.0 / 3.0));
    CHECK(r.x(2) == 1.0);
}

TEST_CASE("rank: ties share the largest g") {
    const auto r = rank(table({2.0, 2.0}));
    CHECK(r.g == std::vector<std::uint32_t>{2, 2});
    CHECK(r.x(0) == 1.0);

    const auto top_tie = rank(table({5.0, 1.0, 5.0, 5.0}));
    CHECK(top_tie.g == std::vector<std::uint32_t>{3, 4, 3, 3});
}

TEST_CASE("rank: single node and NaN") {
    const auto r = rank(table({0.5}));
    CHECK(r.g == std::vector<std::uint32_t>{1});
    CHECK(r.x(0) == 1.0);
    CHECK_THROWS_AS(rank(table({0.5, std::nan("")})), DataError);
    CHECK_THROWS_AS(rank(table({})), InvalidArgument);
}

TEST_CASE("property: rank is weakly monotone, counts classes, invariant under increasing maps") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 60)(rng);
        auto scores = tied_scores(rng, n);
        const auto r = rank(table(scores));
        std::uint32_t max_g = 0;
        for (std::size_t i = 0; i < n; ++i) {
            max_g = std::max(max_g, r.g[i]);
            REQUIRE(r.g[i] >= 1);
            REQUIRE(r.g[i] <= n);
            for (std::size_t j = 0; j < n; ++j) {
                if (scores[i] > scores[j])
                    REQUIRE(r.g[i] < r.g[j]);
                if (scores[i] == scores[j])
                    REQUIRE(r.g[i] == r.g[j]);
            }
            std::uint32_t at_least = 0;
            for (double s : scores)
                at_least += s >= scores[i];
            REQUIRE(r.g[i] == at_least);
        }
        CHECK(max_g == n);

        std::vector<double> transformed(n);
        for (std::size_t i = 0; i < n; ++i)
            transformed[i] = std::exp(scores[i]);
        CHECK(rank(table(transformed)).g == r.g);
    }
}

TEST_CASE("kendall and spearman: identical and reversed rankings") {
    const auto a = table({1.0, 2.0, 3.0, 4.0});
    const auto b = table({4.0, 3.0, 2.0, 1.0});
    CHECK(kendall_tau(a, a) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(spearman_rho(a, a) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kendall_tau(a, b) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(spearman_rho(a, b) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("kendall and spearman: errors") {
    auto a = table({1.0, 2.0, 3.0});
    auto other = a;
    other.nodes = {0, 1, 5};
    CHECK_THROWS_AS(kendall_tau(a, other), InvalidArgument);
    CHECK_THROWS_AS(spearman_rho(a, other), InvalidArgument);
    const auto flat = table({1.0, 1.0, 1.0});
    CHECK_THROWS_AS(kendall_tau(a, flat), DataError);
    CHECK_THROWS_AS(spearman_rho(flat, a), DataError);
}

TEST_CASE("property: correlations match O(n^2) and direct oracles with ties") {
    std::mt19937_64 rng(11);
    int checked = 0;
    while (checked < 100) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 50)(rng);
        const auto x = tied_scores(rng, n);
        const auto y = tied_scores(rng, n);
        const auto a = table(x);
        const auto b = table(y, Measure::disruption);
        const bool constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }) ||
                              std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
        if (constant) {
            CHECK_THROWS(kendall_tau(a, b));
            continue;
        }
        ++checked;
        REQUIRE(kendall_tau(a, b) == oracle::brute_kendall(x, y));
        REQUIRE(std::abs(spearman_rho(a, b) - oracle::brute_spearman(x, y)) <= 1e-12);
        // symmetry and invariance under increasing transforms
        REQUIRE(kendall_tau(b, a) == kendall_tau(a, b));
        REQUIRE(std::abs(spearman_rho(b, a) - spearman_rho(a, b)) <= 1e-15);
        auto ax = x;
        for (auto& v : ax)
            v = 3.0 * v * v * v + 1.0;
        REQUIRE(kendall_tau(table(ax), b) == kendall_tau(a, b));
        REQUIRE(spearman_rho(table(ax), b) == spearman_rho(a, b));
    }
}

TEST_CASE("mid_ranks averages tied positions") {
    CHECK(mid_ranks({10.0, 20.0, 10.0, 30.0}) == std::vector<double>{1.5, 3.0, 1.5, 4.0});
}

TEST_CASE("correlation report writes NA for undefined values") {
    std::ostringstream out;
    write_correlation_report(out, {{"allmusic", 1959, 0.25, 0.5}, {"allmusic", 1969, std::nullopt, std::nullopt}});
    CHECK(out.str() == "dataset,snapshot,kendall,spearman\nallmusic,1959,0.25,0.5\nallmusic,1969,NA,NA\n");
}
