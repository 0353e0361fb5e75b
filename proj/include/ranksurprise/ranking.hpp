#pragma once

#include <ranksurprise/centrality.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ranksurprise {

/// Rank observation of one node: g nodes (itself included) score at least as
/// high, out of n. The relative position g/n is 1/n for a unique top node and
/// 1 for the bottom.
struct RankPosition {
    std::uint32_t g = 1;
    std::uint32_t n = 1;

    double x() const noexcept { return static_cast<double>(g) / static_cast<double>(n); }
    bool operator==(const RankPosition&) const = default;
};

struct RankTable {
    int t = 0;
    Measure measure = Measure::pagerank;
    std::vector<node> nodes; ///< ascending, aligned with g
    std::vector<std::uint32_t> g;
    std::uint32_t n = 0;

    std::size_t size() const noexcept { return nodes.size(); }
    double x(std::size_t i) const { return static_cast<double>(g[i]) / static_cast<double>(n); }
    std::optional<RankPosition> position_of(node u) const;
};

/// g_i = |{j : s_j >= s_i}| with exact floating point comparison.
RankTable rank(const ScoreTable& scores);

/// Kendall's tau-b over paired scores, O(n log n). Throws when the node sets
/// differ or either side is constant.
double kendall_tau(const ScoreTable& a, const ScoreTable& b);

/// Pearson correlation of mid-ranks (ties get the average rank).
double spearman_rho(const ScoreTable& a, const ScoreTable& b);

/// Average (1-based) ranks in ascending score order.
std::vector<double> mid_ranks(const std::vector<double>& values);

struct CorrelationRow {
    std::string dataset;
    int snapshot = 0;
    std::optional<double> kendall; ///< nullopt when undefined (constant scores)
    std::optional<double> spearman;
};

/// `dataset,snapshot,kendall,spearman`; undefined coefficients are written as NA.
void write_correlation_report(std::ostream& out, const std::vector<CorrelationRow>& rows);

} // namespace ranksurprise
