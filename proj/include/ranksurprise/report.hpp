#pragma once

#include <ranksurprise/ranking.hpp>
#include <ranksurprise/surprise.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ranksurprise {

inline constexpr std::string_view tool_name = "ranksurprise";
inline constexpr std::string_view tool_version = "0.1.0";

/// First line of every artifact: `# ranksurprise <version> format=<name> config=<hash>`.
struct ArtifactMeta {
    std::string format;
    std::string config_hash;

    std::string header_line() const;
};

/// Column names of the trajectory table, e.g. kl_pagerank_past_rank.
std::vector<std::string> trajectory_columns(const TrajectoryOptions& options);

/// `node,t,x_<measure>...,kl_<measure>_<hypothesis>...,total_bits,flags`.
/// Inapplicable components are empty; flags is `no_evidence` or empty.
void write_trajectories_csv(std::ostream& out, const TrajectoryResult& result, const ArtifactMeta& meta);
void write_trajectories_json(std::ostream& out, const TrajectoryResult& result, const ArtifactMeta& meta);

/// Per (node, t, measure): score, g, n, x, 1 - x and the surprise components of that measure.
void write_positions(std::ostream& out, const TrajectoryResult& result, const ArtifactMeta& meta);

/// Connected-scatter data: node,t,x_pagerank,x_disruption,total_bits.
void write_scatter(std::ostream& out, const TrajectoryResult& result, const ArtifactMeta& meta);

/// Minimal static SVG: the node's path in (1 - x_pagerank, 1 - x_disruption)
/// with marker area proportional to total surprise.
void write_svg_trajectory(std::ostream& out, const TrajectoryResult& result, node id);

/// Kendall and Spearman between PageRank and Disruption for each snapshot.
std::vector<CorrelationRow> correlations(const TrajectoryResult& result, const std::string& dataset);

struct PositionRow {
    std::string node;
    int t = 0;
    std::string measure;
    double score = 0.0;
    std::uint32_t g = 0;
    std::uint32_t n = 0;
    double x = 0.0;
    std::vector<std::pair<std::string, std::optional<double>>> surprise; ///< kl_<hypothesis> columns
    double total_bits = 0.0;
};

std::vector<PositionRow> read_positions(std::istream& in, const std::string& source);

/// Rows of one measure at snapshot t, best first, cut after the k-th row but
/// keeping every row tied with it. Throws listing the available snapshots
/// when t is absent.
std::vector<PositionRow> top_k(const std::vector<PositionRow>& rows, const std::string& measure, int t,
                               std::size_t k);

} // namespace ranksurprise
