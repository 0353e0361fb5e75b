#pragma once

#include <ranksurprise/temporal_graph.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ranksurprise {

enum class Measure { pagerank, disruption };

std::string_view to_string(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

/// Per-node scores of one snapshot. nodes[i] and scores[i] are aligned and
/// nodes is ascending, i.e. exactly the snapshot's node set.
struct ScoreTable {
    int t = 0;
    Measure measure = Measure::pagerank;
    std::vector<node> nodes;
    std::vector<double> scores;
    bool converged = true;
    std::size_t iterations = 0;

    std::size_t size() const noexcept { return nodes.size(); }
    /// Score of u, or nullopt if u is not covered.
    std::optional<double> score_of(node u) const;
};

struct PagerankConfig {
    double damping = 0.85;
    double tolerance = 1e-10; ///< L1 change between iterates
    std::size_t max_iterations = 10'000;

    void validate() const;
};

struct DisruptionOptions {
    /// Count nodes that cite the focal node's influences but not the focal
    /// node itself in the denominator.
    bool include_bypass = true;
};

/// Weighted PageRank by power iteration. The walker follows out-edges with
/// probability proportional to edge weight, teleports with (1 - damping) and
/// spreads the mass of dangling nodes uniformly. Parallel over nodes; output
/// is independent of the thread count.
ScoreTable pagerank(const GraphSnapshot& snapshot, const PagerankConfig& config = {});

/// Disruption of focal: (n_only - n_both) / (n_only + n_both [+ n_bypass]), 0 when
/// the denominator vanishes. Edges point from citer to cited; weights are ignored.
double disruption(const GraphSnapshot& snapshot, node focal, const DisruptionOptions& options = {});

ScoreTable disruption_all(const GraphSnapshot& snapshot, const DisruptionOptions& options = {});

/// Group sizes behind a disruption value; exposed for reporting and tests.
struct DisruptionCounts {
    std::size_t only = 0;
    std::size_t both = 0;
    std::size_t bypass = 0;
};
DisruptionCounts disruption_counts(const GraphSnapshot& snapshot, node focal);

/// `# t=...,measure=...` metadata line followed by `node,score` rows in label order.
void write_score_table(std::ostream& out, const ScoreTable& table, const NodeDictionary& nodes);

namespace serial {

/// Reference power iteration (push formulation, single thread).
ScoreTable pagerank(const GraphSnapshot& snapshot, const PagerankConfig& config = {});
ScoreTable disruption_all(const GraphSnapshot& snapshot, const DisruptionOptions& options = {});

} // namespace serial

} // namespace ranksurprise
