#pragma once

#include <ranksurprise/centrality.hpp>
#include <ranksurprise/report.hpp>
#include <ranksurprise/surprise.hpp>
#include <ranksurprise/synth.hpp>
#include <ranksurprise/temporal_graph.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ranksurprise {

enum class OutputFormat { csv, json };

/// Everything one `snapshot` or `analyze` run depends on.
struct RunConfig {
    std::string input;
    IngestOptions ingest;
    int delta = 1;
    std::optional<int> start_year;
    std::optional<int> end_year;
    PagerankConfig pagerank;
    DisruptionOptions disruption;
    std::vector<HypothesisKind> hypotheses{HypothesisKind::past_rank, HypothesisKind::regular_growth};
    double clamp_epsilon = 1e-6;
    std::string out_dir = "out";
    OutputFormat format = OutputFormat::csv;
    std::string dataset; ///< label in the correlation report; defaults to the input file stem
    std::vector<std::string> plot_nodes;

    void validate() const;
    TrajectoryOptions trajectory_options() const;
    /// Hash of every setting that influences artifact content, plus the input
    /// bytes. The output directory and thread count are excluded.
    std::string config_hash() const;
};

struct Prepared {
    TemporalEdgeList events;
    SnapshotConfig snapshot;
    SnapshotSeries series;
    bool from_cache = false;
};

/// Ingests the input and builds the series, reusing out_dir's snapshot cache
/// when its key matches.
Prepared prepare(const RunConfig& config);

/// Prints per-snapshot stats and writes snapshot_stats.csv plus the snapshot cache.
std::vector<SnapshotStats> cmd_snapshot(const RunConfig& config, std::ostream& log);

struct AnalyzeSummary {
    std::size_t snapshots = 0;
    std::size_t nodes = 0;
    std::size_t points = 0;
    std::vector<std::string> files;
};

/// Centrality, ranking and surprise; writes trajectories, positions, scatter,
/// correlations and requested SVG plots into out_dir.
AnalyzeSummary cmd_analyze(const RunConfig& config, std::ostream& log);
/// Same as cmd_analyze but also returns the in-memory result.
AnalyzeSummary cmd_analyze(const RunConfig& config, std::ostream& log, TrajectoryResult& result);

struct SimulateSummary {
    SynthDataset data;
    AnalyzeSummary analysis;
    std::optional<ShockReport> shock;
};

/// Generates a synthetic dataset into out_dir/edges.csv, analyzes it with one
/// snapshot per step and reports shock detection. config.input is ignored.
SimulateSummary cmd_simulate(const SynthConfig& synth, RunConfig config, std::ostream& log);

/// Prints the top-k listing of one measure at snapshot t from out_dir/positions.csv.
std::vector<PositionRow> cmd_top(const std::string& out_dir, const std::string& measure, int t, std::size_t k,
                                 std::ostream& out);

} // namespace ranksurprise
