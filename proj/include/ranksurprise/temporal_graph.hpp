#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace ranksurprise {

/// Dense node index. Indices are shared by every snapshot of one series.
using node = std::uint32_t;

/// Bidirectional label <-> index mapping. Indices follow lexicographic label
/// order, so the mapping depends only on the set of labels.
class NodeDictionary {
public:
    NodeDictionary() = default;
    explicit NodeDictionary(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(node u) const { return labels_.at(u); }
    std::optional<node> find(std::string_view label) const;
    node at(std::string_view label) const;
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    bool operator==(const NodeDictionary& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, node> index_;
};

struct EdgeEvent {
    node src;
    node dst;
    int year;
    std::uint64_t weight;

    bool operator==(const EdgeEvent&) const = default;
};

struct IngestReport {
    std::size_t rows_read = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_merged = 0;
    std::size_t out_of_range_skipped = 0;
};

/// Timestamped influence events after cleaning: no self-loops, one event per
/// (src, dst, year), sorted by (year, src, dst).
struct TemporalEdgeList {
    std::shared_ptr<const NodeDictionary> nodes;
    std::vector<EdgeEvent> events;
    int min_year = 0;
    int max_year = 0;
    bool weighted = false;
    IngestReport report;

    bool operator==(const TemporalEdgeList& other) const;
};

enum class HeaderMode { automatic, present, absent };

struct IngestOptions {
    char delimiter = ',';
    HeaderMode header = HeaderMode::automatic;
    int src_column = 0;
    int dst_column = 1;
    int year_column = 2;
    int weight_column = 3; ///< ignored unless weighted
    bool weighted = true;  ///< false: every row counts once, weight column ignored
    bool reverse_edges = false;
    std::optional<int> min_year;
    std::optional<int> max_year;
};

/// Raw row as read from a file, before label interning.
struct LabeledEdge {
    std::string src;
    std::string dst;
    int year;
    std::uint64_t weight;
};

TemporalEdgeList ingest_edge_list(const std::string& path, const IngestOptions& options = {});
TemporalEdgeList parse_edge_list(std::istream& in, const IngestOptions& options = {},
                                 const std::string& source = "<stream>");
/// Cleans and interns already-split rows; shared by the parser and the generator.
TemporalEdgeList make_edge_list(std::span<const LabeledEdge> rows, bool weighted,
                                IngestReport report = {});

/// Writes `src,dst,year,weight` CSV with a header row.
void write_edge_list(std::ostream& out, const TemporalEdgeList& list);

struct SnapshotConfig {
    int delta = 1;
    int start_year = 0;
    int end_year = 0;

    void validate() const;
    /// Inclusive upper-bound years of each period; the last may be partial.
    std::vector<int> boundaries() const;
    static SnapshotConfig covering(const TemporalEdgeList& list, int delta);
};

/// Compressed adjacency indexed by global node id.
struct Adjacency {
    std::vector<std::size_t> offsets; ///< size() == universe + 1
    std::vector<node> targets;
    std::vector<std::uint64_t> weights;

    std::span<const node> neighbors(node u) const {
        return {targets.data() + offsets[u], offsets[u + 1] - offsets[u]};
    }
    std::span<const std::uint64_t> neighbor_weights(node u) const {
        return {weights.data() + offsets[u], offsets[u + 1] - offsets[u]};
    }
    std::size_t degree(node u) const { return offsets[u + 1] - offsets[u]; }

    bool operator==(const Adjacency&) const = default;
};

/// Cumulative weighted digraph of all events with year <= t. Immutable.
class GraphSnapshot {
public:
    GraphSnapshot(int t, bool partial, std::size_t universe,
                  std::vector<std::tuple<node, node, std::uint64_t>> edges);

    int t() const noexcept { return t_; }
    bool partial() const noexcept { return partial_; }
    std::size_t universe() const noexcept { return present_.size(); }

    /// Present nodes (degree >= 1), ascending.
    std::span<const node> nodes() const noexcept { return nodes_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    bool contains(node u) const { return u < present_.size() && present_[u]; }
    bool empty() const noexcept { return nodes_.empty(); }

    /// Position of u in nodes(); u must be present.
    std::size_t local_index(node u) const { return local_[u]; }

    const Adjacency& out_edges() const noexcept { return out_; }
    const Adjacency& in_edges() const noexcept { return in_; }

    std::size_t edge_count() const noexcept { return out_.targets.size(); }
    std::uint64_t total_weight() const noexcept { return total_weight_; }
    std::optional<std::uint64_t> weight(node src, node dst) const;

    bool operator==(const GraphSnapshot& other) const;

private:
    int t_;
    bool partial_;
    std::vector<char> present_;
    std::vector<node> nodes_;
    std::vector<std::size_t> local_;
    Adjacency out_;
    Adjacency in_;
    std::uint64_t total_weight_ = 0;
};

struct SnapshotSeries {
    std::shared_ptr<const NodeDictionary> nodes;
    std::vector<GraphSnapshot> snapshots;

    std::size_t size() const noexcept { return snapshots.size(); }
    /// Index of the snapshot labeled t, if any.
    std::optional<std::size_t> find(int t) const;
};

SnapshotSeries build_snapshots(const TemporalEdgeList& events, const SnapshotConfig& config);

struct SnapshotStats {
    int t;
    bool partial;
    std::size_t nodes;
    std::size_t edges;
    std::uint64_t total_weight;

    bool operator==(const SnapshotStats&) const = default;
};

std::vector<SnapshotStats> snapshot_stats(const SnapshotSeries& series);

/// Rebuilds in-adjacency from out-adjacency; equals in_edges() for a valid snapshot.
Adjacency transpose(const Adjacency& adjacency);

} // namespace ranksurprise
