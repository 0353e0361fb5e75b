#pragma once

#include <ranksurprise/temporal_graph.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace ranksurprise {

/// Versioned JSON sidecar for a snapshot series.
///
/// Layout (version 1):
///   { "format": "ranksurprise-snapshots", "version": 1,
///     "key": { "input_hash": "<fnv1a64 hex>", "delta": D, "start": S, "end": E,
///              "reverse_edges": bool, "weighted": bool },
///     "labels": [...],                 // node labels in index order
///     "events": [[src, dst, year, weight], ...],
///     "snapshots": [{ "t": T, "partial": bool, "nodes": N, "edges": M, "total_weight": W }, ...] }
///
/// Loading rebuilds the series from the events and checks it against the
/// stored statistics.
inline constexpr int snapshot_cache_version = 1;

struct SnapshotCacheKey {
    std::string input_hash;
    SnapshotConfig config;
    bool reverse_edges = false;
    bool weighted = true;

    bool operator==(const SnapshotCacheKey& other) const {
        return input_hash == other.input_hash && config.delta == other.config.delta &&
               config.start_year == other.config.start_year && config.end_year == other.config.end_year &&
               reverse_edges == other.reverse_edges && weighted == other.weighted;
    }
};

/// Hash of a file's bytes, hex encoded.
std::string hash_file(const std::string& path);

void write_snapshot_cache(std::ostream& out, const SnapshotCacheKey& key, const TemporalEdgeList& events,
                          const SnapshotSeries& series);

struct LoadedSnapshots {
    SnapshotCacheKey key;
    TemporalEdgeList events;
    SnapshotSeries series;
};

/// Throws DataError on a malformed cache or unsupported version.
LoadedSnapshots read_snapshot_cache(std::istream& in);

/// Loads a cache file if it exists and its key matches; nullopt otherwise.
std::optional<LoadedSnapshots> load_matching_cache(const std::string& path, const SnapshotCacheKey& key);

} // namespace ranksurprise
