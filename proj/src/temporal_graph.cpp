#include <ranksurprise/temporal_graph.hpp>

#include <ranksurprise/error.hpp>
#include <ranksurprise/text.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

namespace ranksurprise {

NodeDictionary::NodeDictionary(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
    index_.reserve(labels_.size());
    for (node i = 0; i < labels_.size(); ++i)
        index_.emplace(labels_[i], i);
}

std::optional<node> NodeDictionary::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

node NodeDictionary::at(std::string_view label) const {
    if (auto u = find(label))
        return *u;
    throw InvalidArgument("unknown node label '" + std::string(label) + "'");
}

bool TemporalEdgeList::operator==(const TemporalEdgeList& other) const {
    const bool same_nodes = (nodes && other.nodes) ? (*nodes == *other.nodes) : (nodes == other.nodes);
    return same_nodes && events == other.events && min_year == other.min_year &&
           max_year == other.max_year && weighted == other.weighted;
}

namespace {

bool parse_int(std::string_view s, long long& out) {
    s = trim(s);
    if (s.empty())
        return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace

TemporalEdgeList make_edge_list(std::span<const LabeledEdge> rows, bool weighted,
                                IngestReport report) {
    std::vector<std::string> labels;
    labels.reserve(rows.size() * 2);
    for (const auto& r : rows) {
        if (r.src == r.dst)
            continue;
        labels.push_back(r.src);
        labels.push_back(r.dst);
    }
    auto dict = std::make_shared<NodeDictionary>(std::move(labels));

    std::vector<EdgeEvent> events;
    events.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.src == r.dst) {
            ++report.self_loops_dropped;
            continue;
        }
        events.push_back({dict->at(r.src), dict->at(r.dst), r.year, r.weight});
    }
    std::sort(events.begin(), events.end(), [](const EdgeEvent& a, const EdgeEvent& b) {
        return std::tie(a.year, a.src, a.dst) < std::tie(b.year, b.src, b.dst);
    });

    std::vector<EdgeEvent> merged;
    merged.reserve(events.size());
    for (const auto& e : events) {
        if (!merged.empty() && merged.back().year == e.year && merged.back().src == e.src &&
            merged.back().dst == e.dst) {
            merged.back().weight += e.weight;
            ++report.duplicates_merged;
        } else {
            merged.push_back(e);
        }
    }

    TemporalEdgeList list;
    list.nodes = std::move(dict);
    list.events = std::move(merged);
    list.weighted = weighted;
    list.report = report;
    if (!list.events.empty()) {
        list.min_year = list.events.front().year;
        list.max_year = list.events.back().year;
    }
    return list;
}

TemporalEdgeList parse_edge_list(std::istream& in, const IngestOptions& options,
                                 const std::string& source) {
    const int needed = std::max({options.src_column, options.dst_column, options.year_column});
    if (options.src_column < 0 || options.dst_column < 0 || options.year_column < 0)
        throw InvalidArgument("column indices must be non-negative");

    std::vector<LabeledEdge> rows;
    IngestReport report;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        auto fields = split_delimited(view, options.delimiter);
        const bool is_first = first_data_line;
        first_data_line = false;

        long long year = 0;
        const bool year_ok = static_cast<int>(fields.size()) > options.year_column &&
                             parse_int(fields[options.year_column], year);
        if (is_first && options.header != HeaderMode::absent &&
            (options.header == HeaderMode::present || !year_ok))
            continue;

        if (static_cast<int>(fields.size()) <= needed)
            throw ParseError(source, line_no,
                             "expected at least " + std::to_string(needed + 1) + " columns, got " +
                                 std::to_string(fields.size()));
        if (!year_ok)
            throw ParseError(source, line_no, "year is not an integer: '" +
                                                  fields[options.year_column] + "'");

        std::uint64_t weight = 1;
        if (options.weighted && options.weight_column >= 0 &&
            static_cast<int>(fields.size()) > options.weight_column &&
            !trim(fields[options.weight_column]).empty()) {
            long long w = 0;
            if (!parse_int(fields[options.weight_column], w) || w < 1)
                throw ParseError(source, line_no, "weight must be a positive integer: '" +
                                                      fields[options.weight_column] + "'");
            weight = static_cast<std::uint64_t>(w);
        }

        std::string src{trim(fields[options.src_column])};
        std::string dst{trim(fields[options.dst_column])};
        if (src.empty() || dst.empty())
            throw ParseError(source, line_no, "empty node label");

        ++report.rows_read;
        if ((options.min_year && year < *options.min_year) ||
            (options.max_year && year > *options.max_year)) {
            ++report.out_of_range_skipped;
            continue;
        }
        if (options.reverse_edges)
            std::swap(src, dst);
        rows.push_back({std::move(src), std::move(dst), static_cast<int>(year), weight});
    }
    if (report.rows_read == 0)
        throw DataError(source + ": no edge rows");
    return make_edge_list(rows, options.weighted, report);
}

TemporalEdgeList ingest_edge_list(const std::string& path, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open input file '" + path + "'");
    return parse_edge_list(in, options, path);
}

void write_edge_list(std::ostream& out, const TemporalEdgeList& list) {
    out << "src,dst,year,weight\n";
    for (const auto& e : list.events) {
        out << csv_field(list.nodes->label(e.src), ',') << ',' << csv_field(list.nodes->label(e.dst), ',')
            << ',' << e.year << ',' << e.weight << '\n';
    }
}

void SnapshotConfig::validate() const {
    if (delta < 1)
        throw InvalidArgument("snapshot delta must be >= 1, got " + std::to_string(delta));
    if (start_year > end_year)
        throw InvalidArgument("snapshot start year " + std::to_string(start_year) +
                              " is after end year " + std::to_string(end_year));
}

std::vector<int> SnapshotConfig::boundaries() const {
    validate();
    std::vector<int> out;
    for (long long t = static_cast<long long>(start_year) + delta - 1;; t += delta) {
        if (t >= end_year) {
            out.push_back(end_year);
            break;
        }
        out.push_back(static_cast<int>(t));
    }
    return out;
}

SnapshotConfig SnapshotConfig::covering(const TemporalEdgeList& list, int delta) {
    return {delta, list.min_year, list.max_year};
}

Adjacency transpose(const Adjacency& adjacency) {
    const std::size_t universe = adjacency.offsets.empty() ? 0 : adjacency.offsets.size() - 1;
    Adjacency t;
    t.offsets.assign(universe + 1, 0);
    for (node v : adjacency.targets)
        ++t.offsets[v + 1];
    for (std::size_t i = 0; i < universe; ++i)
        t.offsets[i + 1] += t.offsets[i];
    t.targets.resize(adjacency.targets.size());
    t.weights.resize(adjacency.weights.size());
    std::vector<std::size_t> cursor(t.offsets.begin(), t.offsets.end() - 1);
    for (node u = 0; u < universe; ++u) {
        for (std::size_t k = adjacency.offsets[u]; k < adjacency.offsets[u + 1]; ++k) {
            const node v = adjacency.targets[k];
            t.targets[cursor[v]] = u;
            t.weights[cursor[v]] = adjacency.weights[k];
            ++cursor[v];
        }
    }
    return t;
}

GraphSnapshot::GraphSnapshot(int t, bool partial, std::size_t universe,
                             std::vector<std::tuple<node, node, std::uint64_t>> edges)
    : t_(t), partial_(partial), present_(universe, 0), local_(universe, 0) {
    std::sort(edges.begin(), edges.end());
    out_.offsets.assign(universe + 1, 0);
    out_.targets.reserve(edges.size());
    out_.weights.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [u, v, w] = edges[i];
        if (u >= universe || v >= universe)
            throw InvalidArgument("edge endpoint outside node universe");
        if (u == v)
            throw InvalidArgument("self-loop in snapshot");
        if (w == 0)
            throw InvalidArgument("zero edge weight in snapshot");
        if (i > 0 && std::get<0>(edges[i - 1]) == u && std::get<1>(edges[i - 1]) == v)
            throw InvalidArgument("duplicate edge in snapshot");
        ++out_.offsets[u + 1];
        out_.targets.push_back(v);
        out_.weights.push_back(w);
        present_[u] = present_[v] = 1;
        total_weight_ += w;
    }
    for (std::size_t i = 0; i < universe; ++i)
        out_.offsets[i + 1] += out_.offsets[i];
    in_ = transpose(out_);
    for (node u = 0; u < universe; ++u) {
        if (present_[u]) {
            local_[u] = nodes_.size();
            nodes_.push_back(u);
        }
    }
}

std::optional<std::uint64_t> GraphSnapshot::weight(node src, node dst) const {
    if (src >= universe())
        return std::nullopt;
    auto targets = out_.neighbors(src);
    auto it = std::lower_bound(targets.begin(), targets.end(), dst);
    if (it == targets.end() || *it != dst)
        return std::nullopt;
    return out_.neighbor_weights(src)[static_cast<std::size_t>(it - targets.begin())];
}

bool GraphSnapshot::operator==(const GraphSnapshot& other) const {
    return t_ == other.t_ && partial_ == other.partial_ && present_ == other.present_ &&
           out_ == other.out_ && in_ == other.in_;
}

std::optional<std::size_t> SnapshotSeries::find(int t) const {
    for (std::size_t i = 0; i < snapshots.size(); ++i)
        if (snapshots[i].t() == t)
            return i;
    return std::nullopt;
}

SnapshotSeries build_snapshots(const TemporalEdgeList& events, const SnapshotConfig& config) {
    if (events.events.empty() || !events.nodes)
        throw DataError("cannot build snapshots from an empty edge list");
    const auto bounds = config.boundaries();
    const bool any_inside = std::any_of(events.events.begin(), events.events.end(), [&](const EdgeEvent& e) {
        return e.year >= config.start_year && e.year <= config.end_year;
    });
    if (!any_inside)
        throw DataError("no events inside [" + std::to_string(config.start_year) + ", " +
                        std::to_string(config.end_year) + "]");

    const long long span = static_cast<long long>(config.end_year) - config.start_year + 1;
    const bool last_partial = span % config.delta != 0;
    const std::size_t universe = events.nodes->size();

    SnapshotSeries series;
    series.nodes = events.nodes;
    series.snapshots.reserve(bounds.size());

    std::map<std::pair<node, node>, std::uint64_t> cumulative;
    std::size_t next = 0;
    for (std::size_t b = 0; b < bounds.size(); ++b) {
        const int t = bounds[b];
        while (next < events.events.size() && events.events[next].year <= t) {
            const auto& e = events.events[next++];
            cumulative[{e.src, e.dst}] += e.weight;
        }
        std::vector<std::tuple<node, node, std::uint64_t>> edges;
        edges.reserve(cumulative.size());
        for (const auto& [key, w] : cumulative)
            edges.emplace_back(key.first, key.second, w);
        series.snapshots.emplace_back(t, last_partial && b + 1 == bounds.size(), universe,
                                      std::move(edges));
    }
    return series;
}

std::vector<SnapshotStats> snapshot_stats(const SnapshotSeries& series) {
    if (series.snapshots.empty())
        throw InvalidArgument("snapshot_stats on an empty series");
    std::vector<SnapshotStats> out;
    out.reserve(series.size());
    for (const auto& s : series.snapshots)
        out.push_back({s.t(), s.partial(), s.node_count(), s.edge_count(), s.total_weight()});
    return out;
}

} // namespace ranksurprise
