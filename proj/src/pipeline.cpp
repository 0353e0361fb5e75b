#include <ranksurprise/pipeline.hpp>

#include <ranksurprise/error.hpp>
#include <ranksurprise/snapshot_cache.hpp>
#include <ranksurprise/text.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace fs = std::filesystem;

namespace ranksurprise {

void RunConfig::validate() const {
    if (input.empty())
        throw InvalidArgument("no input file given (--input)");
    if (delta < 1)
        throw InvalidArgument("--delta must be >= 1");
    if (start_year && end_year && *start_year > *end_year)
        throw InvalidArgument("--start is after --end");
    if (hypotheses.empty())
        throw InvalidArgument("hypothesis set is empty (valid: past_rank, regular_growth, uniform)");
    pagerank.validate();
    Hypothesis{HypothesisKind::past_rank, clamp_epsilon}.validate();
}

TrajectoryOptions RunConfig::trajectory_options() const {
    TrajectoryOptions options;
    options.hypotheses.clear();
    for (auto kind : hypotheses)
        options.hypotheses.push_back({kind, clamp_epsilon});
    options.pagerank = pagerank;
    options.disruption = disruption;
    options.canonicalize();
    return options;
}

std::string RunConfig::config_hash() const {
    const auto options = trajectory_options();
    std::ostringstream s;
    s << "input=" << hash_file(input) << ";delimiter=" << static_cast<int>(ingest.delimiter)
      << ";header=" << static_cast<int>(ingest.header) << ";columns=" << ingest.src_column << ','
      << ingest.dst_column << ',' << ingest.year_column << ',' << ingest.weight_column
      << ";weighted=" << ingest.weighted << ";reverse=" << ingest.reverse_edges << ";delta=" << delta
      << ";start=" << (start_year ? std::to_string(*start_year) : "auto")
      << ";end=" << (end_year ? std::to_string(*end_year) : "auto") << ";damping=" << format_double(pagerank.damping)
      << ";tolerance=" << format_double(pagerank.tolerance) << ";max_iterations=" << pagerank.max_iterations
      << ";bypass=" << disruption.include_bypass << ";eps=" << format_double(clamp_epsilon) << ";hypotheses=";
    for (const auto& h : options.hypotheses)
        s << to_string(h.kind) << ',';
    s << ";format=" << static_cast<int>(format) << ";dataset=" << dataset;
    return hex64(fnv1a64(s.str()));
}

namespace {

std::string cache_path(const RunConfig& config) {
    return (fs::path(config.out_dir) / "snapshots.cache.json").string();
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write '" + path.string() + "'");
    return out;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw DataError("cannot create output directory '" + dir + "': " + ec.message());
}

SnapshotCacheKey cache_key(const RunConfig& config, const SnapshotConfig& snapshot) {
    return {hash_file(config.input), snapshot, config.ingest.reverse_edges, config.ingest.weighted};
}

} // namespace

Prepared prepare(const RunConfig& config) {
    config.validate();
    Prepared p;
    p.events = ingest_edge_list(config.input, config.ingest);
    if (p.events.events.empty())
        throw DataError(config.input + ": no usable edges after removing self-loops");
    p.snapshot = {config.delta, config.start_year.value_or(p.events.min_year),
                  config.end_year.value_or(p.events.max_year)};
    p.snapshot.validate();
    if (auto cached = load_matching_cache(cache_path(config), cache_key(config, p.snapshot))) {
        p.series = std::move(cached->series);
        p.from_cache = true;
    } else {
        p.series = build_snapshots(p.events, p.snapshot);
    }
    return p;
}

std::vector<SnapshotStats> cmd_snapshot(const RunConfig& config, std::ostream& log) {
    const Prepared p = prepare(config);
    const auto stats = snapshot_stats(p.series);
    ensure_dir(config.out_dir);

    const ArtifactMeta meta{"snapshot-stats-v1", config.config_hash()};
    auto csv = open_output(fs::path(config.out_dir) / "snapshot_stats.csv");
    csv << meta.header_line() << '\n' << "t,partial,nodes,edges,total_weight\n";
    for (const auto& s : stats)
        csv << s.t << ',' << (s.partial ? "true" : "false") << ',' << s.nodes << ',' << s.edges << ','
            << s.total_weight << '\n';
    auto cache = open_output(cache_path(config));
    write_snapshot_cache(cache, cache_key(config, p.snapshot), p.events, p.series);

    const auto& r = p.events.report;
    log << "rows=" << r.rows_read << " self_loops_dropped=" << r.self_loops_dropped
        << " duplicates_merged=" << r.duplicates_merged << " out_of_range_skipped=" << r.out_of_range_skipped
        << '\n';
    log << "t\tnodes\tedges\ttotal_weight\n";
    for (const auto& s : stats)
        log << s.t << (s.partial ? "*" : "") << '\t' << s.nodes << '\t' << s.edges << '\t' << s.total_weight
            << '\n';
    if (!stats.empty() && stats.back().partial)
        log << "* partial final period\n";
    return stats;
}

AnalyzeSummary cmd_analyze(const RunConfig& config, std::ostream& log) {
    TrajectoryResult result;
    return cmd_analyze(config, log, result);
}

AnalyzeSummary cmd_analyze(const RunConfig& config, std::ostream& log, TrajectoryResult& result) {
    const Prepared p = prepare(config);
    if (p.series.size() < 2)
        throw DataError("insufficient snapshots: analysis needs at least 2, got " + std::to_string(p.series.size()));
    result = trajectories(p.series, config.trajectory_options());
    ensure_dir(config.out_dir);

    const std::string hash = config.config_hash();
    const fs::path dir(config.out_dir);
    AnalyzeSummary summary;
    summary.snapshots = p.series.size();
    summary.nodes = p.series.snapshots.back().node_count();
    summary.points = result.points.size();

    auto emit = [&](const std::string& name, auto&& writer) {
        auto out = open_output(dir / name);
        writer(out);
        summary.files.push_back(name);
    };
    if (config.format == OutputFormat::csv)
        emit("trajectories.csv",
             [&](std::ostream& o) { write_trajectories_csv(o, result, {"trajectory-v1", hash}); });
    else
        emit("trajectories.json",
             [&](std::ostream& o) { write_trajectories_json(o, result, {"trajectory-v1", hash}); });
    emit("positions.csv", [&](std::ostream& o) { write_positions(o, result, {"positions-v1", hash}); });
    emit("scatter.csv", [&](std::ostream& o) { write_scatter(o, result, {"scatter-v1", hash}); });

    const std::string dataset = config.dataset.empty() ? fs::path(config.input).stem().string() : config.dataset;
    const auto rows = correlations(result, dataset);
    emit("correlations.csv", [&](std::ostream& o) {
        o << ArtifactMeta{"correlation-v1", hash}.header_line() << '\n';
        write_correlation_report(o, rows);
    });
    for (const auto& label : config.plot_nodes) {
        const auto id = result.nodes->find(label);
        if (!id)
            throw InvalidArgument("--plot-node: unknown node '" + label + "'");
        std::string safe;
        for (char c : label)
            safe += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
        emit("plot_" + safe + ".svg", [&](std::ostream& o) { write_svg_trajectory(o, result, *id); });
    }

    log << "snapshots=" << summary.snapshots << " nodes=" << summary.nodes << " points=" << summary.points
        << (p.from_cache ? " (snapshot cache hit)" : "") << '\n';
    for (std::size_t m = 0; m < result.scores.size(); ++m)
        for (const auto& table : result.scores[m])
            if (!table.converged)
                log << "warning: pagerank did not converge at t=" << table.t << '\n';
    for (const auto& f : summary.files)
        log << "wrote " << (dir / f).string() << '\n';
    return summary;
}

SimulateSummary cmd_simulate(const SynthConfig& synth, RunConfig config, std::ostream& log) {
    SimulateSummary summary;
    summary.data = generate(synth);
    ensure_dir(config.out_dir);
    const fs::path dir(config.out_dir);

    std::ostringstream meta_json;
    write_synth_metadata(meta_json, synth, summary.data);
    const std::string synth_hash = hex64(fnv1a64(meta_json.str()));
    {
        auto out = open_output(dir / "edges.csv");
        out << ArtifactMeta{"edges-v1", synth_hash}.header_line() << '\n';
        write_edge_list(out, summary.data.edges);
    }
    {
        auto out = open_output(dir / "synth.json");
        out << meta_json.str();
    }

    config.input = (dir / "edges.csv").string();
    config.ingest = IngestOptions{};
    config.delta = 1;
    config.start_year = synth.year_of(1);
    config.end_year = synth.year_of(synth.steps);
    if (config.dataset.empty())
        config.dataset = "synth";
    TrajectoryResult result;
    summary.analysis = cmd_analyze(config, log, result);

    if (summary.data.shock) {
        summary.shock = shock_report(result, summary.data.shock->target, summary.data.shock->year);
        const auto& r = *summary.shock;
        nlohmann::ordered_json j;
        j["meta"] = {{"tool", tool_name}, {"version", tool_version}, {"format", "shock-report-v1"},
                     {"config", config.config_hash()}};
        j["target"] = r.target;
        j["shock_t"] = r.shock_t;
        j["prior_in_degree"] = summary.data.shock->prior_in_degree;
        j["burst_edges"] = summary.data.shock->burst_edges;
        j["detectable"] = r.detectable;
        j["reason"] = r.reason;
        j["target_bits"] = r.target_bits;
        j["target_rank"] = r.target_rank;
        j["target_steps"] = r.target_steps;
        j["target_is_argmax"] = r.target_is_argmax;
        j["control_count"] = r.control_count;
        j["control_p90"] = r.control_p90;
        j["control_mean_rank"] = r.control_mean_rank;
        j["control_argmax_share"] = r.control_argmax_share;
        j["exceeds_control_p90"] = r.exceeds_control_p90;
        j["distinguishable"] = r.distinguishable;
        auto out = open_output(dir / "shock_report.json");
        out << j.dump(2) << '\n';
        summary.analysis.files.push_back("shock_report.json");

        log << "shock target " << r.target << " at t=" << r.shock_t;
        if (!r.detectable) {
            log << ": undetectable (" << r.reason << ")\n";
        } else {
            log << ": " << format_double(r.target_bits) << " bits, rank " << r.target_rank << " of "
                << r.target_steps << " steps; control p90 " << format_double(r.control_p90) << " bits; "
                << (r.distinguishable ? "detected" : "not distinguishable") << '\n';
        }
    }
    return summary;
}

std::vector<PositionRow> cmd_top(const std::string& out_dir, const std::string& measure, int t, std::size_t k,
                                 std::ostream& out) {
    if (!parse_measure(measure))
        throw InvalidArgument("unknown measure '" + measure + "' (valid: pagerank, disruption)");
    const fs::path path = fs::path(out_dir) / "positions.csv";
    std::ifstream in(path);
    if (!in)
        throw DataError("no analysis artifacts: cannot open '" + path.string() + "' (run analyze first)");
    const auto rows = top_k(read_positions(in, path.string()), measure, t, k);

    out << "node\tscore\tg\tx";
    if (!rows.empty())
        for (const auto& [name, value] : rows.front().surprise)
            out << '\t' << name;
    out << "\tbits_" << measure << '\n';
    for (const auto& r : rows) {
        out << r.node << '\t' << format_double(r.score) << '\t' << r.g << '\t' << format_double(r.x);
        for (const auto& [name, value] : r.surprise)
            out << '\t' << (value ? format_double(*value) : std::string("-"));
        out << '\t' << format_double(r.total_bits) << '\n';
    }
    return rows;
}

} // namespace ranksurprise
