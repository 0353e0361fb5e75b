#include <ranksurprise/report.hpp>

#include <ranksurprise/error.hpp>
#include <ranksurprise/text.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>

namespace ranksurprise {

std::string ArtifactMeta::header_line() const {
    return "# " + std::string(tool_name) + " " + std::string(tool_version) + " format=" + format +
           " config=" + config_hash;
}

std::vector<std::string> trajectory_columns(const TrajectoryOptions& options) {
    std::vector<std::string> columns{"node", "t"};
    for (auto m : options.measures)
        columns.push_back("x_" + std::string(to_string(m)));
    for (auto m : options.measures)
        for (const auto& h : options.hypotheses)
            columns.push_back("kl_" + std::string(to_string(m)) + "_" + std::string(to_string(h.kind)));
    columns.emplace_back("total_bits");
    columns.emplace_back("flags");
    return columns;
}

namespace {

std::string optional_number(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += ',';
        out += parts[i];
    }
    return out;
}

} // namespace

void write_trajectories_csv(std::ostream& out, const TrajectoryResult& result, const ArtifactMeta& meta) {
    out << meta.header_line() << '\n' << join(trajectory_columns(result.options)) << '\n';
    for (const auto& p : result.points) {
        out << csv_field(result.nodes->label(p.id), ',') << ',' << p.t;
        for (const auto& pos : p.positions)
            out << ',' << (pos ? format_double(pos->x()) : std::string());
        for (const auto& kl : p.kl_bits)
            out << ',' << optional_number(kl);
        out << ',' << format_double(p.total_bits) << ',' << (p.no_evidence ? "no_evidence" : "") << '\n';
    }
}

void write_trajectories_json(std::ostream& out, const TrajectoryResult& result, const ArtifactMeta& meta) {
    const auto columns = trajectory_columns(result.options);
    nlohmann::ordered_json j;
    j["meta"] = {{"tool", tool_name},
                 {"version", tool_version},
                 {"format", meta.format},
                 {"config", meta.config_hash}};
    j["columns"] = columns;
    auto& records = j["records"] = nlohmann::ordered_json::array();
    for (const auto& p : result.points) {
        nlohmann::ordered_json r;
        std::size_t c = 0;
        r[columns[c++]] = result.nodes->label(p.id);
        r[columns[c++]] = p.t;
        for (const auto& pos : p.positions)
            r[columns[c++]] = pos ? nlohmann::ordered_json(pos->x()) : nlohmann::ordered_json(nullptr);
        for (const auto& kl : p.kl_bits)
            r[columns[c++]] = kl ? nlohmann::ordered_json(*kl) : nlohmann::ordered_json(nullptr);
        r[columns[c++]] = p.total_bits;
        r[columns[c++]] = p.no_evidence ? "no_evidence" : "";
        records.push_back(std::move(r));
    }
    out << j.dump(1) << '\n';
}

void write_positions(std::ostream& out, const TrajectoryResult& result, const ArtifactMeta& meta) {
    out << meta.header_line() << '\n' << "node,t,measure,score,g,n,x,one_minus_x";
    for (const auto& h : result.options.hypotheses)
        out << ",kl_" << to_string(h.kind);
    out << ",total_bits\n";
    for (const auto& p : result.points) {
        const std::size_t s = static_cast<std::size_t>(
            std::find(result.times.begin(), result.times.end(), p.t) - result.times.begin());
        for (std::size_t m = 0; m < result.options.measures.size(); ++m) {
            const auto& pos = p.positions[m];
            if (!pos)
                continue;
            const auto score = result.scores[m][s].score_of(p.id);
            out << csv_field(result.nodes->label(p.id), ',') << ',' << p.t << ','
                << to_string(result.options.measures[m]) << ',' << format_double(score.value_or(NAN)) << ','
                << pos->g << ',' << pos->n << ',' << format_double(pos->x()) << ','
                << format_double(1.0 - pos->x());
            double measure_total = 0.0;
            for (std::size_t h = 0; h < result.options.hypotheses.size(); ++h) {
                const auto& kl = p.kl_bits[result.kl_index(m, h)];
                out << ',' << optional_number(kl);
                measure_total += kl.value_or(0.0);
            }
            out << ',' << format_double(measure_total) << '\n';
        }
    }
}

void write_scatter(std::ostream& out, const TrajectoryResult& result, const ArtifactMeta& meta) {
    const auto pr = result.measure_index(Measure::pagerank);
    const auto dr = result.measure_index(Measure::disruption);
    auto x_of = [](const TrajectoryPoint& p, std::optional<std::size_t> m) {
        return (m && p.positions[*m]) ? format_double(p.positions[*m]->x()) : std::string();
    };
    out << meta.header_line() << '\n' << "node,t,x_pagerank,x_disruption,total_bits\n";
    for (const auto& p : result.points)
        out << csv_field(result.nodes->label(p.id), ',') << ',' << p.t << ',' << x_of(p, pr) << ','
            << x_of(p, dr) << ',' << format_double(p.total_bits) << '\n';
}

void write_svg_trajectory(std::ostream& out, const TrajectoryResult& result, node id) {
    const auto pr = result.measure_index(Measure::pagerank);
    const auto dr = result.measure_index(Measure::disruption);
    if (!pr || !dr)
        throw InvalidArgument("trajectory plot needs both pagerank and disruption");
    const auto points = result.trajectory(id);
    double max_bits = 0.0;
    for (const auto& p : result.points)
        max_bits = std::max(max_bits, p.total_bits);

    constexpr double size = 400.0, margin = 40.0, span = size - 2 * margin;
    auto px = [&](double v) { return margin + v * span; };
    auto py = [&](double v) { return size - margin - v * span; };
    auto fmt = [](double v) { return format_double(std::round(v * 100.0) / 100.0); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
    out << "<title>" << result.nodes->label(id) << "</title>\n";
    out << "<rect x=\"40\" y=\"40\" width=\"320\" height=\"320\" fill=\"none\" stroke=\"#888\"/>\n";
    out << "<text x=\"200\" y=\"390\" text-anchor=\"middle\" font-size=\"12\">1 - x (pagerank)</text>\n";
    out << "<text x=\"12\" y=\"200\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 12 200)\">"
           "1 - x (disruption)</text>\n";
    std::string path;
    for (const auto& p : points) {
        if (!p.positions[*pr] || !p.positions[*dr])
            continue;
        path += (path.empty() ? "M" : " L") + fmt(px(1.0 - p.positions[*pr]->x())) + " " +
                fmt(py(1.0 - p.positions[*dr]->x()));
    }
    if (!path.empty())
        out << "<path d=\"" << path << "\" fill=\"none\" stroke=\"#555\"/>\n";
    for (const auto& p : points) {
        if (!p.positions[*pr] || !p.positions[*dr])
            continue;
        const double radius = 2.0 + (max_bits > 0.0 ? 12.0 * std::sqrt(p.total_bits / max_bits) : 0.0);
        out << "<circle cx=\"" << fmt(px(1.0 - p.positions[*pr]->x())) << "\" cy=\""
            << fmt(py(1.0 - p.positions[*dr]->x())) << "\" r=\"" << fmt(radius)
            << "\" fill=\"#d62728\" fill-opacity=\"0.5\"><title>t=" << p.t
            << " bits=" << format_double(p.total_bits) << "</title></circle>\n";
    }
    out << "</svg>\n";
}

std::vector<CorrelationRow> correlations(const TrajectoryResult& result, const std::string& dataset) {
    const auto pr = result.measure_index(Measure::pagerank);
    const auto dr = result.measure_index(Measure::disruption);
    if (!pr || !dr)
        throw InvalidArgument("correlations need both pagerank and disruption");
    std::vector<CorrelationRow> rows;
    for (std::size_t s = 0; s < result.times.size(); ++s) {
        CorrelationRow row{dataset, result.times[s], std::nullopt, std::nullopt};
        const auto& a = result.scores[*pr][s];
        const auto& b = result.scores[*dr][s];
        try {
            row.kendall = kendall_tau(a, b);
            row.spearman = spearman_rho(a, b);
        } catch (const Error&) {
            row.kendall.reset();
            row.spearman.reset();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

double parse_double(const std::string& field, const std::string& source, std::size_t line) {
    const auto s = trim(field);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(source, line, "not a number: '" + field + "'");
    return v;
}

long long parse_integer(const std::string& field, const std::string& source, std::size_t line) {
    const auto s = trim(field);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(source, line, "not an integer: '" + field + "'");
    return v;
}

} // namespace

std::vector<PositionRow> read_positions(std::istream& in, const std::string& source) {
    std::vector<PositionRow> rows;
    std::vector<std::string> header;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        auto fields = split_delimited(view, ',');
        if (header.empty()) {
            header = std::move(fields);
            if (header.size() < 9 || header[0] != "node" || header.back() != "total_bits")
                throw ParseError(source, line_no, "not a positions table");
            continue;
        }
        if (fields.size() != header.size())
            throw ParseError(source, line_no, "expected " + std::to_string(header.size()) + " columns");
        PositionRow r;
        r.node = fields[0];
        r.t = static_cast<int>(parse_integer(fields[1], source, line_no));
        r.measure = fields[2];
        r.score = parse_double(fields[3], source, line_no);
        r.g = static_cast<std::uint32_t>(parse_integer(fields[4], source, line_no));
        r.n = static_cast<std::uint32_t>(parse_integer(fields[5], source, line_no));
        r.x = parse_double(fields[6], source, line_no);
        for (std::size_t c = 8; c + 1 < header.size(); ++c) {
            std::optional<double> v;
            if (!trim(fields[c]).empty())
                v = parse_double(fields[c], source, line_no);
            r.surprise.emplace_back(header[c], v);
        }
        r.total_bits = parse_double(fields.back(), source, line_no);
        rows.push_back(std::move(r));
    }
    if (header.empty())
        throw DataError(source + ": empty positions table");
    return rows;
}

std::vector<PositionRow> top_k(const std::vector<PositionRow>& rows, const std::string& measure, int t,
                               std::size_t k) {
    std::vector<PositionRow> selected;
    std::set<int> available;
    for (const auto& r : rows) {
        if (r.measure != measure)
            continue;
        available.insert(r.t);
        if (r.t == t)
            selected.push_back(r);
    }
    if (available.empty())
        throw InvalidArgument("no rows for measure '" + measure + "'");
    if (selected.empty()) {
        std::string list;
        for (int v : available)
            list += (list.empty() ? "" : ", ") + std::to_string(v);
        throw InvalidArgument("t=" + std::to_string(t) + " is not a snapshot (available: " + list + ")");
    }
    std::sort(selected.begin(), selected.end(), [](const PositionRow& a, const PositionRow& b) {
        if (a.g != b.g)
            return a.g < b.g;
        return a.node < b.node;
    });
    if (k == 0)
        return {};
    if (k < selected.size()) {
        const auto cutoff = selected[k - 1].g;
        std::size_t end = k;
        while (end < selected.size() && selected[end].g == cutoff)
            ++end;
        selected.resize(end);
    }
    return selected;
}

} // namespace ranksurprise
