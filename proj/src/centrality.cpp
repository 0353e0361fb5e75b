#include <ranksurprise/centrality.hpp>

#include <ranksurprise/error.hpp>
#include <ranksurprise/parallel.hpp>
#include <ranksurprise/text.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace ranksurprise {

std::string_view to_string(Measure m) {
    switch (m) {
    case Measure::pagerank:
        return "pagerank";
    case Measure::disruption:
        return "disruption";
    }
    return "unknown";
}

std::optional<Measure> parse_measure(std::string_view name) {
    if (name == "pagerank")
        return Measure::pagerank;
    if (name == "disruption")
        return Measure::disruption;
    return std::nullopt;
}

std::optional<double> ScoreTable::score_of(node u) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), u);
    if (it == nodes.end() || *it != u)
        return std::nullopt;
    return scores[static_cast<std::size_t>(it - nodes.begin())];
}

void PagerankConfig::validate() const {
    if (!(damping > 0.0 && damping < 1.0))
        throw InvalidArgument("pagerank damping must lie in (0, 1)");
    if (!(tolerance > 0.0))
        throw InvalidArgument("pagerank tolerance must be positive");
    if (max_iterations == 0)
        throw InvalidArgument("pagerank max_iterations must be positive");
}

namespace {

ScoreTable empty_table(const GraphSnapshot& snapshot, Measure m) {
    ScoreTable table;
    table.t = snapshot.t();
    table.measure = m;
    table.nodes.assign(snapshot.nodes().begin(), snapshot.nodes().end());
    table.scores.assign(table.nodes.size(), 0.0);
    return table;
}

void require_nonempty(const GraphSnapshot& snapshot, std::string_view what) {
    if (snapshot.empty())
        throw DataError(std::string(what) + " on empty snapshot t=" + std::to_string(snapshot.t()));
}

// Per-thread scratch for disruption; stamps avoid clearing between focal nodes.
struct DisruptionScratch {
    explicit DisruptionScratch(std::size_t universe)
        : influence(universe, 0), citer(universe, 0), seen(universe, 0) {}

    std::vector<std::uint32_t> influence;
    std::vector<std::uint32_t> citer;
    std::vector<std::uint32_t> seen;
    std::uint32_t stamp = 0;
};

DisruptionCounts count_groups(const GraphSnapshot& g, node focal, DisruptionScratch& scratch) {
    const std::uint32_t stamp = ++scratch.stamp;
    const auto& out = g.out_edges();
    const auto& in = g.in_edges();
    for (node i : out.neighbors(focal))
        scratch.influence[i] = stamp;
    for (node c : in.neighbors(focal))
        scratch.citer[c] = stamp;

    DisruptionCounts counts;
    for (node c : in.neighbors(focal)) {
        const auto cited = out.neighbors(c);
        const bool cites_influence = std::any_of(cited.begin(), cited.end(),
                                                 [&](node v) { return scratch.influence[v] == stamp; });
        ++(cites_influence ? counts.both : counts.only);
    }
    for (node i : out.neighbors(focal)) {
        for (node v : in.neighbors(i)) {
            if (v == focal || scratch.citer[v] == stamp || scratch.seen[v] == stamp)
                continue;
            scratch.seen[v] = stamp;
            ++counts.bypass;
        }
    }
    return counts;
}

double disruption_value(const DisruptionCounts& c, const DisruptionOptions& options) {
    const std::size_t denominator = c.only + c.both + (options.include_bypass ? c.bypass : 0);
    if (denominator == 0)
        return 0.0;
    return (static_cast<double>(c.only) - static_cast<double>(c.both)) / static_cast<double>(denominator);
}

void require_focal(const GraphSnapshot& snapshot, node focal) {
    if (!snapshot.contains(focal))
        throw InvalidArgument("node " + std::to_string(focal) + " is not in snapshot t=" +
                              std::to_string(snapshot.t()));
}

// Local (dense 0..n-1) in-adjacency with transition probabilities.
struct TransitionMatrix {
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> sources;
    std::vector<double> probability;
    std::vector<std::size_t> dangling;
};

TransitionMatrix pull_matrix(const GraphSnapshot& g) {
    const auto nodes = g.nodes();
    const std::size_t n = nodes.size();
    std::vector<double> out_weight(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto w : g.out_edges().neighbor_weights(nodes[i]))
            out_weight[i] += static_cast<double>(w);
    }
    TransitionMatrix m;
    m.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        m.offsets[i + 1] = m.offsets[i] + g.in_edges().degree(nodes[i]);
        if (out_weight[i] == 0.0)
            m.dangling.push_back(i);
    }
    m.sources.resize(m.offsets[n]);
    m.probability.resize(m.offsets[n]);
    for (std::size_t i = 0; i < n; ++i) {
        const auto src = g.in_edges().neighbors(nodes[i]);
        const auto w = g.in_edges().neighbor_weights(nodes[i]);
        for (std::size_t k = 0; k < src.size(); ++k) {
            const std::size_t u = g.local_index(src[k]);
            m.sources[m.offsets[i] + k] = u;
            m.probability[m.offsets[i] + k] = static_cast<double>(w[k]) / out_weight[u];
        }
    }
    return m;
}

void normalize(std::vector<double>& scores) {
    const double total = deterministic_sum(scores);
    for (double& s : scores)
        s /= total;
}

} // namespace

ScoreTable pagerank(const GraphSnapshot& snapshot, const PagerankConfig& config) {
    config.validate();
    require_nonempty(snapshot, "pagerank");
    ScoreTable table = empty_table(snapshot, Measure::pagerank);
    const std::size_t n = table.nodes.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    const double d = config.damping;
    const TransitionMatrix m = pull_matrix(snapshot);

    std::vector<double> rank(n, inv_n);
    std::vector<double> next(n, 0.0);
    std::vector<double> dangling_mass(m.dangling.size());
    std::vector<double> change(n);
    const auto sn = static_cast<std::ptrdiff_t>(n);
    const auto sd = static_cast<std::ptrdiff_t>(m.dangling.size());

    table.converged = false;
    while (table.iterations < config.max_iterations) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < sd; ++k)
            dangling_mass[static_cast<std::size_t>(k)] = rank[m.dangling[static_cast<std::size_t>(k)]];
        const double base = (1.0 - d) * inv_n + d * deterministic_sum(dangling_mass) * inv_n;

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t iv = 0; iv < sn; ++iv) {
            const auto v = static_cast<std::size_t>(iv);
            double s = 0.0;
            for (std::size_t k = m.offsets[v]; k < m.offsets[v + 1]; ++k)
                s += rank[m.sources[k]] * m.probability[k];
            next[v] = base + d * s;
            change[v] = std::abs(next[v] - rank[v]);
        }
        rank.swap(next);
        ++table.iterations;
        if (deterministic_sum(change) < config.tolerance) {
            table.converged = true;
            break;
        }
    }
    normalize(rank);
    table.scores = std::move(rank);
    return table;
}

DisruptionCounts disruption_counts(const GraphSnapshot& snapshot, node focal) {
    require_focal(snapshot, focal);
    DisruptionScratch scratch(snapshot.universe());
    return count_groups(snapshot, focal, scratch);
}

double disruption(const GraphSnapshot& snapshot, node focal, const DisruptionOptions& options) {
    return disruption_value(disruption_counts(snapshot, focal), options);
}

ScoreTable disruption_all(const GraphSnapshot& snapshot, const DisruptionOptions& options) {
    require_nonempty(snapshot, "disruption");
    ScoreTable table = empty_table(snapshot, Measure::disruption);
    const auto n = static_cast<std::ptrdiff_t>(table.nodes.size());
#pragma omp parallel
    {
        DisruptionScratch scratch(snapshot.universe());
#pragma omp for schedule(dynamic, 64)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            table.scores[k] = disruption_value(count_groups(snapshot, table.nodes[k], scratch), options);
        }
    }
    return table;
}

void write_score_table(std::ostream& out, const ScoreTable& table, const NodeDictionary& nodes) {
    out << "# t=" << table.t << ",measure=" << to_string(table.measure)
        << ",converged=" << (table.converged ? "true" : "false") << ",iterations=" << table.iterations
        << '\n';
    out << "node,score\n";
    for (std::size_t i = 0; i < table.size(); ++i)
        out << csv_field(nodes.label(table.nodes[i]), ',') << ',' << format_double(table.scores[i]) << '\n';
}

namespace serial {

ScoreTable pagerank(const GraphSnapshot& snapshot, const PagerankConfig& config) {
    config.validate();
    require_nonempty(snapshot, "pagerank");
    ScoreTable table = empty_table(snapshot, Measure::pagerank);
    const auto nodes = snapshot.nodes();
    const std::size_t n = nodes.size();
    const double d = config.damping;

    std::vector<double> out_weight(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (auto w : snapshot.out_edges().neighbor_weights(nodes[i]))
            out_weight[i] += static_cast<double>(w);

    std::vector<double> rank(n, 1.0 / static_cast<double>(n));
    table.converged = false;
    while (table.iterations < config.max_iterations) {
        std::vector<double> next(n, 0.0);
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (out_weight[i] == 0.0) {
                dangling += rank[i];
                continue;
            }
            const auto targets = snapshot.out_edges().neighbors(nodes[i]);
            const auto weights = snapshot.out_edges().neighbor_weights(nodes[i]);
            for (std::size_t k = 0; k < targets.size(); ++k)
                next[snapshot.local_index(targets[k])] +=
                    d * rank[i] * static_cast<double>(weights[k]) / out_weight[i];
        }
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] += (1.0 - d) / static_cast<double>(n) + d * dangling / static_cast<double>(n);
            diff += std::abs(next[i] - rank[i]);
        }
        rank = std::move(next);
        ++table.iterations;
        if (diff < config.tolerance) {
            table.converged = true;
            break;
        }
    }
    double total = 0.0;
    for (double r : rank)
        total += r;
    for (double& r : rank)
        r /= total;
    table.scores = std::move(rank);
    return table;
}

ScoreTable disruption_all(const GraphSnapshot& snapshot, const DisruptionOptions& options) {
    require_nonempty(snapshot, "disruption");
    ScoreTable table = empty_table(snapshot, Measure::disruption);
    for (std::size_t i = 0; i < table.size(); ++i)
        table.scores[i] = disruption(snapshot, table.nodes[i], options);
    return table;
}

} // namespace serial

} // namespace ranksurprise
