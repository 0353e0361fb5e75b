#include <ranksurprise/surprise.hpp>

#include <ranksurprise/error.hpp>
#include <ranksurprise/special_functions.hpp>
#include <ranksurprise/text.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

namespace ranksurprise {

void BetaParams::validate() const {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw InvalidArgument("Beta parameters must be finite and positive, got (" + format_double(alpha) +
                              ", " + format_double(beta) + ")");
}

std::string_view to_string(HypothesisKind kind) {
    switch (kind) {
    case HypothesisKind::past_rank:
        return "past_rank";
    case HypothesisKind::regular_growth:
        return "regular_growth";
    case HypothesisKind::uniform:
        return "uniform";
    }
    return "unknown";
}

std::optional<HypothesisKind> parse_hypothesis(std::string_view name) {
    for (auto kind : {HypothesisKind::past_rank, HypothesisKind::regular_growth, HypothesisKind::uniform})
        if (name == to_string(kind))
            return kind;
    return std::nullopt;
}

std::vector<HypothesisKind> parse_hypothesis_list(std::string_view names) {
    std::vector<HypothesisKind> out;
    for (const auto& field : split_delimited(names, ',')) {
        const auto name = trim(field);
        if (name.empty())
            continue;
        auto kind = parse_hypothesis(name);
        if (!kind)
            throw InvalidArgument("unknown hypothesis '" + std::string(name) +
                                  "' (valid: past_rank, regular_growth, uniform)");
        out.push_back(*kind);
    }
    if (out.empty())
        throw InvalidArgument("hypothesis set is empty (valid: past_rank, regular_growth, uniform)");
    return out;
}

void Hypothesis::validate() const {
    if (!(clamp_epsilon > 0.0 && clamp_epsilon < 1.0))
        throw InvalidArgument("clamp_epsilon must lie in (0, 1)");
}

BetaParams posterior_update(const BetaParams& prior, std::uint32_t g, std::uint32_t n) {
    prior.validate();
    if (g < 1 || g > n)
        throw InvalidArgument("posterior_update requires 1 <= g <= n, got g=" + std::to_string(g) +
                              ", n=" + std::to_string(n));
    return {prior.alpha + g, prior.beta + (n - g)};
}

double kl_beta(const BetaParams& p, const BetaParams& q) {
    p.validate();
    q.validate();
    const double lb_p = log_beta(p.alpha, p.beta);
    const double lb_q = log_beta(q.alpha, q.beta);
    if (!std::isfinite(lb_p) || !std::isfinite(lb_q))
        throw NumericError("log-gamma overflow in kl_beta for posterior (" + format_double(p.alpha) + ", " +
                           format_double(p.beta) + "), prior (" + format_double(q.alpha) + ", " +
                           format_double(q.beta) + ")");
    const double nats = (lb_q - lb_p) + (p.alpha - q.alpha) * digamma(p.alpha) +
                        (p.beta - q.beta) * digamma(p.beta) +
                        (q.alpha - p.alpha + q.beta - p.beta) * digamma(p.alpha + p.beta);
    if (!std::isfinite(nats))
        throw NumericError("non-finite KL divergence for posterior (" + format_double(p.alpha) + ", " +
                           format_double(p.beta) + "), prior (" + format_double(q.alpha) + ", " +
                           format_double(q.beta) + ")");
    // Rounding can leave a tiny negative residue for near-identical arguments.
    return std::max(0.0, nats) / std::numbers::ln2;
}

namespace {

void require_rank(std::uint32_t g, std::uint32_t n, const char* what) {
    if (g < 1 || g > n)
        throw InvalidArgument(std::string(what) + " requires 1 <= g <= n, got g=" + std::to_string(g) +
                              ", n=" + std::to_string(n));
}

void require_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidArgument("clamp epsilon must lie in (0, 1)");
}

} // namespace

BetaParams past_rank_prior(std::uint32_t g_prev, std::uint32_t n_prev, double eps) {
    require_rank(g_prev, n_prev, "past_rank_prior");
    require_eps(eps);
    return {std::max(static_cast<double>(g_prev), eps), std::max(static_cast<double>(n_prev - g_prev), eps)};
}

BetaParams regular_growth_prior(std::uint32_t g_prev, std::uint32_t g_prev2, std::uint32_t n_prev,
                                double eps) {
    require_rank(g_prev, n_prev, "regular_growth_prior");
    require_eps(eps);
    if (g_prev2 < 1)
        throw InvalidArgument("regular_growth_prior requires g_prev2 >= 1");
    const double n = static_cast<double>(n_prev);
    const double raw = static_cast<double>(g_prev) * static_cast<double>(g_prev) / static_cast<double>(g_prev2);
    const double alpha = std::clamp(raw, eps, n);
    return {alpha, std::max(n - alpha, eps)};
}

std::optional<BetaParams> make_prior(const Hypothesis& hypothesis, std::optional<RankPosition> prev,
                                     std::optional<RankPosition> prev2) {
    switch (hypothesis.kind) {
    case HypothesisKind::past_rank:
        if (!prev)
            return std::nullopt;
        return past_rank_prior(prev->g, prev->n, hypothesis.clamp_epsilon);
    case HypothesisKind::regular_growth:
        if (!prev || !prev2)
            return std::nullopt;
        return regular_growth_prior(prev->g, prev2->g, prev->n, hypothesis.clamp_epsilon);
    case HypothesisKind::uniform:
        return BetaParams{1.0, 1.0};
    }
    return std::nullopt;
}

std::vector<SurpriseRecord> node_surprise(std::span<const RankTable> history, std::size_t index, node id,
                                          std::span<const Hypothesis> hypotheses) {
    if (index >= history.size())
        throw InvalidArgument("snapshot index out of range in node_surprise");
    const RankTable& now = history[index];
    const auto current = now.position_of(id);
    if (!current)
        throw InvalidArgument("node " + std::to_string(id) + " is not ranked at t=" + std::to_string(now.t));
    const auto prev = index >= 1 ? history[index - 1].position_of(id) : std::nullopt;
    const auto prev2 = index >= 2 ? history[index - 2].position_of(id) : std::nullopt;

    std::vector<SurpriseRecord> records;
    records.reserve(hypotheses.size());
    for (const auto& h : hypotheses) {
        SurpriseRecord r;
        r.id = id;
        r.t = now.t;
        r.measure = now.measure;
        r.hypothesis = h.kind;
        r.prior = make_prior(h, prev, prev2);
        if (r.prior) {
            r.posterior = posterior_update(*r.prior, current->g, current->n);
            r.kl_bits = kl_beta(*r.posterior, *r.prior);
            r.applicable = true;
        }
        records.push_back(r);
    }
    return records;
}

TotalSurprise total_surprise(std::span<const SurpriseRecord> records) {
    TotalSurprise total;
    for (const auto& r : records) {
        if (r.id != records.front().id || r.t != records.front().t)
            throw InvalidArgument("total_surprise records must share node and snapshot");
        if (r.applicable && r.kl_bits) {
            total.bits += *r.kl_bits;
            total.no_evidence = false;
        }
    }
    return total;
}

void TrajectoryOptions::canonicalize() {
    std::sort(measures.begin(), measures.end());
    measures.erase(std::unique(measures.begin(), measures.end()), measures.end());
    std::stable_sort(hypotheses.begin(), hypotheses.end(),
                     [](const Hypothesis& a, const Hypothesis& b) { return a.kind < b.kind; });
    hypotheses.erase(std::unique(hypotheses.begin(), hypotheses.end(),
                                 [](const Hypothesis& a, const Hypothesis& b) { return a.kind == b.kind; }),
                     hypotheses.end());
    if (measures.empty())
        throw InvalidArgument("no centrality measure selected");
    if (hypotheses.empty())
        throw InvalidArgument("hypothesis set is empty (valid: past_rank, regular_growth, uniform)");
    for (const auto& h : hypotheses)
        h.validate();
    pagerank.validate();
}

std::optional<std::size_t> TrajectoryResult::measure_index(Measure m) const {
    for (std::size_t i = 0; i < options.measures.size(); ++i)
        if (options.measures[i] == m)
            return i;
    return std::nullopt;
}

std::span<const TrajectoryPoint> TrajectoryResult::trajectory(node id) const {
    auto lo = std::lower_bound(points.begin(), points.end(), id,
                               [](const TrajectoryPoint& p, node v) { return p.id < v; });
    auto hi = std::upper_bound(lo, points.end(), id, [](node v, const TrajectoryPoint& p) { return v < p.id; });
    return {points.data() + (lo - points.begin()), static_cast<std::size_t>(hi - lo)};
}

TrajectoryResult trajectories(const SnapshotSeries& series, TrajectoryOptions options) {
    options.canonicalize();
    if (series.size() < 2)
        throw DataError("insufficient snapshots: surprise needs at least 2, got " + std::to_string(series.size()));

    TrajectoryResult result;
    result.options = options;
    result.nodes = series.nodes;
    const std::size_t snapshots = series.size();
    const std::size_t measures = options.measures.size();
    for (const auto& s : series.snapshots)
        result.times.push_back(s.t());

    result.scores.resize(measures);
    result.ranks.resize(measures);
    for (std::size_t m = 0; m < measures; ++m) {
        for (const auto& snapshot : series.snapshots) {
            if (snapshot.empty())
                throw DataError("snapshot t=" + std::to_string(snapshot.t()) +
                                " has no nodes; choose a start year with data");
            result.scores[m].push_back(options.measures[m] == Measure::pagerank
                                           ? pagerank(snapshot, options.pagerank)
                                           : disruption_all(snapshot, options.disruption));
            result.ranks[m].push_back(rank(result.scores[m].back()));
        }
    }

    // Cumulative snapshots: a node stays present from its first appearance on.
    const std::size_t universe = series.nodes->size();
    std::vector<std::size_t> first(universe, snapshots);
    for (std::size_t s = snapshots; s-- > 0;)
        for (node u : series.snapshots[s].nodes())
            first[u] = s;
    std::vector<std::size_t> offsets(universe + 1, 0);
    for (std::size_t u = 0; u < universe; ++u)
        offsets[u + 1] = offsets[u] + (snapshots - first[u]);
    result.points.resize(offsets[universe]);

    const auto n_nodes = static_cast<std::ptrdiff_t>(universe);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 256)
    for (std::ptrdiff_t iu = 0; iu < n_nodes; ++iu) {
        const auto u = static_cast<node>(iu);
        std::vector<SurpriseRecord> records;
        try {
            for (std::size_t s = first[u]; s < snapshots; ++s) {
                TrajectoryPoint& p = result.points[offsets[u] + (s - first[u])];
                p.id = u;
                p.t = result.times[s];
                p.positions.resize(measures);
                p.kl_bits.resize(measures * options.hypotheses.size());
                records.clear();
                for (std::size_t m = 0; m < measures; ++m) {
                    p.positions[m] = result.ranks[m][s].position_of(u);
                    auto r = node_surprise(result.ranks[m], s, u, options.hypotheses);
                    for (std::size_t h = 0; h < r.size(); ++h)
                        p.kl_bits[result.kl_index(m, h)] = r[h].kl_bits;
                    records.insert(records.end(), r.begin(), r.end());
                }
                const auto total = total_surprise(records);
                p.total_bits = total.bits;
                p.no_evidence = total.no_evidence;
            }
        } catch (...) {
#pragma omp critical(ranksurprise_trajectory_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return result;
}

} // namespace ranksurprise
