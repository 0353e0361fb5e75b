// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "oracles.hpp"

#include <ranksurprise/centrality.hpp>
#include <ranksurprise/parallel.hpp>
#include <ranksurprise/ranking.hpp>
#include <ranksurprise/surprise.hpp>
#include <ranksurprise/synth.hpp>
#include <ranksurprise/temporal_graph.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace ranksurprise;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, pattern, args...);
    return buffer;
}

Outcome kl_closed_form() {
    const auto start = Clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> param(0.5, 500.0);
    double worst = 0.0;
    const int pairs = 1000;
    for (int i = 0; i < pairs; ++i) {
        const double pa = param(rng), pb = param(rng), qa = param(rng), qb = param(rng);
        worst = std::max(worst, std::abs(kl_beta({pa, pb}, {qa, qb}) - oracle::kl_quadrature(pa, pb, qa, qb)));
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-8 && elapsed < 30.0,
            fmt("%d pairs, max |closed - quadrature| = %.3g bits, %.2f s", pairs, worst, elapsed)};
}

Outcome pagerank_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(2002);
    double worst = 0.0, worst_sum = 0.0;
    bool converged = true;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 200)(rng);
        const double density = std::uniform_real_distribution<double>(0.005, 0.15)(rng);
        const auto g = oracle::random_snapshot(rng, n, density, 20);
        const auto table = pagerank(g);
        const auto expected = oracle::dense_pagerank(g, 0.85);
        converged = converged && table.converged;
        double sum = 0.0;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            worst = std::max(worst, std::abs(table.scores[i] - expected[i]));
            sum += table.scores[i];
        }
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
    const double elapsed = seconds_since(start);
    return {converged && worst <= 1e-8 && worst_sum <= 1e-9 && elapsed < 60.0,
            fmt("100 graphs, max deviation %.3g, max |sum - 1| %.3g, %.2f s", worst, worst_sum, elapsed)};
}

Outcome disruption_oracle() {
    std::mt19937_64 rng(3003);
    std::size_t mismatches = 0, compared = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 50)(rng);
        const auto g = oracle::random_snapshot(rng, n, std::uniform_real_distribution<double>(0.02, 0.4)(rng));
        for (bool bypass : {true, false}) {
            const auto table = disruption_all(g, {bypass});
            for (std::size_t i = 0; i < table.nodes.size(); ++i) {
                ++compared;
                if (table.scores[i] != oracle::brute_disruption(g, table.nodes[i], bypass))
                    ++mismatches;
            }
        }
    }
    return {mismatches == 0, fmt("100 graphs x 2 bypass settings, %zu node scores, %zu mismatches", compared,
                                 mismatches)};
}

ScoreTable table_of(const std::vector<double>& scores, Measure m) {
    ScoreTable t;
    t.measure = m;
    t.scores = scores;
    for (node i = 0; i < scores.size(); ++i)
        t.nodes.push_back(i);
    return t;
}

Outcome correlation_oracle() {
    std::mt19937_64 rng(4004);
    int checked = 0, tau_mismatch = 0;
    double rho_worst = 0.0;
    while (checked < 100) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 50)(rng);
        // Few distinct values, so ties are common.
        std::uniform_int_distribution<int> value(0, std::max<int>(1, static_cast<int>(n) / 3));
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = value(rng);
            y[i] = value(rng);
        }
        const auto constant = [](const std::vector<double>& v) {
            return std::all_of(v.begin(), v.end(), [&](double e) { return e == v[0]; });
        };
        if (constant(x) || constant(y))
            continue;
        ++checked;
        const auto a = table_of(x, Measure::pagerank), b = table_of(y, Measure::disruption);
        if (kendall_tau(a, b) != oracle::brute_kendall(x, y))
            ++tau_mismatch;
        rho_worst = std::max(rho_worst, std::abs(spearman_rho(a, b) - oracle::brute_spearman(x, y)));
    }
    return {tau_mismatch == 0 && rho_worst <= 1e-12,
            fmt("100 tied pairs, %d tau mismatches, max rho deviation %.3g", tau_mismatch, rho_worst)};
}

// Straight-line recomputation of one node's record from the rank counts.
struct ScalarRecord {
    bool applicable = false;
    double bits = 0.0;
};

ScalarRecord scalar_record(HypothesisKind kind, double eps, std::optional<std::pair<double, double>> prev,
                           std::optional<std::pair<double, double>> prev2, double g, double n) {
    double qa = 1.0, qb = 1.0;
    if (kind == HypothesisKind::past_rank) {
        if (!prev)
            return {};
        qa = std::max(prev->first, eps);
        qb = std::max(prev->second - prev->first, eps);
    } else if (kind == HypothesisKind::regular_growth) {
        if (!prev || !prev2)
            return {};
        const double raw = prev->first * prev->first / prev2->first;
        qa = std::min(std::max(raw, eps), prev->second);
        qb = std::max(prev->second - qa, eps);
    }
    return {true, oracle::kl_closed_boost(qa + g, qb + (n - g), qa, qb)};
}

Outcome surprise_fixture() {
    // Five nodes over four years: d enters at 2, e at 3.
    const std::vector<LabeledEdge> rows{
        {"b", "a", 1, 1}, {"c", "a", 1, 1}, {"c", "b", 1, 1},
        {"d", "b", 2, 1}, {"d", "a", 2, 1}, {"c", "b", 2, 2},
        {"e", "c", 3, 1}, {"e", "d", 3, 1}, {"b", "a", 3, 1},
        {"a", "e", 4, 1}, {"e", "b", 4, 3}, {"d", "c", 4, 1},
    };
    const auto list = make_edge_list(rows, true);
    const auto series = build_snapshots(list, {1, 1, 4});
    TrajectoryOptions options;
    options.hypotheses = {{HypothesisKind::past_rank}, {HypothesisKind::regular_growth}, {HypothesisKind::uniform}};
    const auto result = trajectories(series, options);
    const auto& hyps = result.options.hypotheses;
    const double eps = hyps[0].clamp_epsilon;

    // Scores checked against the oracles; ranks recounted directly from the scores.
    double score_dev = 0.0;
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& g = series.snapshots[s];
        const auto pr = oracle::dense_pagerank(g, 0.85);
        for (std::size_t m = 0; m < result.options.measures.size(); ++m) {
            const auto& table = result.scores[m][s];
            for (std::size_t i = 0; i < table.nodes.size(); ++i) {
                const double expected = result.options.measures[m] == Measure::pagerank
                                            ? pr[i]
                                            : oracle::brute_disruption(g, table.nodes[i], true);
                score_dev = std::max(score_dev, std::abs(table.scores[i] - expected));
            }
        }
    }
    auto counts = [&](std::size_t m, std::size_t s, node u) -> std::optional<std::pair<double, double>> {
        const auto& table = result.scores[m][s];
        const auto it = std::find(table.nodes.begin(), table.nodes.end(), u);
        if (it == table.nodes.end())
            return std::nullopt;
        const double mine = table.scores[static_cast<std::size_t>(it - table.nodes.begin())];
        double g = 0.0;
        for (double v : table.scores)
            g += v >= mine ? 1.0 : 0.0;
        return std::make_pair(g, static_cast<double>(table.nodes.size()));
    };

    double worst = 0.0;
    std::size_t records = 0, flag_mismatch = 0;
    for (const auto& p : result.points) {
        const std::size_t s = static_cast<std::size_t>(std::find(result.times.begin(), result.times.end(), p.t) -
                                                       result.times.begin());
        double total = 0.0;
        bool any = false;
        for (std::size_t m = 0; m < result.options.measures.size(); ++m) {
            const auto now = counts(m, s, p.id).value();
            const auto prev = s >= 1 ? counts(m, s - 1, p.id) : std::nullopt;
            const auto prev2 = s >= 2 ? counts(m, s - 2, p.id) : std::nullopt;
            if (!p.positions[m] || p.positions[m]->g != now.first || p.positions[m]->n != now.second)
                ++flag_mismatch;
            for (std::size_t h = 0; h < hyps.size(); ++h) {
                ++records;
                const auto expect = scalar_record(hyps[h].kind, eps, prev, prev2, now.first, now.second);
                const auto got = p.kl_bits[result.kl_index(m, h)];
                if (expect.applicable != got.has_value()) {
                    ++flag_mismatch;
                    continue;
                }
                if (got) {
                    worst = std::max(worst, std::abs(*got - expect.bits));
                    total += expect.bits;
                    any = true;
                }
            }
        }
        worst = std::max(worst, std::abs(p.total_bits - total));
        if (p.no_evidence == any)
            ++flag_mismatch;
    }
    return {flag_mismatch == 0 && worst <= 1e-10 && score_dev <= 1e-8,
            fmt("%zu records over %zu points, max deviation %.3g bits, %zu applicability mismatches", records,
                result.points.size(), worst, flag_mismatch)};
}

SnapshotSeries random_series(std::mt19937_64& rng) {
    const int nodes = std::uniform_int_distribution<int>(5, 60)(rng);
    const int years = std::uniform_int_distribution<int>(3, 8)(rng);
    const int events = std::uniform_int_distribution<int>(nodes, nodes * 6)(rng);
    std::uniform_int_distribution<int> pick(0, nodes - 1), year(1, years);
    std::vector<LabeledEdge> rows;
    for (int i = 0; i < events; ++i)
        rows.push_back({"v" + std::to_string(pick(rng)), "v" + std::to_string(pick(rng)), year(rng),
                        1 + rng() % 3});
    rows.push_back({"v0", "v1", 1, 1});
    rows.push_back({"v1", "v0", years, 1});
    const auto list = make_edge_list(rows, true);
    return build_snapshots(list, {1, 1, years});
}

Outcome surprise_properties() {
    std::mt19937_64 rng(6006);
    std::size_t negative = 0, additivity = 0, growth_equal = 0, growth_checked = 0, rank_mismatch = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto series = random_series(rng);
        const auto result = trajectories(series);
        const std::size_t nh = result.options.hypotheses.size();
        for (const auto& p : result.points) {
            double sum = 0.0;
            std::vector<SurpriseRecord> records;
            for (std::size_t c = 0; c < p.kl_bits.size(); ++c) {
                SurpriseRecord r;
                r.id = p.id;
                r.t = p.t;
                r.applicable = p.kl_bits[c].has_value();
                r.kl_bits = p.kl_bits[c];
                records.push_back(r);
                if (p.kl_bits[c]) {
                    negative += *p.kl_bits[c] < 0.0 ? 1 : 0;
                    sum += *p.kl_bits[c];
                }
            }
            const std::span<const SurpriseRecord> all(records);
            const std::size_t cut = records.size() / 2;
            const double parts = total_surprise(all.first(cut)).bits + total_surprise(all.subspan(cut)).bits;
            if (std::abs(total_surprise(all).bits - parts) > 1e-12 * std::max(1.0, parts) ||
                std::abs(p.total_bits - sum) > 1e-12 * std::max(1.0, sum))
                ++additivity;
        }
        // regular_growth equals past_rank wherever the rank count did not change.
        for (std::size_t m = 0; m < result.options.measures.size(); ++m)
            for (std::size_t s = 2; s < result.times.size(); ++s)
                for (node u : result.ranks[m][s].nodes) {
                    const auto g1 = result.ranks[m][s - 1].position_of(u);
                    const auto g2 = result.ranks[m][s - 2].position_of(u);
                    if (!g1 || !g2 || g1->g != g2->g)
                        continue;
                    const auto traj = result.trajectory(u);
                    const auto& p = *std::find_if(traj.begin(), traj.end(),
                                                  [&](const auto& q) { return q.t == result.times[s]; });
                    ++growth_checked;
                    if (nh == 2 && p.kl_bits[result.kl_index(m, 0)] != p.kl_bits[result.kl_index(m, 1)])
                        ++growth_equal;
                }
        // Ranks are invariant under strictly increasing transforms of the scores.
        for (const auto& per_measure : result.scores)
            for (const auto& table : per_measure) {
                auto transformed = table;
                for (auto& v : transformed.scores)
                    v = std::exp(3.0 * v) + 2.0;
                if (rank(table).g != rank(transformed).g)
                    ++rank_mismatch;
            }
    }
    return {negative == 0 && additivity == 0 && growth_equal == 0 && growth_checked > 0 && rank_mismatch == 0,
            fmt("60 random runs: %zu negative, %zu additivity failures, %zu/%zu growth!=past, %zu rank changes",
                negative, additivity, growth_equal, growth_checked, rank_mismatch)};
}

Outcome shock_detection() {
    const auto start = Clock::now();
    int detected = 0;
    std::size_t min_nodes = SIZE_MAX;
    std::string misses;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SynthConfig config;
        config.seed = seed;
        config.initial_nodes = 50;
        config.steps = 10;
        config.arrivals_per_step = 20;
        config.edges_per_arrival = 5;
        config.shock = ShockSpec{7, ShockSelector::median_in_degree, {}, 50};
        auto data = generate(config);
        // The target is chosen before the burst, so enlarging the burst keeps it.
        const int needed = 10 * static_cast<int>(data.shock->prior_in_degree);
        if (config.shock->burst_edges < needed) {
            config.shock->burst_edges = needed;
            data = generate(config);
        }
        if (data.shock->burst_edges < needed)
            return {false, "burst below 10x prior in-degree"};
        min_nodes = std::min(min_nodes, data.edges.nodes->size());
        const auto series = build_snapshots(data.edges, SnapshotConfig::covering(data.edges, 1));
        const auto report = shock_report(trajectories(series), data.shock->target, data.shock->year);
        if (report.distinguishable)
            ++detected;
        else
            misses += " " + std::to_string(seed);
    }
    const double elapsed = seconds_since(start);
    return {detected >= 16 && min_nodes >= 200 && elapsed < 120.0,
            fmt("%d/20 seeds distinguishable (min %zu nodes), %.2f s", detected, min_nodes, elapsed) +
                (misses.empty() ? "" : "; missed:" + misses)};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome cli_determinism() {
    const auto root = fs::temp_directory_path() / "ranksurprise_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string cli = std::string("\"") + RANKSURPRISE_CLI + "\"";
    auto q = [](const fs::path& p) { return "\"" + p.string() + "\""; };
    if (std::system((cli + " simulate --seed 5 --out-dir " + q(root / "sim") + " > /dev/null").c_str()) != 0)
        return {false, "simulate failed"};
    const auto input = root / "sim" / "edges.csv";
    for (const char* sub : {"a", "b"}) {
        const std::string threads = sub[0] == 'a' ? "1" : "4";
        const auto cmd = cli + " --input " + q(input) + " --threads " + threads + " analyze --plot-node n000003" +
                         " --out-dir " + q(root / sub) + " > /dev/null";
        if (std::system(cmd.c_str()) != 0)
            return {false, "analyze failed"};
    }
    std::size_t files = 0, differ = 0;
    for (const auto& entry : fs::directory_iterator(root / "a")) {
        ++files;
        if (slurp(entry.path()) != slurp(root / "b" / entry.path().filename()))
            ++differ;
    }
    fs::remove_all(root);
    return {files >= 5 && differ == 0,
            fmt("two analyze runs (1 and 4 threads): %zu files, %zu differ", files, differ)};
}

Outcome snapshot_invariants() {
    std::mt19937_64 rng(9009);
    std::size_t violations = 0, snapshots = 0;
    for (int trial = 0; trial < 100; ++trial) {
        // Raw text through the parser, including self-loops and duplicates.
        const int nodes = std::uniform_int_distribution<int>(2, 40)(rng);
        const int rows = std::uniform_int_distribution<int>(1, 300)(rng);
        std::ostringstream text;
        text << "src,dst,year,weight\n";
        for (int i = 0; i < rows; ++i)
            text << 'n' << rng() % nodes << ",n" << rng() % nodes << ',' << 1950 + rng() % 70 << ','
                 << 1 + rng() % 4 << '\n';
        text << "n0,n1,1950,1\n";
        std::istringstream in(text.str());
        IngestOptions options;
        options.weighted = true;
        const auto list = parse_edge_list(in, options, "random");
        const int delta = std::uniform_int_distribution<int>(1, 15)(rng);
        const auto series = build_snapshots(list, SnapshotConfig::covering(list, delta));
        const auto stats = snapshot_stats(series);
        for (std::size_t s = 0; s < series.size(); ++s) {
            ++snapshots;
            const auto& g = series.snapshots[s];
            if (transpose(g.out_edges()) != g.in_edges())
                ++violations;
            for (node u : g.nodes())
                for (node v : g.out_edges().neighbors(u))
                    violations += u == v ? 1 : 0;
            if (s == 0)
                continue;
            const auto& prev = series.snapshots[s - 1];
            if (stats[s].nodes < stats[s - 1].nodes || stats[s].edges < stats[s - 1].edges ||
                stats[s].total_weight < stats[s - 1].total_weight)
                ++violations;
            for (node u : prev.nodes()) {
                const auto ns = prev.out_edges().neighbors(u);
                const auto ws = prev.out_edges().neighbor_weights(u);
                for (std::size_t k = 0; k < ns.size(); ++k) {
                    const auto w = g.weight(u, ns[k]);
                    if (!w || *w < ws[k])
                        ++violations;
                }
            }
        }
    }
    return {violations == 0, fmt("100 ingests, %zu snapshots, %zu violations", snapshots, violations)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"kl-closed-form", kl_closed_form},
        {"pagerank-oracle", pagerank_oracle},
        {"disruption-oracle", disruption_oracle},
        {"rank-correlations", correlation_oracle},
        {"surprise-fixture", surprise_fixture},
        {"surprise-properties", surprise_properties},
        {"shock-detection", shock_detection},
        {"determinism", cli_determinism},
        {"snapshot-invariants", snapshot_invariants},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome outcome;
        try {
            outcome = check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": " << outcome.detail << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
