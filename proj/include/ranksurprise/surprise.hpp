#pragma once

#include <ranksurprise/centrality.hpp>
#include <ranksurprise/ranking.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ranksurprise {

struct BetaParams {
    double alpha = 1.0;
    double beta = 1.0;

    double mean() const noexcept { return alpha / (alpha + beta); }
    void validate() const;
    bool operator==(const BetaParams&) const = default;
};

enum class HypothesisKind {
    past_rank,      ///< relative position unchanged since t-1
    regular_growth, ///< rate g(t-1)/g(t-2) persists one more step
    uniform,        ///< Beta(1,1) for every node, needs no history
};

std::string_view to_string(HypothesisKind kind);
std::optional<HypothesisKind> parse_hypothesis(std::string_view name);
/// Comma-separated hypothesis names; throws InvalidArgument listing valid names.
std::vector<HypothesisKind> parse_hypothesis_list(std::string_view names);

struct Hypothesis {
    HypothesisKind kind = HypothesisKind::past_rank;
    double clamp_epsilon = 1e-6;

    void validate() const;
};

/// Conjugate update with g successes out of n: Beta(alpha + g, beta + n - g).
BetaParams posterior_update(const BetaParams& prior, std::uint32_t g, std::uint32_t n);

/// KL(posterior || prior) between two Beta distributions, in bits.
double kl_beta(const BetaParams& posterior, const BetaParams& prior);

/// Beta(g_prev, n_prev - g_prev), each parameter raised to at least eps.
BetaParams past_rank_prior(std::uint32_t g_prev, std::uint32_t n_prev, double eps = 1e-6);

/// alpha = g_prev^2 / g_prev2 clamped to [eps, n_prev], beta = max(n_prev - alpha, eps).
/// Clamping matches past_rank_prior so the two agree whenever g_prev == g_prev2.
BetaParams regular_growth_prior(std::uint32_t g_prev, std::uint32_t g_prev2, std::uint32_t n_prev,
                                double eps = 1e-6);

/// Prior for a hypothesis given the node's last two rank observations, or
/// nullopt when the required history is missing.
std::optional<BetaParams> make_prior(const Hypothesis& hypothesis, std::optional<RankPosition> prev,
                                     std::optional<RankPosition> prev2);

struct SurpriseRecord {
    node id = 0;
    int t = 0;
    Measure measure = Measure::pagerank;
    HypothesisKind hypothesis = HypothesisKind::past_rank;
    std::optional<BetaParams> prior;
    std::optional<BetaParams> posterior;
    std::optional<double> kl_bits; ///< present iff applicable
    bool applicable = false;
};

/// Surprise of `id` at history[index] under each hypothesis. history holds the
/// rank tables of one measure in snapshot order.
std::vector<SurpriseRecord> node_surprise(std::span<const RankTable> history, std::size_t index, node id,
                                          std::span<const Hypothesis> hypotheses);

struct TotalSurprise {
    double bits = 0.0;
    bool no_evidence = true; ///< no applicable component contributed
};

/// Sum of kl_bits over applicable records; all records must share (node, t).
TotalSurprise total_surprise(std::span<const SurpriseRecord> records);

struct TrajectoryOptions {
    std::vector<Measure> measures{Measure::pagerank, Measure::disruption};
    std::vector<Hypothesis> hypotheses{{HypothesisKind::past_rank}, {HypothesisKind::regular_growth}};
    PagerankConfig pagerank;
    DisruptionOptions disruption;

    /// Sorts and deduplicates measures and hypotheses; validates everything.
    void canonicalize();
};

struct TrajectoryPoint {
    node id = 0;
    int t = 0;
    std::vector<std::optional<RankPosition>> positions; ///< per measure
    std::vector<std::optional<double>> kl_bits;          ///< measure-major, hypothesis-minor
    double total_bits = 0.0;
    bool no_evidence = true;
};

struct TrajectoryResult {
    TrajectoryOptions options;
    std::shared_ptr<const NodeDictionary> nodes;
    std::vector<int> times;
    std::vector<std::vector<ScoreTable>> scores; ///< [measure][snapshot]
    std::vector<std::vector<RankTable>> ranks;   ///< [measure][snapshot]
    std::vector<TrajectoryPoint> points;         ///< ordered by (label, t)

    std::optional<std::size_t> measure_index(Measure m) const;
    std::size_t kl_index(std::size_t measure, std::size_t hypothesis) const {
        return measure * options.hypotheses.size() + hypothesis;
    }
    /// Points of one node, in time order.
    std::span<const TrajectoryPoint> trajectory(node id) const;
};

/// Full pipeline: centrality, ranking, then surprise for every node and snapshot.
TrajectoryResult trajectories(const SnapshotSeries& series, TrajectoryOptions options = {});

} // namespace ranksurprise
