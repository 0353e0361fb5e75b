#pragma once

#include <ranksurprise/surprise.hpp>
#include <ranksurprise/temporal_graph.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ranksurprise {

enum class ShockSelector {
    median_in_degree, ///< median in-degree among established nodes
    random,           ///< uniform among established nodes
    label,            ///< the node named in ShockSpec::label
};

std::string_view to_string(ShockSelector s);
std::optional<ShockSelector> parse_shock_selector(std::string_view name);

/// Established nodes have two snapshots of history before the shock and were
/// cited in the snapshot where they first appear, so their rank history has no
/// exit from the uncited bottom tie. At `step`, burst_edges fresh nodes each cite only the target. Ordinary
/// arrivals of that step do not cite the target, so its in-degree grows by
/// exactly burst_edges.
struct ShockSpec {
    int step = 7;
    ShockSelector selector = ShockSelector::median_in_degree;
    std::string label;
    int burst_edges = 50;
};

struct SynthConfig {
    std::uint64_t seed = 1;
    int initial_nodes = 50;
    int steps = 10;
    int arrivals_per_step = 20;
    int edges_per_arrival = 5;
    double attachment_bias = 1.0;
    int start_year = 2000;
    std::optional<ShockSpec> shock;

    void validate() const;
    int year_of(int step) const { return start_year + step - 1; }
    std::size_t expected_nodes() const;
    std::size_t expected_edges() const;
};

struct ShockInfo {
    std::string target;
    int step = 0;
    int year = 0;
    std::uint64_t prior_in_degree = 0; ///< in-degree at the end of step - 1
    int burst_edges = 0;
};

struct SynthDataset {
    TemporalEdgeList edges;
    std::optional<ShockInfo> shock;
    std::string rng = "mt19937_64";
};

/// Growth model: at step 1 seed node i cites min(i, edges_per_arrival) earlier
/// seed nodes; every later step adds arrivals citing edges_per_arrival distinct older nodes drawn with
/// probability proportional to (in-degree + 1)^attachment_bias. One step per year.
SynthDataset generate(const SynthConfig& config);

/// Config and generator metadata as JSON.
void write_synth_metadata(std::ostream& out, const SynthConfig& config, const SynthDataset& data);

struct ShockReport {
    std::string target;
    int shock_t = 0;
    bool detectable = false;
    std::string reason; ///< why detection was impossible, empty otherwise
    double target_bits = 0.0;
    std::size_t target_rank = 0;      ///< 1 = largest surprise among the target's applicable steps
    std::size_t target_steps = 0;     ///< applicable steps of the target
    std::size_t control_count = 0;
    double control_p90 = 0.0;         ///< 90th percentile of control surprise at shock_t
    double control_mean_rank = 0.0;   ///< mean rank of shock_t among each control's own steps
    double control_argmax_share = 0.0;///< share of controls whose own argmax is shock_t
    bool target_is_argmax = false;
    bool exceeds_control_p90 = false;
    bool distinguishable = false;     ///< argmax and above the control 90th percentile
};

/// Compares the target's surprise at shock_t with its other steps and with
/// every other node that has evidence at shock_t.
ShockReport shock_report(const TrajectoryResult& result, const std::string& target, int shock_t);

/// Nearest-rank quantile of an unsorted sample; q in (0, 1].
double nearest_rank_quantile(std::vector<double> sample, double q);

} // namespace ranksurprise
