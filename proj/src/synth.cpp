#include <ranksurprise/synth.hpp>

#include <ranksurprise/error.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

namespace ranksurprise {

std::string_view to_string(ShockSelector s) {
    switch (s) {
    case ShockSelector::median_in_degree:
        return "median_in_degree";
    case ShockSelector::random:
        return "random";
    case ShockSelector::label:
        return "label";
    }
    return "unknown";
}

std::optional<ShockSelector> parse_shock_selector(std::string_view name) {
    for (auto s : {ShockSelector::median_in_degree, ShockSelector::random, ShockSelector::label})
        if (name == to_string(s))
            return s;
    return std::nullopt;
}

void SynthConfig::validate() const {
    if (initial_nodes < 2)
        throw InvalidArgument("initial_nodes must be >= 2");
    if (steps < 3)
        throw InvalidArgument("insufficient snapshots: steps must be >= 3, got " + std::to_string(steps));
    if (arrivals_per_step < 1 || edges_per_arrival < 1)
        throw InvalidArgument("arrivals_per_step and edges_per_arrival must be >= 1");
    if (!(attachment_bias >= 0.0) || !std::isfinite(attachment_bias))
        throw InvalidArgument("attachment_bias must be finite and >= 0");
    if (edges_per_arrival > initial_nodes)
        throw InvalidArgument("edge budget impossible: " + std::to_string(edges_per_arrival) +
                              " distinct targets per arrival but only " + std::to_string(initial_nodes) +
                              " nodes exist at step 2");
    if (shock) {
        if (shock->step < 2 || shock->step > steps)
            throw InvalidArgument("shock step must lie in [2, steps]");
        if (shock->burst_edges < 1)
            throw InvalidArgument("shock burst_edges must be >= 1");
        if (shock->selector == ShockSelector::label && shock->label.empty())
            throw InvalidArgument("shock selector 'label' needs a node label");
        const long long older = initial_nodes + static_cast<long long>(shock->step - 2) * arrivals_per_step;
        if (older - 1 < edges_per_arrival)
            throw InvalidArgument("edge budget impossible at shock step: the target is excluded, leaving " +
                                  std::to_string(older - 1) + " candidates");
    }
}

std::size_t SynthConfig::expected_nodes() const {
    return static_cast<std::size_t>(initial_nodes) + static_cast<std::size_t>(steps - 1) * arrivals_per_step +
           (shock ? static_cast<std::size_t>(shock->burst_edges) : 0);
}

std::size_t SynthConfig::expected_edges() const {
    std::size_t seed_edges = 0;
    for (int i = 1; i < initial_nodes; ++i)
        seed_edges += static_cast<std::size_t>(std::min(i, edges_per_arrival));
    return seed_edges +
           static_cast<std::size_t>(steps - 1) * arrivals_per_step * edges_per_arrival +
           (shock ? static_cast<std::size_t>(shock->burst_edges) : 0);
}

namespace {

// Portable draws from the raw engine output; the std distributions are
// implementation-defined.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

std::string node_label(std::size_t i) {
    std::string digits = std::to_string(i);
    return "n" + std::string(digits.size() < 6 ? 6 - digits.size() : 0, '0') + digits;
}

} // namespace

SynthDataset generate(const SynthConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::vector<LabeledEdge> rows;
    rows.reserve(config.expected_edges());
    std::vector<std::string> labels;
    std::vector<std::uint64_t> in_degree;
    std::vector<int> born;

    auto add_node = [&](std::string label, int step) {
        labels.push_back(std::move(label));
        in_degree.push_back(0);
        born.push_back(step);
        return labels.size() - 1;
    };
    auto add_edge = [&](std::size_t src, std::size_t dst, int step) {
        rows.push_back({labels[src], labels[dst], config.year_of(step), 1});
        ++in_degree[dst];
    };

    // Citer draws `count` distinct targets among nodes [0, older), skipping `excluded`.
    std::vector<double> weight;
    auto cite = [&](std::size_t citer, std::size_t older, std::size_t count, std::optional<std::size_t> excluded,
                    int step) {
        weight.assign(older, 0.0);
        for (std::size_t v = 0; v < older; ++v)
            weight[v] = std::pow(static_cast<double>(in_degree[v] + 1), config.attachment_bias);
        if (excluded)
            weight[*excluded] = 0.0;
        std::vector<std::size_t> picks;
        for (std::size_t e = 0; e < count; ++e) {
            double total = 0.0;
            for (std::size_t v = 0; v < older; ++v)
                total += weight[v];
            const double u = uniform01(rng) * total;
            double acc = 0.0;
            std::size_t pick = older;
            for (std::size_t v = 0; v < older; ++v) {
                if (weight[v] == 0.0)
                    continue;
                acc += weight[v];
                pick = v;
                if (u < acc)
                    break;
            }
            picks.push_back(pick);
            weight[pick] = 0.0;
        }
        // In-degrees update after the draw so one citer's picks share a distribution.
        for (std::size_t pick : picks)
            add_edge(citer, pick, step);
    };

    const auto n0 = static_cast<std::size_t>(config.initial_nodes);
    const auto per_arrival = static_cast<std::size_t>(config.edges_per_arrival);
    for (std::size_t i = 0; i < n0; ++i)
        add_node(node_label(i), 1);
    for (std::size_t i = 1; i < n0; ++i)
        cite(i, i, std::min(per_arrival, i), std::nullopt, 1);
    // Arrivals only cite older nodes, so only seed nodes can be cited where they first appear.
    std::vector<bool> cited_at_birth(n0);
    for (std::size_t i = 0; i < n0; ++i)
        cited_at_birth[i] = in_degree[i] > 0;

    SynthDataset data;
    for (int step = 2; step <= config.steps; ++step) {
        const std::size_t older = labels.size();
        std::optional<std::size_t> target;
        if (config.shock && config.shock->step == step) {
            std::vector<std::size_t> eligible;
            for (std::size_t v = 0; v < older; ++v)
                if (born[v] <= step - 2 && v < n0 && cited_at_birth[v])
                    eligible.push_back(v);
            switch (config.shock->selector) {
            case ShockSelector::median_in_degree:
                std::sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
                    return std::tie(in_degree[a], a) < std::tie(in_degree[b], b);
                });
                target = eligible[eligible.size() / 2];
                break;
            case ShockSelector::random:
                target = eligible[uniform_index(rng, eligible.size())];
                break;
            case ShockSelector::label: {
                auto it = std::find(labels.begin(), labels.end(), config.shock->label);
                if (it == labels.end())
                    throw InvalidArgument("shock target '" + config.shock->label + "' does not exist before step " +
                                          std::to_string(step));
                target = static_cast<std::size_t>(it - labels.begin());
                break;
            }
            }
            data.shock = ShockInfo{labels[*target], step, config.year_of(step), in_degree[*target],
                                   config.shock->burst_edges};
        }

        for (int a = 0; a < config.arrivals_per_step; ++a) {
            const std::size_t citer = add_node(node_label(labels.size()), step);
            cite(citer, older, per_arrival, target, step);
        }

        if (target) {
            for (int b = 0; b < config.shock->burst_edges; ++b) {
                const std::size_t citer =
                    add_node("burst" + std::to_string(step) + "_" + node_label(static_cast<std::size_t>(b)), step);
                add_edge(citer, *target, step);
            }
        }
    }

    data.edges = make_edge_list(rows, false);
    return data;
}

void write_synth_metadata(std::ostream& out, const SynthConfig& config, const SynthDataset& data) {
    nlohmann::ordered_json j;
    j["format"] = "ranksurprise-synth-v1";
    j["rng"] = data.rng;
    j["seed"] = config.seed;
    j["initial_nodes"] = config.initial_nodes;
    j["steps"] = config.steps;
    j["arrivals_per_step"] = config.arrivals_per_step;
    j["edges_per_arrival"] = config.edges_per_arrival;
    j["attachment_bias"] = config.attachment_bias;
    j["start_year"] = config.start_year;
    if (config.shock) {
        j["shock"] = {{"step", config.shock->step},
                      {"selector", std::string(to_string(config.shock->selector))},
                      {"label", config.shock->label},
                      {"burst_edges", config.shock->burst_edges}};
    } else {
        j["shock"] = nullptr;
    }
    if (data.shock) {
        j["shock_target"] = {{"label", data.shock->target},
                             {"step", data.shock->step},
                             {"year", data.shock->year},
                             {"prior_in_degree", data.shock->prior_in_degree},
                             {"burst_edges", data.shock->burst_edges}};
    }
    j["nodes"] = data.edges.nodes->size();
    j["events"] = data.edges.events.size();
    out << j.dump(2) << '\n';
}

double nearest_rank_quantile(std::vector<double> sample, double q) {
    if (sample.empty())
        throw InvalidArgument("quantile of an empty sample");
    if (!(q > 0.0 && q <= 1.0))
        throw InvalidArgument("quantile level must lie in (0, 1]");
    std::sort(sample.begin(), sample.end());
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sample.size())));
    return sample[std::max<std::size_t>(k, 1) - 1];
}

namespace {

struct StepRank {
    std::size_t rank = 0;
    std::size_t steps = 0;
    std::optional<double> bits;
};

// Rank of the surprise at t among the node's applicable steps (1 = largest).
StepRank rank_of_step(std::span<const TrajectoryPoint> trajectory, int t) {
    StepRank out;
    for (const auto& p : trajectory)
        if (p.t == t && !p.no_evidence)
            out.bits = p.total_bits;
    if (!out.bits)
        return out;
    out.rank = 1;
    for (const auto& p : trajectory) {
        if (p.no_evidence)
            continue;
        ++out.steps;
        if (p.total_bits > *out.bits)
            ++out.rank;
    }
    return out;
}

} // namespace

ShockReport shock_report(const TrajectoryResult& result, const std::string& target, int shock_t) {
    ShockReport report;
    report.target = target;
    report.shock_t = shock_t;
    if (std::find(result.times.begin(), result.times.end(), shock_t) == result.times.end()) {
        report.reason = "shock time " + std::to_string(shock_t) + " is not a snapshot";
        return report;
    }
    const auto id = result.nodes->find(target);
    if (!id) {
        report.reason = "target '" + target + "' does not exist";
        return report;
    }
    const auto mine = rank_of_step(result.trajectory(*id), shock_t);
    if (!mine.bits) {
        report.reason = "insufficient history";
        return report;
    }
    report.detectable = true;
    report.target_bits = *mine.bits;
    report.target_rank = mine.rank;
    report.target_steps = mine.steps;
    report.target_is_argmax = mine.rank == 1;

    std::vector<double> controls;
    double rank_sum = 0.0;
    std::size_t argmax = 0;
    for (node u = 0; u < result.nodes->size(); ++u) {
        if (u == *id)
            continue;
        const auto r = rank_of_step(result.trajectory(u), shock_t);
        if (!r.bits)
            continue;
        controls.push_back(*r.bits);
        rank_sum += static_cast<double>(r.rank);
        argmax += r.rank == 1 ? 1 : 0;
    }
    report.control_count = controls.size();
    if (!controls.empty()) {
        report.control_p90 = nearest_rank_quantile(controls, 0.9);
        report.control_mean_rank = rank_sum / static_cast<double>(controls.size());
        report.control_argmax_share = static_cast<double>(argmax) / static_cast<double>(controls.size());
    }
    report.exceeds_control_p90 = controls.empty() || report.target_bits > report.control_p90;
    report.distinguishable = report.target_is_argmax && report.exceeds_control_p90;
    return report;
}

} // namespace ranksurprise
