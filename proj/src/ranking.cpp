#include <ranksurprise/ranking.hpp>

#include <ranksurprise/error.hpp>
#include <ranksurprise/text.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace ranksurprise {

std::optional<RankPosition> RankTable::position_of(node u) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), u);
    if (it == nodes.end() || *it != u)
        return std::nullopt;
    return RankPosition{g[static_cast<std::size_t>(it - nodes.begin())], n};
}

RankTable rank(const ScoreTable& scores) {
    if (scores.size() == 0)
        throw InvalidArgument("rank() on an empty score table");
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (std::isnan(scores.scores[i]))
            throw DataError("NaN score for node " + std::to_string(scores.nodes[i]) + " at t=" +
                            std::to_string(scores.t));

    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores.scores[a] > scores.scores[b]; });

    RankTable table;
    table.t = scores.t;
    table.measure = scores.measure;
    table.nodes = scores.nodes;
    table.g.assign(n, 0);
    table.n = static_cast<std::uint32_t>(n);
    std::size_t begin = 0;
    while (begin < n) {
        std::size_t end = begin + 1;
        while (end < n && scores.scores[order[end]] == scores.scores[order[begin]])
            ++end;
        for (std::size_t k = begin; k < end; ++k)
            table.g[order[k]] = static_cast<std::uint32_t>(end);
        begin = end;
    }
    return table;
}

namespace {

void require_paired(const ScoreTable& a, const ScoreTable& b) {
    if (a.nodes != b.nodes)
        throw InvalidArgument("rank correlation requires identical node sets");
    if (a.size() < 2)
        throw InvalidArgument("rank correlation requires at least two nodes");
}

// Counts inversions of `values` while merge sorting it.
std::uint64_t count_swaps(std::vector<double>& values) {
    std::vector<double> buffer(values.size());
    std::uint64_t swaps = 0;
    for (std::size_t width = 1; width < values.size(); width *= 2) {
        for (std::size_t lo = 0; lo < values.size(); lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, values.size());
            const std::size_t hi = std::min(lo + 2 * width, values.size());
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (values[j] < values[i]) {
                    swaps += mid - i;
                    buffer[k++] = values[j++];
                } else {
                    buffer[k++] = values[i++];
                }
            }
            while (i < mid)
                buffer[k++] = values[i++];
            while (j < hi)
                buffer[k++] = values[j++];
        }
        values.swap(buffer);
    }
    return swaps;
}

// Sum of t(t-1)/2 over runs of equal values in a sorted range.
template <typename Equal>
std::uint64_t tied_pairs(std::size_t n, Equal equal) {
    std::uint64_t pairs = 0;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i < n && equal(i - 1, i)) {
            ++run;
        } else {
            pairs += static_cast<std::uint64_t>(run) * (run - 1) / 2;
            run = 1;
        }
    }
    return pairs;
}

} // namespace

double kendall_tau(const ScoreTable& a, const ScoreTable& b) {
    require_paired(a, b);
    const std::size_t n = a.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (a.scores[i] != a.scores[j])
            return a.scores[i] < a.scores[j];
        return b.scores[i] < b.scores[j];
    });

    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const std::uint64_t ties_a = tied_pairs(n, [&](std::size_t i, std::size_t j) {
        return a.scores[order[i]] == a.scores[order[j]];
    });
    const std::uint64_t ties_joint = tied_pairs(n, [&](std::size_t i, std::size_t j) {
        return a.scores[order[i]] == a.scores[order[j]] && b.scores[order[i]] == b.scores[order[j]];
    });

    std::vector<double> second(n);
    for (std::size_t k = 0; k < n; ++k)
        second[k] = b.scores[order[k]];
    const std::uint64_t swaps = count_swaps(second);
    const std::uint64_t ties_b =
        tied_pairs(n, [&](std::size_t i, std::size_t j) { return second[i] == second[j]; });

    if (ties_a == total || ties_b == total)
        throw DataError("Kendall tau undefined: constant scores at t=" + std::to_string(a.t));

    // concordant - discordant
    const auto numerator = static_cast<std::int64_t>(total - ties_a - ties_b + ties_joint) -
                           2 * static_cast<std::int64_t>(swaps);
    return static_cast<double>(numerator) /
           std::sqrt(static_cast<double>(total - ties_a) * static_cast<double>(total - ties_b));
}

std::vector<double> mid_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(n);
    std::size_t begin = 0;
    while (begin < n) {
        std::size_t end = begin + 1;
        while (end < n && values[order[end]] == values[order[begin]])
            ++end;
        const double average = (static_cast<double>(begin + 1) + static_cast<double>(end)) / 2.0;
        for (std::size_t k = begin; k < end; ++k)
            ranks[order[k]] = average;
        begin = end;
    }
    return ranks;
}

double spearman_rho(const ScoreTable& a, const ScoreTable& b) {
    require_paired(a, b);
    const auto ra = mid_ranks(a.scores);
    const auto rb = mid_ranks(b.scores);
    const double n = static_cast<double>(ra.size());
    // Mean of 1..n, whatever the ties.
    const double mean = (n + 1.0) / 2.0;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const double da = ra[i] - mean;
        const double db = rb[i] - mean;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0)
        throw DataError("Spearman rho undefined: constant scores at t=" + std::to_string(a.t));
    return sab / std::sqrt(saa * sbb);
}

void write_correlation_report(std::ostream& out, const std::vector<CorrelationRow>& rows) {
    auto value = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("NA"); };
    out << "dataset,snapshot,kendall,spearman\n";
    for (const auto& r : rows)
        out << csv_field(r.dataset, ',') << ',' << r.snapshot << ',' << value(r.kendall) << ','
            << value(r.spearman) << '\n';
}

} // namespace ranksurprise
