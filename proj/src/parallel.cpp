#include <ranksurprise/parallel.hpp>

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ranksurprise {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0)
        omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

double deterministic_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    const std::size_t blocks = (n + reduction_block - 1) / reduction_block;
    if (blocks <= 1) {
        double s = 0.0;
        for (double v : values)
            s += v;
        return s;
    }
    std::vector<double> partial(blocks, 0.0);
    const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduction_block;
        const std::size_t hi = std::min(n, lo + reduction_block);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += values[i];
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial)
        total += p;
    return total;
}

} // namespace ranksurprise
