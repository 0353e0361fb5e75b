#pragma once

#include <cstddef>
#include <span>

namespace ranksurprise {

/// Number of OpenMP threads a parallel region would use (1 without OpenMP).
int max_threads();
/// Sets the OpenMP thread count; a no-op without OpenMP.
void set_threads(int threads);

/// Sum over fixed-size blocks, blocks combined left to right. The block layout
/// does not depend on the thread count, so the result is bitwise reproducible.
double deterministic_sum(std::span<const double> values);

inline constexpr std::size_t reduction_block = 4096;

} // namespace ranksurprise
