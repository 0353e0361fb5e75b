#pragma once

// Small text utilities shared by the readers and writers.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ranksurprise {

std::string_view trim(std::string_view s);

/// Splits one delimited line. Double-quoted fields may contain the delimiter;
/// a doubled quote inside a quoted field is a literal quote.
std::vector<std::string> split_delimited(std::string_view line, char delimiter);

/// Quotes a field if it contains the delimiter, a quote or leading/trailing space.
std::string csv_field(std::string_view value, char delimiter);

/// Shortest round-trip decimal representation; identical on every run.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);

} // namespace ranksurprise
