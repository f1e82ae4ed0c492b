#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace segbench {

/// Simple case folding over UTF-8: ASCII, Latin-1, Latin Extended-A, Greek
/// and basic Cyrillic. Invalid byte sequences are copied through unchanged.
[[nodiscard]] std::string fold_case(std::string_view text);

[[nodiscard]] std::string_view trim(std::string_view text) noexcept;
[[nodiscard]] std::vector<std::string_view> split(std::string_view text, char delimiter);

/// Distortion level with four decimals, as used in file names and headers.
[[nodiscard]] std::string format_level(double level);
/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_exact(double value);
/// Strict full-field parse; std::nullopt on any leftover character.
[[nodiscard]] std::optional<double> parse_double(std::string_view text) noexcept;

}  // namespace segbench
