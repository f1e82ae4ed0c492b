#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "segbench/core/image.hpp"

namespace segbench {

/// Unnormalized per-column profiles of a binary word image.
struct RawColumnProfiles {
    std::vector<int> projection;   // ink count
    std::vector<int> upper;        // top-most ink row, height when empty
    std::vector<int> lower;        // bottom-most ink row, height when empty
    std::vector<int> transitions;  // background-to-ink changes scanning down; above row 0 counts as background
};

[[nodiscard]] RawColumnProfiles raw_column_profiles(const BinaryImage& image);

/// One 4-feature vector per column, each feature z-normalized over the
/// columns (population deviation; a constant feature becomes all zeros).
struct ColumnProfileSequence {
    using Column = std::array<double, 4>;
    std::vector<Column> columns;

    [[nodiscard]] std::size_t size() const noexcept { return columns.size(); }
    [[nodiscard]] bool empty() const noexcept { return columns.empty(); }

    friend bool operator==(const ColumnProfileSequence&, const ColumnProfileSequence&) = default;
};

[[nodiscard]] ColumnProfileSequence column_profiles(const BinaryImage& image);

struct DtwAlignment {
    double cost = 0.0;             // accumulated local cost along the optimal path
    std::size_t path_length = 0;   // cells visited, including both ends

    [[nodiscard]] double normalized() const noexcept {
        return path_length == 0 ? 0.0 : cost / static_cast<double>(path_length);
    }
};

inline constexpr double kDefaultBandFraction = 0.15;

/// Sakoe-Chiba half-width: max(ceil(fraction * max(n, m)), |n - m|).
[[nodiscard]] std::size_t dtw_band_half_width(std::size_t n, std::size_t m, double band_fraction) noexcept;

/// Banded DTW with steps (1,0), (0,1), (1,1) and Euclidean local cost. Among
/// equal-cost predecessors the shorter path wins, which keeps the result
/// symmetric in its arguments. Throws std::invalid_argument on empty input.
[[nodiscard]] DtwAlignment dtw_align(const ColumnProfileSequence& a, const ColumnProfileSequence& b,
                                     double band_fraction = kDefaultBandFraction);

/// Path-length normalized alignment cost.
[[nodiscard]] double dtw_distance(const ColumnProfileSequence& a, const ColumnProfileSequence& b,
                                  double band_fraction = kDefaultBandFraction);

}  // namespace segbench
