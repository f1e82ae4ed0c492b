#pragma once

#include <array>
#include <cstddef>

#include "segbench/core/image.hpp"

namespace segbench {

struct Point {
    int x = 0;
    int y = 0;
    friend constexpr bool operator==(const Point&, const Point&) = default;
};

/// Half-open pixel rectangle. May be empty only when its parent had extent 1.
struct Region {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    [[nodiscard]] constexpr int width() const noexcept { return x1 - x0; }
    [[nodiscard]] constexpr int height() const noexcept { return y1 - y0; }
    [[nodiscard]] constexpr long area() const noexcept { return static_cast<long>(width()) * height(); }
    [[nodiscard]] constexpr bool contains(int x, int y) const noexcept {
        return x >= x0 && x < x1 && y >= y0 && y < y1;
    }
    friend constexpr bool operator==(const Region&, const Region&) = default;
};

/// Rounded mean of the ink coordinates inside `region`; the region centre
/// when it holds no ink.
[[nodiscard]] Point geometric_centroid(const BinaryImage& image, const Region& region);

/// Two-level centroid subdivision. Quadrants are ordered top-left, top-right,
/// bottom-left, bottom-right; level 2 lists the four children of each level-1
/// quadrant in that order.
struct QuadTreeGrid {
    static constexpr std::size_t kRegionCount = 20;

    Point root_split;
    std::array<Point, 4> quadrant_splits{};
    std::array<Region, 4> level1{};
    std::array<Region, 16> level2{};

    [[nodiscard]] std::array<Region, kRegionCount> regions() const;

    /// Index in [0,4) of the level-1 quadrant holding (x, y).
    [[nodiscard]] std::size_t level1_index(int x, int y) const noexcept;
    /// Index in [0,16) of the level-2 region holding (x, y).
    [[nodiscard]] std::size_t level2_index(int x, int y) const noexcept;
};

/// Splits `region` at `split` into four quadrants. The split is clamped so
/// both halves keep at least one pixel whenever the extent allows it.
[[nodiscard]] std::array<Region, 4> split_region(const Region& region, Point split) noexcept;

[[nodiscard]] QuadTreeGrid quadtree_partition(const BinaryImage& image);

}  // namespace segbench
