#include "segbench/descriptors/quadtree.hpp"
#include "segbench/descriptors/descriptors.hpp"

#include <algorithm>
#include <cstdint>

namespace segbench {
namespace {

// Rounds sum / count half up; count > 0.
int rounded_mean(std::int64_t sum, std::int64_t count) noexcept {
    return static_cast<int>((2 * sum + count) / (2 * count));
}

int clamp_split(int split, int lo, int hi) noexcept {
    if (hi - lo < 2) return hi;
    return std::clamp(split, lo + 1, hi - 1);
}

Point clamp_point(const Region& region, Point split) noexcept {
    return {clamp_split(split.x, region.x0, region.x1), clamp_split(split.y, region.y0, region.y1)};
}

}  // namespace

Point geometric_centroid(const BinaryImage& image, const Region& region) {
    std::int64_t sx = 0;
    std::int64_t sy = 0;
    std::int64_t n = 0;
    for (int y = region.y0; y < region.y1; ++y) {
        const auto row = image.row(y);
        for (int x = region.x0; x < region.x1; ++x) {
            if (row[static_cast<std::size_t>(x)] != 0) {
                sx += x;
                sy += y;
                ++n;
            }
        }
    }
    if (n == 0) return {region.x0 + region.width() / 2, region.y0 + region.height() / 2};
    return {rounded_mean(sx, n), rounded_mean(sy, n)};
}

std::array<Region, 4> split_region(const Region& region, Point split) noexcept {
    const Point s = clamp_point(region, split);
    return {Region{region.x0, region.y0, s.x, s.y}, Region{s.x, region.y0, region.x1, s.y},
            Region{region.x0, s.y, s.x, region.y1}, Region{s.x, s.y, region.x1, region.y1}};
}

std::array<Region, QuadTreeGrid::kRegionCount> QuadTreeGrid::regions() const {
    std::array<Region, kRegionCount> out{};
    std::copy(level1.begin(), level1.end(), out.begin());
    std::copy(level2.begin(), level2.end(), out.begin() + 4);
    return out;
}

std::size_t QuadTreeGrid::level1_index(int x, int y) const noexcept {
    return (y >= root_split.y ? 2U : 0U) + (x >= root_split.x ? 1U : 0U);
}

std::size_t QuadTreeGrid::level2_index(int x, int y) const noexcept {
    const std::size_t q = level1_index(x, y);
    const Point s = quadrant_splits[q];
    return 4 * q + (y >= s.y ? 2U : 0U) + (x >= s.x ? 1U : 0U);
}

QuadTreeGrid quadtree_partition(const BinaryImage& image) {
    const Region whole{0, 0, image.width(), image.height()};
    QuadTreeGrid grid;
    grid.root_split = clamp_point(whole, geometric_centroid(image, whole));
    grid.level1 = split_region(whole, grid.root_split);
    for (std::size_t q = 0; q < 4; ++q) {
        const Region& quadrant = grid.level1[q];
        grid.quadrant_splits[q] = clamp_point(quadrant, geometric_centroid(image, quadrant));
        const auto children = split_region(quadrant, grid.quadrant_splits[q]);
        std::copy(children.begin(), children.end(), grid.level2.begin() + static_cast<std::ptrdiff_t>(4 * q));
    }
    return grid;
}


std::array<double, QuadTreeGrid::kRegionCount> quadtree_fractions(const BinaryImage& image) {
    std::array<double, QuadTreeGrid::kRegionCount> counts{};
    if (image.empty()) return counts;
    const auto grid = quadtree_partition(image);
    double total = 0.0;
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            if (!image.ink(x, y)) continue;
            counts[grid.level1_index(x, y)] += 1.0;
            counts[4 + grid.level2_index(x, y)] += 1.0;
            total += 1.0;
        }
    }
    if (total == 0.0) return counts;
    for (auto& c : counts) c /= total;
    return counts;
}

FeatureVector quadtree_descriptor(const BinaryImage& image) {
    const auto fractions = quadtree_fractions(image);
    FeatureVector fv{DescriptorKind::quadtree, {fractions.begin(), fractions.end()}};
    l2_normalize(fv.values);
    return fv;
}

}  // namespace segbench
