#include <cmath>
#include <numbers>
#include <stdexcept>

#include "segbench/descriptors/descriptors.hpp"

namespace segbench {

std::vector<double> hog_histograms(const GrayImage& image, const QuadTreeGrid& grid, const DescriptorConfig& config) {
    if (config.hog_bins < 1) throw std::invalid_argument("HOG needs at least one bin");
    const auto bins = static_cast<std::size_t>(config.hog_bins);
    const double bin_width = 180.0 / static_cast<double>(bins);
    std::vector<double> hist(QuadTreeGrid::kRegionCount * bins, 0.0);

    for (int y = 1; y + 1 < image.height(); ++y) {
        for (int x = 1; x + 1 < image.width(); ++x) {
            const double gx = static_cast<double>(image.at(x + 1, y)) - image.at(x - 1, y);
            const double gy = static_cast<double>(image.at(x, y + 1)) - image.at(x, y - 1);
            const double magnitude = std::hypot(gx, gy);
            if (magnitude == 0.0) continue;

            double angle = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
            if (angle < 0.0) angle += 180.0;
            if (angle >= 180.0) angle -= 180.0;
            const double pos = angle / bin_width;
            const double lower = std::floor(pos);
            const double frac = pos - lower;
            const std::size_t b0 = static_cast<std::size_t>(lower) % bins;
            const std::size_t b1 = (b0 + 1) % bins;

            for (const std::size_t region : {grid.level1_index(x, y), 4 + grid.level2_index(x, y)}) {
                hist[region * bins + b0] += magnitude * (1.0 - frac);
                hist[region * bins + b1] += magnitude * frac;
            }
        }
    }
    return hist;
}

FeatureVector hog_descriptor(const GrayImage& image, const DescriptorConfig& config) {
    if (image.width() < 3 || image.height() < 3) throw std::invalid_argument("HOG needs at least a 3x3 image");
    const auto grid = quadtree_partition(binarize(image));
    FeatureVector fv{DescriptorKind::hog, hog_histograms(image, grid, config)};
    const auto bins = static_cast<std::size_t>(config.hog_bins);
    for (std::size_t r = 0; r < QuadTreeGrid::kRegionCount; ++r) {
        l2_normalize(std::span(fv.values).subspan(r * bins, bins));
    }
    l2_normalize(fv.values);
    return fv;
}

}  // namespace segbench
