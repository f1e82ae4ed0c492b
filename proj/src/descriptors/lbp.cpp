#include <bit>
#include <stdexcept>

#include "segbench/descriptors/descriptors.hpp"

namespace segbench {
namespace {

constexpr std::array<Point, 8> kNeighbours{{{-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}}};

std::array<std::uint8_t, 256> build_uniform_table() noexcept {
    std::array<std::uint8_t, 256> table{};
    std::uint8_t next = 0;
    for (unsigned code = 0; code < 256; ++code) {
        const auto c = static_cast<std::uint8_t>(code);
        const int transitions = std::popcount(static_cast<unsigned>(c ^ std::rotl(c, 1)));
        table[code] = transitions <= 2 ? next++ : 58;
    }
    return table;
}

}  // namespace

std::uint8_t lbp_code(const GrayImage& image, int x, int y) noexcept {
    const auto centre = image.at(x, y);
    std::uint8_t code = 0;
    for (std::size_t k = 0; k < kNeighbours.size(); ++k) {
        if (image.at(x + kNeighbours[k].x, y + kNeighbours[k].y) >= centre) code |= static_cast<std::uint8_t>(1U << k);
    }
    return code;
}

const std::array<std::uint8_t, 256>& uniform_lbp_table() noexcept {
    static const auto table = build_uniform_table();
    return table;
}

std::vector<double> lbp_histograms(const GrayImage& image, const QuadTreeGrid& grid, const DescriptorConfig& config) {
    const std::size_t bins = config.lbp_bins();
    const auto& table = uniform_lbp_table();
    std::vector<double> hist(QuadTreeGrid::kRegionCount * bins, 0.0);
    for (int y = 1; y + 1 < image.height(); ++y) {
        for (int x = 1; x + 1 < image.width(); ++x) {
            const auto code = lbp_code(image, x, y);
            const std::size_t bin = config.lbp_uniform ? table[code] : code;
            hist[grid.level1_index(x, y) * bins + bin] += 1.0;
            hist[(4 + grid.level2_index(x, y)) * bins + bin] += 1.0;
        }
    }
    return hist;
}

FeatureVector lbp_descriptor(const GrayImage& image, const DescriptorConfig& config) {
    if (image.width() < 3 || image.height() < 3) throw std::invalid_argument("LBP needs at least a 3x3 image");
    const auto grid = quadtree_partition(binarize(image));
    FeatureVector fv{DescriptorKind::lbp, lbp_histograms(image, grid, config)};
    const std::size_t bins = config.lbp_bins();
    for (std::size_t r = 0; r < QuadTreeGrid::kRegionCount; ++r) {
        l1_normalize(std::span(fv.values).subspan(r * bins, bins));
    }
    l2_normalize(fv.values);
    return fv;
}

}  // namespace segbench
