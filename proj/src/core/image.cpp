#include "segbench/core/image.hpp"

#include <algorithm>
#include <array>

#include "segbench/core/error.hpp"

namespace segbench {

std::size_t BinaryImage::ink_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(pixels().begin(), pixels().end(),
                                                  [](std::uint8_t p) { return p != 0; }));
}

GrayImage crop(const GrayImage& page, const BoundingBox& box) {
    const int x0 = std::max(box.left, 0);
    const int y0 = std::max(box.top, 0);
    const int x1 = std::min(box.right, page.width());
    const int y1 = std::min(box.bottom, page.height());
    if (!box.valid() || x0 >= x1 || y0 >= y1) throw DataError("empty crop");

    GrayImage out(box.width(), box.height());
    for (int y = y0; y < y1; ++y) {
        const auto src = page.row(y).subspan(static_cast<std::size_t>(x0), static_cast<std::size_t>(x1 - x0));
        std::copy(src.begin(), src.end(), &out.at(x0 - box.left, y - box.top));
    }
    return out;
}

int otsu_threshold(const GrayImage& image) {
    std::array<std::uint64_t, 256> hist{};
    for (const auto p : image.pixels()) ++hist[p];

    const double total = static_cast<double>(image.size());
    double sum_all = 0.0;
    for (int v = 0; v < 256; ++v) sum_all += static_cast<double>(v) * static_cast<double>(hist[v]);

    int best = -1;
    double best_var = 0.0;
    double weight0 = 0.0;
    double sum0 = 0.0;
    for (int t = 0; t < 255; ++t) {
        weight0 += static_cast<double>(hist[t]);
        sum0 += static_cast<double>(t) * static_cast<double>(hist[t]);
        const double weight1 = total - weight0;
        if (weight0 == 0.0 || weight1 == 0.0) continue;
        const double mean0 = sum0 / weight0;
        const double mean1 = (sum_all - sum0) / weight1;
        const double between = weight0 * weight1 * (mean0 - mean1) * (mean0 - mean1);
        if (between > best_var) {
            best_var = between;
            best = t;
        }
    }
    return best;
}

BinaryImage binarize(const GrayImage& image) {
    BinaryImage out(image.width(), image.height(), 0);
    const int threshold = otsu_threshold(image);
    if (threshold < 0) return out;
    auto src = image.pixels();
    auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] <= threshold ? 1 : 0;
    return out;
}

}  // namespace segbench
