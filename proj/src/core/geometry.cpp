#include "segbench/core/geometry.hpp"

#include <algorithm>

namespace segbench {

std::int64_t intersection_area(const BoundingBox& a, const BoundingBox& b) noexcept {
    const std::int64_t w = std::max(0, std::min(a.right, b.right) - std::max(a.left, b.left));
    const std::int64_t h = std::max(0, std::min(a.bottom, b.bottom) - std::max(a.top, b.top));
    return w * h;
}

double iou(const BoundingBox& a, const BoundingBox& b) noexcept {
    const std::int64_t inter = intersection_area(a, b);
    if (inter == 0) return 0.0;
    const std::int64_t uni = a.area() + b.area() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace segbench
