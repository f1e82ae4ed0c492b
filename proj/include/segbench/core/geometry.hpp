#pragma once

#include <cstdint>

namespace segbench {

/// Axis-aligned word box in page pixel coordinates, top-left origin.
/// Right and bottom are exclusive so width * height is the pixel count.
struct BoundingBox {
    int left = 0;
    int top = 0;
    int right = 1;
    int bottom = 1;

    [[nodiscard]] constexpr int width() const noexcept { return right - left; }
    [[nodiscard]] constexpr int height() const noexcept { return bottom - top; }
    [[nodiscard]] constexpr std::int64_t area() const noexcept {
        return static_cast<std::int64_t>(width()) * height();
    }
    [[nodiscard]] constexpr bool valid() const noexcept { return left < right && top < bottom; }
    [[nodiscard]] constexpr BoundingBox translated(int dx, int dy) const noexcept {
        return {left + dx, top + dy, right + dx, bottom + dy};
    }

    friend constexpr bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Intersection over union of two boxes. Disjoint boxes give 0.
[[nodiscard]] double iou(const BoundingBox& a, const BoundingBox& b) noexcept;

/// Overlap area, zero when the boxes do not intersect.
[[nodiscard]] std::int64_t intersection_area(const BoundingBox& a, const BoundingBox& b) noexcept;

}  // namespace segbench
