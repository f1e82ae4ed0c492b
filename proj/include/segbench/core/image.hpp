#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "segbench/core/geometry.hpp"

namespace segbench {

inline constexpr std::uint8_t kBackground = 255;

namespace detail {

template <typename Pixel>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, Pixel fill = Pixel{})
        : width_(width), height_(height),
          pixels_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
        assert(width >= 0 && height >= 0);
    }

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] bool empty() const noexcept { return pixels_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return pixels_.size(); }

    [[nodiscard]] Pixel at(int x, int y) const noexcept { return pixels_[index(x, y)]; }
    Pixel& at(int x, int y) noexcept { return pixels_[index(x, y)]; }

    [[nodiscard]] std::span<const Pixel> row(int y) const noexcept {
        return {pixels_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
    }
    [[nodiscard]] std::span<const Pixel> pixels() const noexcept { return pixels_; }
    [[nodiscard]] std::span<Pixel> pixels() noexcept { return pixels_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    [[nodiscard]] std::size_t index(int x, int y) const noexcept {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<Pixel> pixels_;
};

}  // namespace detail

/// 8-bit grayscale raster, 0 = black ink, 255 = paper.
class GrayImage : public detail::Grid<std::uint8_t> {
public:
    using Grid::Grid;
    GrayImage(int width, int height) : Grid(width, height, kBackground) {}
};

/// Foreground mask, 1 = ink.
class BinaryImage : public detail::Grid<std::uint8_t> {
public:
    using Grid::Grid;
    [[nodiscard]] bool ink(int x, int y) const noexcept { return at(x, y) != 0; }
    [[nodiscard]] std::size_t ink_count() const noexcept;
};

/// Sub-image under `box`. Parts outside the page are filled with white.
/// Throws DataError("empty crop") when the box misses the page entirely.
[[nodiscard]] GrayImage crop(const GrayImage& page, const BoundingBox& box);

/// Otsu threshold over the 256-bin histogram: the largest gray level that
/// still belongs to the ink class. Returns -1 for images with a single level.
[[nodiscard]] int otsu_threshold(const GrayImage& image);

/// Global Otsu binarization; ink = pixels at or below the threshold.
[[nodiscard]] BinaryImage binarize(const GrayImage& image);

}  // namespace segbench
