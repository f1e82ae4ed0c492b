#pragma once

#include <filesystem>

#include "segbench/core/image.hpp"

namespace segbench {

/// Loads any raster format OpenCV understands, converted to 8-bit gray.
[[nodiscard]] GrayImage read_gray_image(const std::filesystem::path& path);
void write_gray_image(const std::filesystem::path& path, const GrayImage& image);

}  // namespace segbench
