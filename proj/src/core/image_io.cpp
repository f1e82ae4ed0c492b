#include "segbench/core/image_io.hpp"

#include <cstring>

#include <opencv2/imgcodecs.hpp>

#include "segbench/core/error.hpp"

namespace segbench {

GrayImage read_gray_image(const std::filesystem::path& path) {
    const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    if (mat.empty() || mat.type() != CV_8UC1) throw DataError("cannot read image " + path.string());
    GrayImage image(mat.cols, mat.rows);
    for (int y = 0; y < mat.rows; ++y) {
        std::memcpy(&image.at(0, y), mat.ptr<std::uint8_t>(y), static_cast<std::size_t>(mat.cols));
    }
    return image;
}

void write_gray_image(const std::filesystem::path& path, const GrayImage& image) {
    cv::Mat mat(image.height(), image.width(), CV_8UC1);
    for (int y = 0; y < image.height(); ++y) {
        std::memcpy(mat.ptr<std::uint8_t>(y), image.row(y).data(), static_cast<std::size_t>(image.width()));
    }
    if (!cv::imwrite(path.string(), mat)) throw DataError("cannot write image " + path.string());
}

}  // namespace segbench
