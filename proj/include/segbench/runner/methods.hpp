#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "segbench/core/image.hpp"
#include "segbench/descriptors/feature_vector.hpp"
#include "segbench/dtw/dtw.hpp"

namespace segbench {

/// Learning-free retrieval methods run by the harness.
enum class Method { quadtree, lbp, hog, dtw };

inline constexpr Method kAllMethods[] = {Method::quadtree, Method::lbp, Method::hog, Method::dtw};

[[nodiscard]] std::string_view to_string(Method method) noexcept;
[[nodiscard]] std::optional<Method> parse_method(std::string_view name) noexcept;

struct MethodParams {
    DescriptorConfig descriptors;
    double band_fraction = kDefaultBandFraction;
};

/// Fixed-length descriptor or per-column profile sequence. Values are always
/// rounded to float precision so cached and fresh representations agree.
using Representation = std::variant<FeatureVector, ColumnProfileSequence>;

/// Crop-to-representation step. Throws std::invalid_argument for crops below 3x3.
[[nodiscard]] Representation extract(Method method, const GrayImage& crop, const MethodParams& params);

/// Throws std::invalid_argument when the representation does not fit the method.
[[nodiscard]] double distance(Method method, const Representation& a, const Representation& b,
                              const MethodParams& params);

/// Short hex hash of the extraction parameters that affect `method`.
[[nodiscard]] std::string parameter_hash(Method method, const MethodParams& params);

}  // namespace segbench
