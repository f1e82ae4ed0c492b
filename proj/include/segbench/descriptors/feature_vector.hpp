#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace segbench {

enum class DescriptorKind { quadtree, lbp, hog };

[[nodiscard]] std::string_view to_string(DescriptorKind kind) noexcept;

struct FeatureVector {
    DescriptorKind kind = DescriptorKind::quadtree;
    std::vector<double> values;

    [[nodiscard]] std::size_t dimension() const noexcept { return values.size(); }
    [[nodiscard]] double norm() const noexcept;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Tunable knobs of the texture descriptors.
struct DescriptorConfig {
    int hog_bins = 9;
    bool lbp_uniform = true;  // 59-bin uniform mapping, otherwise all 256 codes

    [[nodiscard]] std::size_t lbp_bins() const noexcept { return lbp_uniform ? 59 : 256; }
};

/// Scales to unit L2 norm; a zero vector stays zero.
void l2_normalize(std::span<double> values) noexcept;
/// Scales to unit L1 norm; a zero vector stays zero.
void l1_normalize(std::span<double> values) noexcept;

/// Euclidean distance. Throws std::invalid_argument on kind or size mismatch.
[[nodiscard]] double descriptor_distance(const FeatureVector& a, const FeatureVector& b);

}  // namespace segbench
