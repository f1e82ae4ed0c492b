#include "segbench/descriptors/feature_vector.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace segbench {

std::string_view to_string(DescriptorKind kind) noexcept {
    switch (kind) {
        case DescriptorKind::quadtree: return "quadtree";
        case DescriptorKind::lbp: return "lbp";
        case DescriptorKind::hog: return "hog";
    }
    return "unknown";
}

double FeatureVector::norm() const noexcept {
    return std::sqrt(std::inner_product(values.begin(), values.end(), values.begin(), 0.0));
}

void l2_normalize(std::span<double> values) noexcept {
    const double n = std::sqrt(std::inner_product(values.begin(), values.end(), values.begin(), 0.0));
    if (n == 0.0) return;
    for (auto& v : values) v /= n;
}

void l1_normalize(std::span<double> values) noexcept {
    double n = 0.0;
    for (const double v : values) n += std::abs(v);
    if (n == 0.0) return;
    for (auto& v : values) v /= n;
}

double descriptor_distance(const FeatureVector& a, const FeatureVector& b) {
    if (a.kind != b.kind) throw std::invalid_argument("descriptor kinds differ");
    if (a.values.size() != b.values.size()) throw std::invalid_argument("descriptor dimensions differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace segbench
