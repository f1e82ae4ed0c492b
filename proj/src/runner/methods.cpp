#include "segbench/runner/methods.hpp"

#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "segbench/descriptors/descriptors.hpp"

namespace segbench {
namespace {

double to_float_precision(double v) noexcept { return static_cast<double>(static_cast<float>(v)); }

std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : text) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::quadtree: return "quadtree";
        case Method::lbp: return "lbp";
        case Method::hog: return "hog";
        case Method::dtw: return "dtw";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    for (const auto m : kAllMethods) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

Representation extract(Method method, const GrayImage& crop, const MethodParams& params) {
    if (crop.width() < 3 || crop.height() < 3) throw std::invalid_argument("word image smaller than 3x3");
    switch (method) {
        case Method::quadtree:
        case Method::lbp:
        case Method::hog: {
            FeatureVector fv = method == Method::quadtree ? quadtree_descriptor(binarize(crop))
                               : method == Method::lbp    ? lbp_descriptor(crop, params.descriptors)
                                                          : hog_descriptor(crop, params.descriptors);
            for (auto& v : fv.values) v = to_float_precision(v);
            return fv;
        }
        case Method::dtw: {
            auto seq = column_profiles(binarize(crop));
            for (auto& column : seq.columns) {
                for (auto& v : column) v = to_float_precision(v);
            }
            return seq;
        }
    }
    throw std::invalid_argument("unknown method");
}

double distance(Method method, const Representation& a, const Representation& b, const MethodParams& params) {
    if (method == Method::dtw) {
        const auto* sa = std::get_if<ColumnProfileSequence>(&a);
        const auto* sb = std::get_if<ColumnProfileSequence>(&b);
        if (sa == nullptr || sb == nullptr) throw std::invalid_argument("DTW needs profile sequences");
        return dtw_distance(*sa, *sb, params.band_fraction);
    }
    const auto* fa = std::get_if<FeatureVector>(&a);
    const auto* fb = std::get_if<FeatureVector>(&b);
    if (fa == nullptr || fb == nullptr) throw std::invalid_argument("descriptor method needs feature vectors");
    return descriptor_distance(*fa, *fb);
}

std::string parameter_hash(Method method, const MethodParams& params) {
    std::string key(to_string(method));
    switch (method) {
        case Method::quadtree: key += ";levels=2"; break;
        case Method::lbp: key += params.descriptors.lbp_uniform ? ";r=1;p=8;uniform" : ";r=1;p=8;full"; break;
        case Method::hog: key += ";bins=" + std::to_string(params.descriptors.hog_bins) + ";central"; break;
        case Method::dtw: key += ";profiles=4;z"; break;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
    return buf;
}

}  // namespace segbench
