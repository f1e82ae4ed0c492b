#include <cmath>

#include "segbench/dtw/dtw.hpp"

namespace segbench {

RawColumnProfiles raw_column_profiles(const BinaryImage& image) {
    const auto w = static_cast<std::size_t>(image.width());
    RawColumnProfiles p;
    p.projection.assign(w, 0);
    p.upper.assign(w, image.height());
    p.lower.assign(w, image.height());
    p.transitions.assign(w, 0);
    for (int x = 0; x < image.width(); ++x) {
        const auto col = static_cast<std::size_t>(x);
        bool previous = false;
        for (int y = 0; y < image.height(); ++y) {
            const bool ink = image.ink(x, y);
            if (ink) {
                ++p.projection[col];
                if (p.upper[col] == image.height()) p.upper[col] = y;
                p.lower[col] = y;
                if (!previous) ++p.transitions[col];
            }
            previous = ink;
        }
    }
    return p;
}

namespace {

void z_normalize(const std::vector<int>& raw, std::vector<ColumnProfileSequence::Column>& out, std::size_t feature) {
    const auto n = static_cast<double>(raw.size());
    double mean = 0.0;
    for (const int v : raw) mean += v;
    mean /= n;
    double var = 0.0;
    for (const int v : raw) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    for (std::size_t i = 0; i < raw.size(); ++i) out[i][feature] = sd > 0.0 ? (raw[i] - mean) / sd : 0.0;
}

}  // namespace

ColumnProfileSequence column_profiles(const BinaryImage& image) {
    ColumnProfileSequence seq;
    if (image.empty()) return seq;
    const auto raw = raw_column_profiles(image);
    seq.columns.resize(raw.projection.size());
    z_normalize(raw.projection, seq.columns, 0);
    z_normalize(raw.upper, seq.columns, 1);
    z_normalize(raw.lower, seq.columns, 2);
    z_normalize(raw.transitions, seq.columns, 3);
    return seq;
}

}  // namespace segbench
