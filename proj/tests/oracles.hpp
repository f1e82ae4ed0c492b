#pragma once

// Brute-force reference implementations and random generators shared by the
// unit tests and the acceptance runner. Each oracle follows the plain
// definition, written without reusing library code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "segbench/core/geometry.hpp"
#include "segbench/core/image.hpp"
#include "segbench/descriptors/quadtree.hpp"
#include "segbench/dtw/dtw.hpp"

namespace oracle {

using segbench::BinaryImage;
using segbench::BoundingBox;
using segbench::GrayImage;

// Geometry -------------------------------------------------------------------

inline double pixel_iou(const BoundingBox& a, const BoundingBox& b) {
    const int x0 = std::min(a.left, b.left);
    const int y0 = std::min(a.top, b.top);
    const int x1 = std::max(a.right, b.right);
    const int y1 = std::max(a.bottom, b.bottom);
    long both = 0;
    long either = 0;
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            const bool in_a = x >= a.left && x < a.right && y >= a.top && y < a.bottom;
            const bool in_b = x >= b.left && x < b.right && y >= b.top && y < b.bottom;
            both += in_a && in_b;
            either += in_a || in_b;
        }
    }
    return either == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(either);
}

// Images ---------------------------------------------------------------------

inline GrayImage random_gray(std::mt19937_64& rng, int w, int h, int levels = 256) {
    GrayImage img(w, h);
    std::uniform_int_distribution<int> v(0, levels - 1);
    const int scale = levels > 1 ? 255 / (levels - 1) : 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.at(x, y) = static_cast<std::uint8_t>(v(rng) * scale);
    }
    return img;
}

inline BinaryImage random_binary(std::mt19937_64& rng, int w, int h, double density) {
    BinaryImage img(w, h);
    std::bernoulli_distribution ink(density);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.at(x, y) = ink(rng) ? 1 : 0;
    }
    return img;
}

// Quad-tree ------------------------------------------------------------------

/// Rounded (half up) mean ink position, region centre when empty.
inline segbench::Point centroid(const BinaryImage& img, const segbench::Region& r) {
    double sx = 0;
    double sy = 0;
    double n = 0;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (r.contains(x, y) && img.at(x, y) != 0) {
                sx += x;
                sy += y;
                n += 1;
            }
        }
    }
    if (n == 0) return {r.x0 + (r.x1 - r.x0) / 2, r.y0 + (r.y1 - r.y0) / 2};
    return {static_cast<int>(std::floor(sx / n + 0.5)), static_cast<int>(std::floor(sy / n + 0.5))};
}

// Local binary patterns ------------------------------------------------------

inline int lbp(const GrayImage& img, int x, int y) {
    struct N {
        int dx, dy, weight;
    };
    static constexpr N ring[8] = {{-1, -1, 1}, {0, -1, 2},  {1, -1, 4},  {1, 0, 8},
                                  {1, 1, 16},  {0, 1, 32}, {-1, 1, 64}, {-1, 0, 128}};
    int code = 0;
    for (const auto& n : ring) {
        if (img.at(x + n.dx, y + n.dy) >= img.at(x, y)) code += n.weight;
    }
    return code;
}

inline int circular_transitions(int code) {
    int t = 0;
    for (int k = 0; k < 8; ++k) t += ((code >> k) & 1) != ((code >> ((k + 1) % 8)) & 1);
    return t;
}

/// Bin of `code` under the uniform mapping.
inline int uniform_bin(int code) {
    if (circular_transitions(code) > 2) return 58;
    int bin = 0;
    for (int c = 0; c < code; ++c) bin += circular_transitions(c) <= 2;
    return bin;
}

/// Raw 20 x bins histograms; region membership by scanning every region.
inline std::vector<double> lbp_histograms(const GrayImage& img, const segbench::QuadTreeGrid& grid, bool uniform) {
    const int bins = uniform ? 59 : 256;
    std::vector<double> h(20 * bins, 0.0);
    const auto regions = grid.regions();
    for (int y = 1; y < img.height() - 1; ++y) {
        for (int x = 1; x < img.width() - 1; ++x) {
            const int code = lbp(img, x, y);
            const int bin = uniform ? uniform_bin(code) : code;
            for (int r = 0; r < 20; ++r) {
                if (regions[r].contains(x, y)) h[r * bins + bin] += 1.0;
            }
        }
    }
    return h;
}

// Oriented gradients -----------------------------------------------------------

/// Raw 20 x bins histograms with a triangular kernel around each bin centre,
/// the centres repeated every 180 degrees.
inline std::vector<double> hog_histograms(const GrayImage& img, const segbench::QuadTreeGrid& grid, int bins) {
    std::vector<double> h(20 * bins, 0.0);
    const auto regions = grid.regions();
    const double width = 180.0 / bins;
    for (int y = 1; y < img.height() - 1; ++y) {
        for (int x = 1; x < img.width() - 1; ++x) {
            const double gx = double(img.at(x + 1, y)) - double(img.at(x - 1, y));
            const double gy = double(img.at(x, y + 1)) - double(img.at(x, y - 1));
            const double mag = std::sqrt(gx * gx + gy * gy);
            if (mag == 0) continue;
            double angle = std::fmod(std::atan2(gy, gx) * 180.0 / std::numbers::pi + 360.0, 180.0);
            for (int b = 0; b < bins; ++b) {
                double weight = 0;
                for (const double shift : {-180.0, 0.0, 180.0}) {
                    weight += std::max(0.0, 1.0 - std::fabs(angle - (b * width + shift)) / width);
                }
                if (weight == 0) continue;
                for (int r = 0; r < 20; ++r) {
                    if (regions[r].contains(x, y)) h[r * bins + b] += mag * weight;
                }
            }
        }
    }
    return h;
}

// Dynamic time warping -----------------------------------------------------

struct DtwResult {
    double cost;
    std::size_t length;
};

/// Unconstrained DTW over the full cost table. Among equal-cost predecessors
/// the one with the shorter path wins.
inline DtwResult full_dtw(const segbench::ColumnProfileSequence& a, const segbench::ColumnProfileSequence& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> cost(n + 1, std::vector<double>(m + 1, inf));
    std::vector<std::vector<std::size_t>> len(n + 1, std::vector<std::size_t>(m + 1, 0));
    cost[0][0] = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            double d = 0;
            for (int f = 0; f < 4; ++f) d += (a.columns[i - 1][f] - b.columns[j - 1][f]) * (a.columns[i - 1][f] - b.columns[j - 1][f]);
            d = std::sqrt(d);
            double best = inf;
            std::size_t best_len = 0;
            const std::pair<std::size_t, std::size_t> preds[3] = {{i - 1, j - 1}, {i - 1, j}, {i, j - 1}};
            for (const auto& [pi, pj] : preds) {
                const double c = cost[pi][pj];
                if (c < best || (c == best && len[pi][pj] < best_len)) {
                    best = c;
                    best_len = len[pi][pj];
                }
            }
            cost[i][j] = best + d;
            len[i][j] = best_len + 1;
        }
    }
    return {cost[n][m], len[n][m]};
}

inline segbench::ColumnProfileSequence random_sequence(std::mt19937_64& rng, std::size_t length) {
    std::normal_distribution<double> v(0.0, 1.0);
    segbench::ColumnProfileSequence s;
    s.columns.resize(length);
    for (auto& c : s.columns) {
        for (auto& x : c) x = v(rng);
    }
    return s;
}

// Retrieval metrics ----------------------------------------------------------

inline int hits_in_top(const std::vector<std::uint8_t>& rel, std::size_t k) {
    int h = 0;
    for (std::size_t i = 0; i < k && i < rel.size(); ++i) h += rel[i];
    return h;
}

inline double average_precision(const std::vector<std::uint8_t>& rel) {
    double sum = 0;
    int relevant = 0;
    for (std::size_t k = 1; k <= rel.size(); ++k) {
        if (rel[k - 1]) {
            sum += static_cast<double>(hits_in_top(rel, k)) / static_cast<double>(k);
            ++relevant;
        }
    }
    return sum / relevant;
}

inline double r_precision(const std::vector<std::uint8_t>& rel) {
    const int r = hits_in_top(rel, rel.size());
    return static_cast<double>(hits_in_top(rel, r)) / r;
}

inline double precision_at(const std::vector<std::uint8_t>& rel, std::size_t k) {
    const std::size_t n = std::min(k, rel.size());
    if (n == 0) return 0.0;
    return static_cast<double>(hits_in_top(rel, n)) / static_cast<double>(n);
}

inline std::vector<std::uint8_t> pattern(unsigned bits, std::size_t n) {
    std::vector<std::uint8_t> rel(n);
    for (std::size_t i = 0; i < n; ++i) rel[i] = (bits >> i) & 1U;
    return rel;
}

}  // namespace oracle
