#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "segbench/dtw/dtw.hpp"

namespace segbench {
namespace {

struct Cell {
    double cost = std::numeric_limits<double>::infinity();
    std::size_t length = 0;
};

bool cheaper(const Cell& a, const Cell& b) noexcept {
    return a.cost < b.cost || (a.cost == b.cost && a.length < b.length);
}

double local_cost(const ColumnProfileSequence::Column& a, const ColumnProfileSequence::Column& b) noexcept {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace

std::size_t dtw_band_half_width(std::size_t n, std::size_t m, double band_fraction) noexcept {
    const auto longest = static_cast<double>(std::max(n, m));
    const auto band = static_cast<std::size_t>(std::ceil(band_fraction * longest));
    return std::max(band, n > m ? n - m : m - n);
}

DtwAlignment dtw_align(const ColumnProfileSequence& a, const ColumnProfileSequence& b, double band_fraction) {
    if (a.empty() || b.empty()) throw std::invalid_argument("DTW needs non-empty sequences");
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t band = dtw_band_half_width(n, m, band_fraction);

    // Two rolling rows over the full width; cells outside the band stay infinite.
    std::vector<Cell> prev(m);
    std::vector<Cell> curr(m);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j_lo = i > band ? i - band : 0;
        const std::size_t j_hi = std::min(m - 1, i + band);
        std::fill(curr.begin(), curr.end(), Cell{});
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            const double c = local_cost(a.columns[i], b.columns[j]);
            if (i == 0 && j == 0) {
                curr[j] = {c, 1};
                continue;
            }
            Cell best;
            if (i > 0 && j > 0 && cheaper(prev[j - 1], best)) best = prev[j - 1];
            if (i > 0 && cheaper(prev[j], best)) best = prev[j];
            if (j > 0 && cheaper(curr[j - 1], best)) best = curr[j - 1];
            curr[j] = {best.cost + c, best.length + 1};
        }
        std::swap(prev, curr);
    }
    return {prev[m - 1].cost, prev[m - 1].length};
}

double dtw_distance(const ColumnProfileSequence& a, const ColumnProfileSequence& b, double band_fraction) {
    return dtw_align(a, b, band_fraction).normalized();
}

}  // namespace segbench
