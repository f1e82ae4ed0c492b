#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "segbench/analysis/analysis.hpp"
#include "segbench/core/error.hpp"

namespace segbench {

void FusionWeights::validate() const {
    if (weights.size() < 2) throw std::invalid_argument("fusion needs at least two methods");
    double sum = 0.0;
    for (const double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("fusion weights must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("fusion weights must sum to one");
}

DistanceMatrix normalize_rows(const DistanceMatrix& matrix) {
    DistanceMatrix out = matrix;
    for (std::size_t q = 0; q < out.rows(); ++q) {
        auto row = out.row(q);
        if (row.empty()) continue;
        const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
        const double min = *lo;
        const double range = *hi - *lo;
        for (auto& v : row) v = range > 0.0 ? (v - min) / range : 0.0;
    }
    return out;
}

DistanceMatrix fuse_distances(std::span<const DistanceMatrix> matrices, const FusionWeights& weights) {
    weights.validate();
    if (matrices.size() != weights.weights.size()) throw std::invalid_argument("one weight per matrix required");
    for (const auto& m : matrices.subspan(1)) {
        if (!m.same_axes(matrices.front())) throw DataError("fused matrices have different query or candidate ids");
    }
    const auto& first = matrices.front();
    DistanceMatrix fused({first.query_ids().begin(), first.query_ids().end()},
                         {first.candidate_ids().begin(), first.candidate_ids().end()});
    for (std::size_t k = 0; k < matrices.size(); ++k) {
        const double w = weights.weights[k];
        if (w == 0.0) continue;
        const auto normalized = normalize_rows(matrices[k]);
        for (std::size_t q = 0; q < fused.rows(); ++q) {
            auto dst = fused.row(q);
            const auto src = normalized.row(q);
            for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += w * src[c];
        }
    }
    return fused;
}

std::vector<std::vector<double>> simplex_grid(std::size_t methods, double step) {
    if (methods == 0) return {};
    if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("grid step must lie in (0,1]");
    const auto units = static_cast<int>(std::lround(1.0 / step));
    std::vector<std::vector<double>> grid;
    std::vector<int> parts(methods, 0);
    // Enumerate compositions of `units` in lexicographic order of the parts.
    std::function<void(std::size_t, int)> recurse = [&](std::size_t k, int remaining) {
        if (k + 1 == methods) {
            parts[k] = remaining;
            std::vector<double> w(methods);
            for (std::size_t i = 0; i < methods; ++i) w[i] = static_cast<double>(parts[i]) / units;
            grid.push_back(std::move(w));
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            parts[k] = v;
            recurse(k + 1, remaining - v);
        }
    };
    recurse(0, units);
    return grid;
}

double mean_average_precision(const DistanceMatrix& matrix, const TranscriptionIndex& index) {
    const auto per_query = per_query_metrics(matrix, index);
    if (per_query.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& m : per_query) sum += m.average_precision;
    return sum / static_cast<double>(per_query.size());
}

FusionWeights weight_search(std::span<const DistanceMatrix> matrices, const TranscriptionIndex& index, double step) {
    if (matrices.size() < 2) throw std::invalid_argument("weight search needs at least two matrices");
    // Differences below this are rounding noise from the weighted sums.
    constexpr double kTieTolerance = 1e-12;
    FusionWeights best;
    double best_score = -1.0;
    for (auto& w : simplex_grid(matrices.size(), step)) {
        const double score = mean_average_precision(fuse_distances(matrices, FusionWeights{w}), index);
        if (score > best_score + kTieTolerance) {
            best_score = score;
            best.weights = std::move(w);
        }
    }
    return best;
}

std::string fusion_name(std::span<const std::string> methods) {
    std::string name = "fusion(";
    for (std::size_t i = 0; i < methods.size(); ++i) {
        if (i > 0) name += '+';
        name += methods[i];
    }
    return name + ")";
}

}  // namespace segbench
