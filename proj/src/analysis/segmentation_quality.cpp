#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "segbench/analysis/analysis.hpp"
#include "segbench/core/error.hpp"
#include "segbench/core/text.hpp"

namespace segbench {
namespace {

double quantile(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::optional<SummaryStats> summarize(std::span<const double> values) {
    if (values.empty()) return std::nullopt;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    SummaryStats s;
    s.min = sorted.front();
    s.max = sorted.back();
    s.q1 = quantile(sorted, 0.25);
    s.median = quantile(sorted, 0.5);
    s.q3 = quantile(sorted, 0.75);
    double sum = 0.0;
    for (const double v : sorted) sum += v;
    s.mean = sum / static_cast<double>(sorted.size());
    return s;
}

SegQualityProfile segmentation_quality(std::span<const LabelledBox> ground_truth,
                                       std::span<const LabelledBox> proposals) {
    SegQualityProfile profile;
    profile.ground_truth.assign(ground_truth.begin(), ground_truth.end());
    profile.proposals.assign(proposals.begin(), proposals.end());
    profile.row_maxima.assign(ground_truth.size(), 0.0);
    profile.column_maxima.assign(proposals.size(), 0.0);

    std::unordered_map<std::string, std::vector<std::size_t>> proposals_by_page;
    for (std::size_t j = 0; j < proposals.size(); ++j) proposals_by_page[proposals[j].page_id].push_back(j);

    for (std::size_t i = 0; i < ground_truth.size(); ++i) {
        const auto it = proposals_by_page.find(ground_truth[i].page_id);
        if (it == proposals_by_page.end()) continue;
        for (const auto j : it->second) {
            const double v = iou(ground_truth[i].box, proposals[j].box);
            if (v <= 0.0) continue;
            profile.matches.push_back({i, j, v});
            profile.row_maxima[i] = std::max(profile.row_maxima[i], v);
            profile.column_maxima[j] = std::max(profile.column_maxima[j], v);
        }
    }
    profile.row_stats = summarize(profile.row_maxima);
    profile.column_stats = summarize(profile.column_maxima);
    return profile;
}

void write_segmentation_quality(const std::filesystem::path& prefix, const SegQualityProfile& profile) {
    const auto maxima_path = prefix.string() + "_maxima.csv";
    std::ofstream maxima(maxima_path);
    if (!maxima) throw DataError("cannot write " + maxima_path);
    maxima << "kind,page_id,box_index,max_iou\n";
    for (std::size_t i = 0; i < profile.row_maxima.size(); ++i) {
        maxima << "row," << profile.ground_truth[i].page_id << ',' << i << ',' << format_exact(profile.row_maxima[i])
               << '\n';
    }
    for (std::size_t j = 0; j < profile.column_maxima.size(); ++j) {
        maxima << "column," << profile.proposals[j].page_id << ',' << j << ','
               << format_exact(profile.column_maxima[j]) << '\n';
    }

    const auto summary_path = prefix.string() + "_summary.csv";
    std::ofstream summary(summary_path);
    if (!summary) throw DataError("cannot write " + summary_path);
    summary << "kind,count,min,q1,median,q3,max,mean\n";
    auto emit = [&](const char* kind, std::size_t count, const std::optional<SummaryStats>& s) {
        summary << kind << ',' << count;
        if (s) {
            for (const double v : {s->min, s->q1, s->median, s->q3, s->max, s->mean}) summary << ',' << format_exact(v);
        } else {
            summary << ",nan,nan,nan,nan,nan,nan";
        }
        summary << '\n';
    };
    emit("row", profile.row_maxima.size(), profile.row_stats);
    emit("column", profile.column_maxima.size(), profile.column_stats);
}

}  // namespace segbench
