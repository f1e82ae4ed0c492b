#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "segbench/core/geometry.hpp"
#include "segbench/metrics/metrics.hpp"

namespace segbench {

// Method independence ------------------------------------------------------

/// Sum of |position_a(i) - position_b(i)| over one query's lists, divided by
/// floor(n^2 / 2). Both lists must hold the same ids (std::invalid_argument).
[[nodiscard]] double normalized_footrule(std::span<const SampleId> a, std::span<const SampleId> b);

/// Normalized footrule averaged over queries; the rankings must cover the
/// same queries in the same order.
[[nodiscard]] double spearman_footrule(const Ranking& a, const Ranking& b);

/// 1 where AP is strictly above the median AP, else 0. Needs two or more values.
[[nodiscard]] std::vector<std::uint8_t> easy_hard_labels(std::span<const double> average_precisions);

/// Pearson correlation of two label vectors; empty when either is constant.
[[nodiscard]] std::optional<double> label_correlation(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Square method-by-method table, CSV with a header of method names. Missing
/// values print as "nan".
struct IndependenceTable {
    std::vector<std::string> methods;
    std::vector<std::optional<double>> values;  // row-major

    [[nodiscard]] std::optional<double> at(std::size_t i, std::size_t j) const { return values[i * methods.size() + j]; }
};

void write_independence_table(const std::filesystem::path& path, const IndependenceTable& table);

// Fusion ---------------------------------------------------------------------

/// Non-negative per-method weights summing to one.
struct FusionWeights {
    std::vector<double> weights;

    /// Throws std::invalid_argument for fewer than two weights, a negative
    /// weight, or a sum farther than 1e-9 from one.
    void validate() const;
};

/// Min-max rescales every row to [0,1]; constant rows become zeros.
[[nodiscard]] DistanceMatrix normalize_rows(const DistanceMatrix& matrix);

/// Weighted sum of row-normalized matrices. Throws DataError on mismatching axes.
[[nodiscard]] DistanceMatrix fuse_distances(std::span<const DistanceMatrix> matrices, const FusionWeights& weights);

/// All weight vectors on the simplex with the given step, in lexicographic order.
[[nodiscard]] std::vector<std::vector<double>> simplex_grid(std::size_t methods, double step = 0.1);

/// Grid point maximizing mean AP (diagonal suppressed) on the given matrices;
/// the lexicographically smallest point wins ties.
[[nodiscard]] FusionWeights weight_search(std::span<const DistanceMatrix> matrices, const TranscriptionIndex& index,
                                          double step = 0.1);

[[nodiscard]] double mean_average_precision(const DistanceMatrix& matrix, const TranscriptionIndex& index);

/// "fusion(a+b+...)".
[[nodiscard]] std::string fusion_name(std::span<const std::string> methods);

// Segmentation quality -----------------------------------------------------

struct SummaryStats {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

/// Linear-interpolation quartiles; empty input gives an empty result.
[[nodiscard]] std::optional<SummaryStats> summarize(std::span<const double> values);

struct IouEntry {
    std::size_t gt_index = 0;
    std::size_t proposal_index = 0;
    double iou = 0.0;
};

struct LabelledBox {
    std::string page_id;
    BoundingBox box;
};

struct SegQualityProfile {
    std::vector<LabelledBox> ground_truth;
    std::vector<LabelledBox> proposals;
    std::vector<IouEntry> matches;        // non-zero entries only
    std::vector<double> row_maxima;       // per ground-truth box
    std::vector<double> column_maxima;    // per proposal
    std::optional<SummaryStats> row_stats;
    std::optional<SummaryStats> column_stats;
};

/// Soft detection / recognition profile: IoU only within the same page.
[[nodiscard]] SegQualityProfile segmentation_quality(std::span<const LabelledBox> ground_truth,
                                                     std::span<const LabelledBox> proposals);

/// Writes `<prefix>_maxima.csv` (kind,page_id,box_index,max_iou) and
/// `<prefix>_summary.csv` (kind,count,min,q1,median,q3,max,mean).
void write_segmentation_quality(const std::filesystem::path& prefix, const SegQualityProfile& profile);

}  // namespace segbench
