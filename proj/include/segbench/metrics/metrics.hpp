#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "segbench/core/dataset.hpp"
#include "segbench/metrics/distance_matrix.hpp"

namespace segbench {

/// Candidate ids per query, ascending distance, ties by ascending sample id.
struct Ranking {
    std::vector<SampleId> query_ids;
    std::vector<std::vector<SampleId>> order;
};

/// With `suppress_diagonal`, each query's own id is dropped from its list;
/// every query id must then appear among the candidates (std::invalid_argument).
[[nodiscard]] Ranking rank(const DistanceMatrix& matrix, bool suppress_diagonal);

/// Case-insensitive transcription equality.
[[nodiscard]] bool relevance(const WordSample& query, const WordSample& candidate);

/// Folded transcription per sample id; the relevance oracle for whole matrices.
class TranscriptionIndex {
public:
    TranscriptionIndex() = default;
    explicit TranscriptionIndex(std::span<const WordSample> samples);
    explicit TranscriptionIndex(const Dataset& dataset) : TranscriptionIndex(dataset.samples()) {}

    [[nodiscard]] bool relevant(SampleId query, SampleId candidate) const;
    [[nodiscard]] const std::string& folded(SampleId id) const;

private:
    std::unordered_map<SampleId, std::string> folded_;
};

/// Mean over relevant positions k of precision@k. Throws std::invalid_argument
/// when nothing is relevant.
[[nodiscard]] double average_precision(std::span<const std::uint8_t> relevances);
/// Relevant in the top R over R.
[[nodiscard]] double r_precision(std::span<const std::uint8_t> relevances, std::size_t total_relevant);
/// Relevant in the top k over min(k, list length); 0 for an empty list.
[[nodiscard]] double precision_at_k(std::span<const std::uint8_t> relevances, std::size_t k);

/// Fraction of queries whose top-1 candidate (diagonal kept) is their own id.
[[nodiscard]] double self_classification_accuracy(const DistanceMatrix& matrix);

/// Metrics of one query with the diagonal suppressed.
struct QueryMetrics {
    double average_precision = 0.0;
    double r_precision = 0.0;
    double accuracy = 0.0;
    double precision_at_10 = 0.0;
};

/// Relevance flags of each ranked list.
[[nodiscard]] std::vector<std::vector<std::uint8_t>> ranked_relevances(const Ranking& ranking,
                                                                       const TranscriptionIndex& index);

/// Diagonal-suppressed per-query metrics. Throws std::invalid_argument for a
/// query with no relevant candidate.
[[nodiscard]] std::vector<QueryMetrics> per_query_metrics(const DistanceMatrix& matrix,
                                                          const TranscriptionIndex& index);

namespace metric_names {
inline constexpr const char* kMeanAveragePrecision = "mAP";
inline constexpr const char* kRPrecision = "rPrecision";
inline constexpr const char* kAccuracy = "accuracy";
inline constexpr const char* kPrecisionAt10 = "P@10";
inline constexpr const char* kSelfClassification = "self_classification";
}  // namespace metric_names

struct ReportRow {
    double distortion_level = 1.0;
    std::string method;
    std::string metric;
    double value = 0.0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// Query-averaged mAP, rPrecision, accuracy and P@10 (diagonal suppressed)
/// plus self-classification (diagonal kept): five rows.
[[nodiscard]] std::vector<ReportRow> mean_metrics(const DistanceMatrix& matrix, const TranscriptionIndex& index,
                                                  double level, const std::string& method);

/// CSV with header distortion_level,method,metric,value.
void write_report(std::ostream& out, std::span<const ReportRow> rows, bool header = true);
void write_report(const std::filesystem::path& path, std::span<const ReportRow> rows);
[[nodiscard]] std::vector<ReportRow> read_report(const std::filesystem::path& path);

}  // namespace segbench
