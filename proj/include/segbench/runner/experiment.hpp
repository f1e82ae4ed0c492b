#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "segbench/analysis/analysis.hpp"
#include "segbench/core/dataset.hpp"
#include "segbench/distortion/distortion.hpp"
#include "segbench/metrics/metrics.hpp"
#include "segbench/runner/config.hpp"
#include "segbench/runner/methods.hpp"
#include "segbench/runner/representation_cache.hpp"

namespace segbench {

/// Validates an external matrix against the expected axes and returns it with
/// rows and columns reordered to match. Throws DataError listing up to ten
/// offending ids when the id sets differ.
[[nodiscard]] DistanceMatrix import_external_matrix(const std::filesystem::path& path,
                                                    std::span<const SampleId> expected_queries,
                                                    std::span<const SampleId> expected_candidates);

/// Deterministic random-retrieval baseline used as context in the
/// independence tables.
[[nodiscard]] DistanceMatrix random_matrix(std::span<const SampleId> queries, std::span<const SampleId> candidates,
                                           std::uint64_t seed);

/// One dataset, one configuration: the distortion sweep and everything derived
/// from it. Outputs go below config.output_dir:
///   distorted/level_<l>.txt           distorted databases
///   cache/<method>-<hash>/level_<l>.bin, train.bin   representations
///   matrices/<method>/level_<l>.txt   distance matrices (retrieve / keep_matrices)
///   reports/<method>/level_<l>.csv    per-cell metric rows
///   report.csv                        merged metric rows
class Experiment {
public:
    /// Validates the config and loads the dataset from disk.
    explicit Experiment(ExperimentConfig config);
    /// Uses an in-memory dataset; the config's dataset paths are ignored.
    Experiment(ExperimentConfig config, Dataset dataset);

    [[nodiscard]] const ExperimentConfig& config() const noexcept { return config_; }
    [[nodiscard]] const Dataset& dataset() const noexcept { return dataset_; }
    [[nodiscard]] const Partition& partition() const noexcept { return partition_; }
    [[nodiscard]] std::span<const WordSample> test_samples() const noexcept { return test_samples_; }
    [[nodiscard]] std::span<const SampleId> test_ids() const noexcept { return partition_.test; }
    [[nodiscard]] std::span<const SampleId> queries() const noexcept { return queries_; }
    [[nodiscard]] std::span<const SampleId> train_queries() const noexcept { return train_queries_; }
    [[nodiscard]] const TranscriptionIndex& transcriptions() const noexcept { return transcriptions_; }
    [[nodiscard]] MethodParams params() const;
    [[nodiscard]] std::vector<double> levels() const { return config_.effective_levels(); }

    /// Built-in then external method names, in configuration order.
    [[nodiscard]] std::vector<std::string> method_names() const;

    [[nodiscard]] DistortedDatabase distorted_database(double level) const;
    /// Writes every configured level to distorted/; returns the file paths.
    std::vector<std::filesystem::path> write_distorted_databases() const;

    /// Representations of every test sample cropped at `level` (cache-aware).
    [[nodiscard]] RepresentationSet representations(Method method, double level);
    /// Representations of every train sample, undistorted (cache-aware).
    [[nodiscard]] RepresentationSet train_representations(Method method);

    /// Undistorted queries against the test set distorted to `level`.
    [[nodiscard]] DistanceMatrix distance_matrix(Method method, double level);
    /// Train-split queries against the undistorted train split.
    [[nodiscard]] DistanceMatrix train_matrix(Method method);

    /// Built-in or external method by name. Reuses a stored matrix when present.
    [[nodiscard]] DistanceMatrix method_matrix(const std::string& name, double level);
    [[nodiscard]] DistanceMatrix method_train_matrix(const std::string& name);
    /// Whether a matrix for (name, level) can be produced.
    [[nodiscard]] bool has_level(const std::string& name, double level) const;

    /// Computes and stores distance matrices for every cell; existing files are kept.
    std::size_t retrieve_all();

    /// Five metric rows for one cell.
    [[nodiscard]] std::vector<ReportRow> evaluate(const std::string& name, double level);

    /// Every (level, method) cell. Cells with a report on disk are read back;
    /// failing cells are logged and skipped. Writes report.csv and returns its rows.
    std::vector<ReportRow> run_distortion_sweep();

    /// Footrule and easy/hard correlation tables at the analysis level, with
    /// a random baseline. Writes independence_footrule.csv and
    /// independence_correlation.csv.
    std::pair<IndependenceTable, IndependenceTable> independence();

    struct FusionResult {
        std::vector<std::string> methods;
        FusionWeights weights;
        std::vector<ReportRow> rows;
    };
    /// Weight search on the train split, then fused evaluation at every level.
    /// Rows are stored like any other method under reports/fusion(...)/.
    FusionResult fuse(std::vector<std::string> methods);

    /// Merges every per-cell report on disk into report.csv.
    std::vector<ReportRow> merge_reports();

    [[nodiscard]] std::filesystem::path report_path(const std::string& name, double level) const;
    [[nodiscard]] std::filesystem::path matrix_path(const std::string& name, double level) const;
    [[nodiscard]] std::filesystem::path cache_path(Method method, const std::string& stage) const;

private:
    void initialise();
    [[nodiscard]] RepresentationSet extract_boxes(Method method, std::span<const WordSample> samples,
                                                  std::span<const BoundingBox> boxes) const;
    [[nodiscard]] RepresentationSet cached(Method method, const std::string& stage, std::span<const WordSample> samples,
                                           std::span<const BoundingBox> boxes);
    [[nodiscard]] DistanceMatrix compute_matrix(Method method, std::span<const SampleId> query_ids,
                                                const RepresentationSet& queries,
                                                const RepresentationSet& candidates) const;
    [[nodiscard]] std::optional<std::filesystem::path> external_path(const std::string& name, double level) const;

    ExperimentConfig config_;
    Dataset dataset_;
    Partition partition_;
    std::vector<WordSample> test_samples_;
    std::vector<WordSample> train_samples_;
    std::vector<SampleId> queries_;
    std::vector<SampleId> train_queries_;
    TranscriptionIndex transcriptions_;
    std::map<Method, RepresentationSet> undistorted_;
};

}  // namespace segbench
