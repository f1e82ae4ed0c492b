#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "segbench/core/dataset.hpp"

namespace segbench {

/// Queries x candidates distances, row-major, with the sample ids of both axes.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    /// Zero-filled matrix. Throws DataError on duplicate ids.
    DistanceMatrix(std::vector<SampleId> query_ids, std::vector<SampleId> candidate_ids);
    /// Throws DataError on duplicate ids, a size mismatch, or a negative or
    /// non-finite value.
    DistanceMatrix(std::vector<SampleId> query_ids, std::vector<SampleId> candidate_ids, std::vector<double> values);

    [[nodiscard]] std::size_t rows() const noexcept { return query_ids_.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return candidate_ids_.size(); }
    [[nodiscard]] std::span<const SampleId> query_ids() const noexcept { return query_ids_; }
    [[nodiscard]] std::span<const SampleId> candidate_ids() const noexcept { return candidate_ids_; }

    [[nodiscard]] double at(std::size_t q, std::size_t c) const noexcept { return values_[q * cols() + c]; }
    double& at(std::size_t q, std::size_t c) noexcept { return values_[q * cols() + c]; }
    [[nodiscard]] std::span<const double> row(std::size_t q) const noexcept {
        return std::span(values_).subspan(q * cols(), cols());
    }
    [[nodiscard]] std::span<double> row(std::size_t q) noexcept {
        return std::span(values_).subspan(q * cols(), cols());
    }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// Re-checks the value invariants after in-place writes.
    void validate() const;

    [[nodiscard]] bool same_axes(const DistanceMatrix& other) const noexcept;

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::vector<SampleId> query_ids_;
    std::vector<SampleId> candidate_ids_;
    std::vector<double> values_;
};

/// Text format: "query_ids: ..." and "candidate_ids: ..." header lines, then
/// one whitespace-separated row per query. Values use round-trip precision.
void write_distance_matrix(std::ostream& out, const DistanceMatrix& matrix);
void write_distance_matrix(const std::filesystem::path& path, const DistanceMatrix& matrix);
/// Validates dimensions and values; errors carry the offending line number.
[[nodiscard]] DistanceMatrix read_distance_matrix(std::istream& in, const std::string& source = "<stream>");
[[nodiscard]] DistanceMatrix read_distance_matrix(const std::filesystem::path& path);

}  // namespace segbench
