#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "segbench/core/geometry.hpp"
#include "segbench/core/image.hpp"

namespace segbench {

using SampleId = std::int64_t;

struct WordSample {
    SampleId sample_id = 0;
    std::string page_id;
    BoundingBox box;
    std::string transcription;
};

struct PageImage {
    std::string page_id;
    GrayImage pixels;
};

/// Pages in document order plus their word samples. Immutable once built.
class Dataset {
public:
    Dataset() = default;

    /// Validates that ids are unique, transcriptions non-empty, boxes valid and
    /// overlapping their page, and every page id resolves. Throws DataError.
    Dataset(std::string name, std::vector<PageImage> pages, std::vector<WordSample> samples);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::span<const PageImage> pages() const noexcept { return pages_; }
    [[nodiscard]] std::span<const WordSample> samples() const noexcept { return samples_; }

    [[nodiscard]] const PageImage& page(const std::string& page_id) const;
    [[nodiscard]] const WordSample& sample(SampleId id) const;
    [[nodiscard]] bool contains(SampleId id) const noexcept { return by_id_.contains(id); }

private:
    std::string name_;
    std::vector<PageImage> pages_;
    std::vector<WordSample> samples_;
    std::unordered_map<std::string, std::size_t> page_index_;
    std::unordered_map<SampleId, std::size_t> by_id_;
};

struct Partition {
    std::vector<SampleId> train;
    std::vector<SampleId> test;
};

/// First ceil(train_fraction * pages) pages go to train, the rest to test.
/// Requires at least two pages and leaves at least one test page.
[[nodiscard]] Partition partition_pages(const Dataset& dataset, double train_fraction = 0.75);

/// Samples whose case-folded transcription occurs at least twice among `ids`.
/// Singletons stay in the database as distractors but never act as queries.
[[nodiscard]] std::vector<SampleId> query_set(const Dataset& dataset, std::span<const SampleId> ids);

/// One ground-truth record before ids are assigned.
struct BoxRecord {
    std::string page_id;
    BoundingBox box;
    std::string transcription;
};

/// Reads the ground-truth text format: page_id, left, top, right, bottom,
/// transcription. Tab separated; comma accepted when no tab is present.
/// Lines starting with '#' are comments. Extra trailing columns are
/// returned through `extra` when non-null.
[[nodiscard]] std::vector<BoxRecord> read_box_records(const std::filesystem::path& path,
                                                      bool require_transcription = true,
                                                      std::vector<std::vector<std::string>>* extra = nullptr);
void write_box_records(std::ostream& out, std::span<const BoxRecord> records);

/// Ground truth plus page images from `image_dir` (<page_id>.png/.pgm/.tif/...).
/// Sample ids follow record order starting at 0; page order is first appearance.
[[nodiscard]] Dataset load_dataset(const std::filesystem::path& ground_truth,
                                   const std::filesystem::path& image_dir, std::string name);

/// Writes `<dir>/ground_truth.txt` and one PNG per page.
void save_dataset(const Dataset& dataset, const std::filesystem::path& dir);

struct PartitionCounts {
    std::size_t pages = 0;
    std::size_t words = 0;
    std::size_t unique_words = 0;
    std::size_t query_words = 0;
};

[[nodiscard]] PartitionCounts count_partition(const Dataset& dataset, std::span<const SampleId> ids);

}  // namespace segbench
