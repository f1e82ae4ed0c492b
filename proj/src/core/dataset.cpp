#include "segbench/core/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <unordered_set>

#include "segbench/core/error.hpp"
#include "segbench/core/image_io.hpp"
#include "segbench/core/text.hpp"

namespace segbench {

Dataset::Dataset(std::string name, std::vector<PageImage> pages, std::vector<WordSample> samples)
    : name_(std::move(name)), pages_(std::move(pages)), samples_(std::move(samples)) {
    for (std::size_t i = 0; i < pages_.size(); ++i) {
        const auto& page = pages_[i];
        if (page.pixels.width() < 1 || page.pixels.height() < 1) {
            throw DataError("page '" + page.page_id + "' has no pixels");
        }
        if (!page_index_.emplace(page.page_id, i).second) {
            throw DataError("duplicate page id '" + page.page_id + "'");
        }
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!by_id_.emplace(s.sample_id, i).second) {
            throw DataError("duplicate sample id " + std::to_string(s.sample_id));
        }
        if (s.transcription.empty()) {
            throw DataError("sample " + std::to_string(s.sample_id) + " has an empty transcription");
        }
        if (!s.box.valid()) throw DataError("sample " + std::to_string(s.sample_id) + " has an invalid box");
        const auto it = page_index_.find(s.page_id);
        if (it == page_index_.end()) {
            throw DataError("sample " + std::to_string(s.sample_id) + " refers to unknown page '" + s.page_id + "'");
        }
        const auto& px = pages_[it->second].pixels;
        if (intersection_area(s.box, BoundingBox{0, 0, px.width(), px.height()}) == 0) {
            throw DataError("sample " + std::to_string(s.sample_id) + " lies outside its page");
        }
    }
}

const PageImage& Dataset::page(const std::string& page_id) const {
    const auto it = page_index_.find(page_id);
    if (it == page_index_.end()) throw DataError("unknown page '" + page_id + "'");
    return pages_[it->second];
}

const WordSample& Dataset::sample(SampleId id) const {
    const auto it = by_id_.find(id);
    if (it == by_id_.end()) throw DataError("unknown sample id " + std::to_string(id));
    return samples_[it->second];
}

Partition partition_pages(const Dataset& dataset, double train_fraction) {
    const auto pages = dataset.pages();
    if (pages.size() < 2) throw DataError("partitioning needs at least two pages");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("train fraction must lie in (0, 1)");
    }
    auto train_pages = static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(pages.size()) - 1e-9));
    train_pages = std::clamp<std::size_t>(train_pages, 1, pages.size() - 1);

    std::unordered_set<std::string> train_ids;
    for (std::size_t i = 0; i < train_pages; ++i) train_ids.insert(pages[i].page_id);

    Partition partition;
    for (const auto& s : dataset.samples()) {
        (train_ids.contains(s.page_id) ? partition.train : partition.test).push_back(s.sample_id);
    }
    return partition;
}

std::vector<SampleId> query_set(const Dataset& dataset, std::span<const SampleId> ids) {
    std::map<std::string, std::size_t> occurrences;
    for (const auto id : ids) ++occurrences[fold_case(dataset.sample(id).transcription)];
    std::vector<SampleId> queries;
    for (const auto id : ids) {
        if (occurrences[fold_case(dataset.sample(id).transcription)] >= 2) queries.push_back(id);
    }
    return queries;
}

namespace {

int parse_int(std::string_view field, const std::filesystem::path& path, std::size_t line_no) {
    field = trim(field);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": bad integer '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::vector<BoxRecord> read_box_records(const std::filesystem::path& path, bool require_transcription,
                                        std::vector<std::vector<std::string>>* extra) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    std::vector<BoxRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
        std::string_view view(line);
        while (!view.empty() && (view.back() == '\r' || view.back() == '\n')) view.remove_suffix(1);
        const auto fields = split(view, delim);
        const std::size_t needed = require_transcription ? 6 : 5;
        if (fields.size() < needed) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected at least " +
                            std::to_string(needed) + " columns");
        }
        BoxRecord rec;
        rec.page_id = std::string(trim(fields[0]));
        rec.box = {parse_int(fields[1], path, line_no), parse_int(fields[2], path, line_no),
                   parse_int(fields[3], path, line_no), parse_int(fields[4], path, line_no)};
        if (!rec.box.valid()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": degenerate box");
        }
        if (fields.size() > 5) rec.transcription = std::string(trim(fields[5]));
        if (require_transcription && rec.transcription.empty()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty transcription");
        }
        if (extra != nullptr) {
            auto& cols = extra->emplace_back();
            for (std::size_t k = 6; k < fields.size(); ++k) cols.emplace_back(trim(fields[k]));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_box_records(std::ostream& out, std::span<const BoxRecord> records) {
    for (const auto& r : records) {
        out << r.page_id << '\t' << r.box.left << '\t' << r.box.top << '\t' << r.box.right << '\t'
            << r.box.bottom << '\t' << r.transcription << '\n';
    }
}

Dataset load_dataset(const std::filesystem::path& ground_truth, const std::filesystem::path& image_dir,
                     std::string name) {
    const auto records = read_box_records(ground_truth);
    if (records.empty()) throw DataError("ground truth " + ground_truth.string() + " has no records");

    std::vector<std::string> page_order;
    std::unordered_set<std::string> seen;
    for (const auto& r : records) {
        if (seen.insert(r.page_id).second) page_order.push_back(r.page_id);
    }

    static constexpr std::string_view kExtensions[] = {".png", ".pgm", ".pbm", ".tif", ".tiff", ".bmp", ".jpg"};
    std::vector<PageImage> pages;
    for (const auto& page_id : page_order) {
        std::filesystem::path found;
        for (const auto ext : kExtensions) {
            auto candidate = image_dir / (page_id + std::string(ext));
            if (std::filesystem::exists(candidate)) {
                found = std::move(candidate);
                break;
            }
        }
        if (found.empty()) throw DataError("no image for page '" + page_id + "' in " + image_dir.string());
        pages.push_back({page_id, read_gray_image(found)});
    }

    std::vector<WordSample> samples;
    samples.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        samples.push_back({static_cast<SampleId>(i), records[i].page_id, records[i].box, records[i].transcription});
    }
    return Dataset(std::move(name), std::move(pages), std::move(samples));
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "pages");
    std::ofstream gt(dir / "ground_truth.txt");
    if (!gt) throw DataError("cannot write " + (dir / "ground_truth.txt").string());
    gt << "# page_id\tleft\ttop\tright\tbottom\ttranscription\n";
    std::vector<BoxRecord> records;
    for (const auto& s : dataset.samples()) records.push_back({s.page_id, s.box, s.transcription});
    write_box_records(gt, records);
    for (const auto& page : dataset.pages()) write_gray_image(dir / "pages" / (page.page_id + ".png"), page.pixels);
}

PartitionCounts count_partition(const Dataset& dataset, std::span<const SampleId> ids) {
    PartitionCounts counts;
    std::set<std::string> pages;
    std::set<std::string> words;
    for (const auto id : ids) {
        const auto& s = dataset.sample(id);
        pages.insert(s.page_id);
        words.insert(fold_case(s.transcription));
    }
    counts.pages = pages.size();
    counts.words = ids.size();
    counts.unique_words = words.size();
    counts.query_words = query_set(dataset, ids).size();
    return counts;
}

}  // namespace segbench
