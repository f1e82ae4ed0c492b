#include "segbench/runner/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "segbench/core/error.hpp"
#include "segbench/core/text.hpp"
#include "segbench/runner/parallel.hpp"

namespace segbench {
namespace {

std::uint64_t mix(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string level_stem(double level) { return "level_" + format_level(level); }

// Ids in `found` but not `expected`, then the reverse; at most ten.
std::vector<std::string> offenders(std::span<const SampleId> found, std::span<const SampleId> expected) {
    std::vector<std::string> out;
    const std::unordered_set<SampleId> e(expected.begin(), expected.end());
    const std::unordered_set<SampleId> f(found.begin(), found.end());
    for (const auto id : found) {
        if (out.size() == 10) return out;
        if (!e.contains(id)) out.push_back("unexpected " + std::to_string(id));
    }
    for (const auto id : expected) {
        if (out.size() == 10) return out;
        if (!f.contains(id)) out.push_back("missing " + std::to_string(id));
    }
    return out;
}

void write_report_atomically(const std::filesystem::path& path, std::span<const ReportRow> rows) {
    std::filesystem::create_directories(path.parent_path());
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    write_report(tmp, rows);
    std::filesystem::rename(tmp, path);
}

void write_matrix_atomically(const std::filesystem::path& path, const DistanceMatrix& matrix) {
    std::filesystem::create_directories(path.parent_path());
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    write_distance_matrix(tmp, matrix);
    std::filesystem::rename(tmp, path);
}

}  // namespace

DistanceMatrix import_external_matrix(const std::filesystem::path& path, std::span<const SampleId> expected_queries,
                                      std::span<const SampleId> expected_candidates) {
    const auto raw = read_distance_matrix(path);
    auto bad = offenders(raw.query_ids(), expected_queries);
    for (auto& b : offenders(raw.candidate_ids(), expected_candidates)) {
        if (bad.size() < 10) bad.push_back("candidate " + b);
    }
    if (!bad.empty()) {
        std::string msg = path.string() + ": ids do not match the dataset:";
        for (const auto& b : bad) msg += " [" + b + "]";
        throw DataError(msg);
    }
    std::unordered_map<SampleId, std::size_t> row_of;
    std::unordered_map<SampleId, std::size_t> col_of;
    for (std::size_t i = 0; i < raw.rows(); ++i) row_of.emplace(raw.query_ids()[i], i);
    for (std::size_t j = 0; j < raw.cols(); ++j) col_of.emplace(raw.candidate_ids()[j], j);
    DistanceMatrix out({expected_queries.begin(), expected_queries.end()},
                       {expected_candidates.begin(), expected_candidates.end()});
    for (std::size_t i = 0; i < out.rows(); ++i) {
        const auto src = row_of.at(expected_queries[i]);
        for (std::size_t j = 0; j < out.cols(); ++j) out.at(i, j) = raw.at(src, col_of.at(expected_candidates[j]));
    }
    return out;
}

DistanceMatrix random_matrix(std::span<const SampleId> queries, std::span<const SampleId> candidates,
                             std::uint64_t seed) {
    DistanceMatrix m({queries.begin(), queries.end()}, {candidates.begin(), candidates.end()});
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto h = mix(mix(seed ^ 0x52414e44ULL) ^ mix(static_cast<std::uint64_t>(queries[i])) ^
                               static_cast<std::uint64_t>(candidates[j]));
            m.at(i, j) = static_cast<double>(h >> 11) / 9007199254740992.0;
        }
    }
    return m;
}

Experiment::Experiment(ExperimentConfig config) : config_(std::move(config)) {
    config_.validate(true);
    dataset_ = load_dataset(config_.ground_truth, config_.image_dir, config_.dataset_name);
    initialise();
}

Experiment::Experiment(ExperimentConfig config, Dataset dataset)
    : config_(std::move(config)), dataset_(std::move(dataset)) {
    config_.validate(false);
    initialise();
}

void Experiment::initialise() {
    partition_ = partition_pages(dataset_, config_.train_fraction);
    for (const auto id : partition_.test) test_samples_.push_back(dataset_.sample(id));
    for (const auto id : partition_.train) train_samples_.push_back(dataset_.sample(id));
    queries_ = query_set(dataset_, partition_.test);
    train_queries_ = query_set(dataset_, partition_.train);
    transcriptions_ = TranscriptionIndex(dataset_);
    if (queries_.empty()) throw DataError("the test partition has no repeated transcription to query");
}

MethodParams Experiment::params() const { return {config_.descriptors, config_.band_fraction}; }

std::vector<std::string> Experiment::method_names() const {
    std::vector<std::string> names = config_.methods;
    for (const auto& [name, path] : config_.imports) names.push_back(name);
    return names;
}

std::filesystem::path Experiment::report_path(const std::string& name, double level) const {
    return config_.output_dir / "reports" / name / (level_stem(level) + ".csv");
}

std::filesystem::path Experiment::matrix_path(const std::string& name, double level) const {
    return config_.output_dir / "matrices" / name / (level_stem(level) + ".txt");
}

std::filesystem::path Experiment::cache_path(Method method, const std::string& stage) const {
    return config_.output_dir / "cache" / (std::string(to_string(method)) + "-" + parameter_hash(method, params())) /
           (stage + ".bin");
}

DistortedDatabase Experiment::distorted_database(double level) const {
    return generate_distorted_database(test_samples_, level, *config_.seed);
}

std::vector<std::filesystem::path> Experiment::write_distorted_databases() const {
    const auto dir = config_.output_dir / "distorted";
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> paths;
    for (const double level : levels()) {
        auto path = dir / (level_stem(level) + ".txt");
        write_distorted_database(path, distorted_database(level), test_samples_, *config_.seed);
        paths.push_back(std::move(path));
    }
    return paths;
}

RepresentationSet Experiment::extract_boxes(Method method, std::span<const WordSample> samples,
                                            std::span<const BoundingBox> boxes) const {
    RepresentationSet set;
    set.ids.resize(samples.size());
    set.items.resize(samples.size());
    const auto p = params();
    parallel_for(samples.size(), config_.workers, [&](std::size_t i) {
        const auto& s = samples[i];
        set.ids[i] = s.sample_id;
        try {
            set.items[i] = extract(method, crop(dataset_.page(s.page_id).pixels, boxes[i]), p);
        } catch (const std::exception& e) {
            throw DataError("extraction failed for sample " + std::to_string(s.sample_id) + " (" +
                            std::string(to_string(method)) + "): " + e.what());
        }
    });
    return set;
}

RepresentationSet Experiment::cached(Method method, const std::string& stage, std::span<const WordSample> samples,
                                     std::span<const BoundingBox> boxes) {
    const auto path = cache_path(method, stage);
    if (std::filesystem::exists(path)) {
        auto set = read_representations(path, method);
        const bool match = set.ids.size() == samples.size() &&
                           std::equal(samples.begin(), samples.end(), set.ids.begin(),
                                      [](const WordSample& s, SampleId id) { return s.sample_id == id; });
        if (match) return set;
        std::clog << "[segbench] stale cache " << path.string() << ", recomputing\n";
    }
    auto set = extract_boxes(method, samples, boxes);
    write_representations(path, method, set);
    return set;
}

RepresentationSet Experiment::representations(Method method, double level) {
    if (level == 1.0) {
        if (const auto it = undistorted_.find(method); it != undistorted_.end()) return it->second;
    }
    const auto db = distorted_database(level);
    std::vector<BoundingBox> boxes;
    boxes.reserve(test_samples_.size());
    for (const auto& s : test_samples_) boxes.push_back(db.boxes.at(s.sample_id));
    auto set = cached(method, level_stem(level), test_samples_, boxes);
    if (level == 1.0) undistorted_.emplace(method, set);
    return set;
}

RepresentationSet Experiment::train_representations(Method method) {
    std::vector<BoundingBox> boxes;
    boxes.reserve(train_samples_.size());
    for (const auto& s : train_samples_) boxes.push_back(s.box);
    return cached(method, "train", train_samples_, boxes);
}

DistanceMatrix Experiment::compute_matrix(Method method, std::span<const SampleId> query_ids,
                                          const RepresentationSet& queries,
                                          const RepresentationSet& candidates) const {
    std::unordered_map<SampleId, std::size_t> position;
    for (std::size_t i = 0; i < queries.ids.size(); ++i) position.emplace(queries.ids[i], i);
    DistanceMatrix matrix({query_ids.begin(), query_ids.end()}, candidates.ids);
    const auto p = params();
    parallel_for(matrix.rows(), config_.workers, [&](std::size_t q) {
        const auto& query = queries.items[position.at(query_ids[q])];
        auto row = matrix.row(q);
        for (std::size_t c = 0; c < row.size(); ++c) row[c] = distance(method, query, candidates.items[c], p);
    });
    return matrix;
}

DistanceMatrix Experiment::distance_matrix(Method method, double level) {
    const auto queries = representations(method, 1.0);
    const auto candidates = level == 1.0 ? queries : representations(method, level);
    return compute_matrix(method, queries_, queries, candidates);
}

DistanceMatrix Experiment::train_matrix(Method method) {
    const auto set = train_representations(method);
    return compute_matrix(method, train_queries_, set, set);
}

std::optional<std::filesystem::path> Experiment::external_path(const std::string& name, double level) const {
    const auto it = config_.imports.find(name);
    if (it == config_.imports.end()) return std::nullopt;
    if (std::filesystem::is_directory(it->second)) {
        auto path = it->second / (level_stem(level) + ".txt");
        if (std::filesystem::exists(path)) return path;
        return std::nullopt;
    }
    if (level == 1.0) return it->second;
    return std::nullopt;
}

bool Experiment::has_level(const std::string& name, double level) const {
    if (parse_method(name)) return true;
    return external_path(name, level).has_value();
}

DistanceMatrix Experiment::method_matrix(const std::string& name, double level) {
    const auto method = parse_method(name);
    if (!method) {
        const auto path = external_path(name, level);
        if (!path) throw DataError("external method '" + name + "' has no matrix for level " + format_level(level));
        return import_external_matrix(*path, queries_, partition_.test);
    }
    const auto stored = matrix_path(name, level);
    if (std::filesystem::exists(stored)) {
        auto matrix = read_distance_matrix(stored);
        if (std::equal(matrix.query_ids().begin(), matrix.query_ids().end(), queries_.begin(), queries_.end()) &&
            std::equal(matrix.candidate_ids().begin(), matrix.candidate_ids().end(), partition_.test.begin(),
                       partition_.test.end())) {
            return matrix;
        }
    }
    auto matrix = distance_matrix(*method, level);
    if (config_.keep_matrices) write_matrix_atomically(stored, matrix);
    return matrix;
}

DistanceMatrix Experiment::method_train_matrix(const std::string& name) {
    if (const auto method = parse_method(name)) return train_matrix(*method);
    const auto it = config_.imports.find(name);
    if (it == config_.imports.end()) throw DataError("unknown method '" + name + "'");
    const auto path = it->second / "train.txt";
    if (!std::filesystem::is_directory(it->second) || !std::filesystem::exists(path)) {
        throw DataError("external method '" + name + "' needs " + path.string() + " for weight search");
    }
    return import_external_matrix(path, train_queries_, partition_.train);
}

std::size_t Experiment::retrieve_all() {
    std::size_t written = 0;
    for (const double level : levels()) {
        for (const auto& name : config_.methods) {
            const auto path = matrix_path(name, level);
            if (std::filesystem::exists(path)) continue;
            write_matrix_atomically(path, distance_matrix(*parse_method(name), level));
            ++written;
        }
    }
    return written;
}

std::vector<ReportRow> Experiment::evaluate(const std::string& name, double level) {
    return mean_metrics(method_matrix(name, level), transcriptions_, level, name);
}

std::vector<ReportRow> Experiment::run_distortion_sweep() {
    std::size_t failures = 0;
    for (const double level : levels()) {
        for (const auto& name : method_names()) {
            if (!has_level(name, level)) continue;
            const auto path = report_path(name, level);
            if (std::filesystem::exists(path)) continue;
            try {
                write_report_atomically(path, evaluate(name, level));
            } catch (const std::exception& e) {
                ++failures;
                std::clog << "[segbench] cell (" << format_level(level) << ", " << name << ") failed: " << e.what()
                          << '\n';
            }
        }
    }
    if (failures > 0) std::clog << "[segbench] " << failures << " cell(s) failed\n";
    return merge_reports();
}

std::vector<ReportRow> Experiment::merge_reports() {
    std::vector<std::string> names = method_names();
    const auto reports_dir = config_.output_dir / "reports";
    if (std::filesystem::is_directory(reports_dir)) {
        std::set<std::string> extra;
        for (const auto& entry : std::filesystem::directory_iterator(reports_dir)) {
            const auto dir = entry.path().filename().string();
            if (std::find(names.begin(), names.end(), dir) == names.end()) extra.insert(dir);
        }
        names.insert(names.end(), extra.begin(), extra.end());
    }
    std::vector<ReportRow> rows;
    for (const double level : levels()) {
        for (const auto& name : names) {
            const auto path = report_path(name, level);
            if (!std::filesystem::exists(path)) continue;
            const auto cell = read_report(path);
            rows.insert(rows.end(), cell.begin(), cell.end());
        }
    }
    std::filesystem::create_directories(config_.output_dir);
    write_report_atomically(config_.output_dir / "report.csv", rows);
    return rows;
}

std::pair<IndependenceTable, IndependenceTable> Experiment::independence() {
    const double level = config_.analysis_level;
    std::vector<std::string> names;
    std::vector<Ranking> rankings;
    std::vector<std::vector<std::uint8_t>> labels;
    auto add = [&](const std::string& name, const DistanceMatrix& matrix) {
        names.push_back(name);
        rankings.push_back(rank(matrix, true));
        std::vector<double> ap;
        for (const auto& m : per_query_metrics(matrix, transcriptions_)) ap.push_back(m.average_precision);
        labels.push_back(ap.size() >= 2 ? easy_hard_labels(ap) : std::vector<std::uint8_t>(ap.size(), 0));
    };
    for (const auto& name : method_names()) {
        if (has_level(name, level)) add(name, method_matrix(name, level));
    }
    add("random", random_matrix(queries_, partition_.test, *config_.seed));

    const std::size_t n = names.size();
    IndependenceTable footrule{names, std::vector<std::optional<double>>(n * n)};
    IndependenceTable correlation{names, std::vector<std::optional<double>>(n * n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            footrule.values[i * n + j] = spearman_footrule(rankings[i], rankings[j]);
            correlation.values[i * n + j] = label_correlation(labels[i], labels[j]);
        }
    }
    std::filesystem::create_directories(config_.output_dir);
    write_independence_table(config_.output_dir / "independence_footrule.csv", footrule);
    write_independence_table(config_.output_dir / "independence_correlation.csv", correlation);
    return {footrule, correlation};
}

Experiment::FusionResult Experiment::fuse(std::vector<std::string> methods) {
    if (methods.empty()) methods = method_names();
    if (methods.size() < 2) throw DataError("fusion needs at least two methods");
    FusionResult result;
    result.methods = methods;

    std::vector<DistanceMatrix> train;
    for (const auto& name : methods) train.push_back(method_train_matrix(name));
    result.weights = weight_search(train, transcriptions_);

    const auto name = fusion_name(methods);
    std::filesystem::create_directories(config_.output_dir);
    {
        std::ofstream out(config_.output_dir / "fusion_weights.csv");
        out << "fusion,method,weight\n";
        for (std::size_t k = 0; k < methods.size(); ++k) {
            out << name << ',' << methods[k] << ',' << format_exact(result.weights.weights[k]) << '\n';
        }
    }
    for (const double level : levels()) {
        const bool available =
            std::all_of(methods.begin(), methods.end(), [&](const auto& m) { return has_level(m, level); });
        if (!available) continue;
        const auto path = report_path(name, level);
        std::vector<ReportRow> rows;
        if (std::filesystem::exists(path)) {
            rows = read_report(path);
        } else {
            std::vector<DistanceMatrix> matrices;
            for (const auto& m : methods) matrices.push_back(method_matrix(m, level));
            rows = mean_metrics(fuse_distances(matrices, result.weights), transcriptions_, level, name);
            write_report_atomically(path, rows);
        }
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    return result;
}

}  // namespace segbench
