// Acceptance runner: one PASS/FAIL/SKIP line per criterion, exit code 1 when
// anything fails. Tolerances are fixed here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "segbench/analysis/analysis.hpp"
#include "segbench/core/text.hpp"
#include "segbench/descriptors/descriptors.hpp"
#include "segbench/distortion/distortion.hpp"
#include "segbench/dtw/dtw.hpp"
#include "segbench/metrics/metrics.hpp"
#include "segbench/runner/config.hpp"
#include "segbench/runner/experiment.hpp"
#include "segbench/runner/synthetic.hpp"

using namespace segbench;
namespace fs = std::filesystem;

namespace {

constexpr double kIouTolerance = 0.005;
constexpr double kDistortionSeconds = 2.0;
constexpr double kDtwTolerance = 1e-9;
constexpr double kAccumulatorTolerance = 1e-9;
constexpr double kSweepSeconds = 300.0;

struct Outcome {
    bool pass = false;
    std::string detail;
    bool skipped = false;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double v, int digits = 4) {
    std::ostringstream ss;
    ss.precision(digits);
    ss << std::fixed << v;
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("segbench_acceptance_" + name);
    fs::remove_all(dir);
    return dir;
}

// Word-sized boxes as found on scanned pages. Below roughly 200 pixels on the
// longer side the pixel grid cannot reach every IoU within the tolerance (a
// one-pixel shift of a 100x50 box already drops the IoU to 0.98).
Outcome distortion_accuracy() {
    std::mt19937_64 rng(20170101);
    std::uniform_int_distribution<int> pos(-100, 4000);
    std::uniform_int_distribution<int> width(200, 700);
    std::uniform_int_distribution<int> height(40, 250);
    std::uniform_real_distribution<double> direction(0.0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> target(0.05, 1.0);
    struct Triple {
        BoundingBox box;
        double direction;
        double target;
    };
    std::vector<Triple> triples;
    for (int i = 0; i < 1000; ++i) {
        const int l = pos(rng);
        const int t = pos(rng);
        triples.push_back({{l, t, l + width(rng), t + height(rng)}, direction(rng), target(rng)});
    }
    const auto start = Clock::now();
    std::vector<BoundingBox> moved;
    moved.reserve(triples.size());
    for (const auto& tr : triples) moved.push_back(distort_box_along(tr.box, tr.direction, tr.target));
    const double elapsed = seconds_since(start);
    int misses = 0;
    double worst = 0;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const double err = std::abs(iou(triples[i].box, moved[i]) - triples[i].target);
        worst = std::max(worst, err);
        misses += err > kIouTolerance;
    }
    return {misses == 0 && elapsed < kDistortionSeconds,
            std::to_string(1000 - misses) + "/1000 within " + fixed(kIouTolerance, 3) + " (worst " + fixed(worst, 5) +
                "), " + fixed(elapsed, 3) + " s"};
}

Outcome metric_oracles() {
    long checks = 0;
    long mismatches = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        for (unsigned bits = 0; bits < (1U << n); ++bits) {
            const auto rel = oracle::pattern(bits, n);
            const int r = oracle::hits_in_top(rel, n);
            for (std::size_t k = 1; k <= 10; ++k) {
                ++checks;
                mismatches += precision_at_k(rel, k) != oracle::precision_at(rel, k);
            }
            ++checks;
            mismatches += precision_at_k(rel, 1) != oracle::precision_at(rel, 1);
            if (r == 0) continue;
            checks += 2;
            mismatches += average_precision(rel) != oracle::average_precision(rel);
            mismatches += r_precision(rel, static_cast<std::size_t>(r)) != oracle::r_precision(rel);
        }
    }
    return {mismatches == 0, std::to_string(checks - mismatches) + "/" + std::to_string(checks) + " exact matches"};
}

Outcome dtw_oracle() {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> len(1, 20);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const auto a = oracle::random_sequence(rng, len(rng));
        const auto b = oracle::random_sequence(rng, len(rng));
        const auto full = oracle::full_dtw(a, b);
        worst = std::max(worst, std::abs(dtw_distance(a, b, 1.0) - full.cost / static_cast<double>(full.length)));
    }
    std::ostringstream ss;
    ss << "200 pairs, max deviation " << worst;
    return {worst <= kDtwTolerance, ss.str()};
}

Outcome descriptor_oracles() {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> size(3, 32);
    long code_mismatch = 0;
    long centroid_mismatch = 0;
    double hog_worst = 0;
    long lbp_hist_mismatch = 0;
    for (int i = 0; i < 50; ++i) {
        const auto img = oracle::random_gray(rng, size(rng), size(rng), i % 2 == 0 ? 256 : 5);
        for (int y = 1; y + 1 < img.height(); ++y) {
            for (int x = 1; x + 1 < img.width(); ++x) code_mismatch += lbp_code(img, x, y) != oracle::lbp(img, x, y);
        }
        const auto bin = binarize(img);
        const auto grid = quadtree_partition(bin);
        centroid_mismatch += geometric_centroid(bin, {0, 0, img.width(), img.height()}) !=
                             oracle::centroid(bin, {0, 0, img.width(), img.height()});
        for (const auto& r : grid.level1) {
            if (r.area() > 0) centroid_mismatch += geometric_centroid(bin, r) != oracle::centroid(bin, r);
        }
        lbp_hist_mismatch += lbp_histograms(img, grid) != oracle::lbp_histograms(img, grid, true);
        const auto h = hog_histograms(img, grid);
        const auto o = oracle::hog_histograms(img, grid, 9);
        for (std::size_t k = 0; k < h.size(); ++k) hog_worst = std::max(hog_worst, std::abs(h[k] - o[k]));
    }
    std::ostringstream ss;
    ss << "50 images: lbp code mismatches " << code_mismatch << ", lbp histogram mismatches " << lbp_hist_mismatch
       << ", centroid mismatches " << centroid_mismatch << ", hog max deviation " << hog_worst;
    return {code_mismatch == 0 && lbp_hist_mismatch == 0 && centroid_mismatch == 0 && hog_worst <= kAccumulatorTolerance,
            ss.str()};
}

Outcome independence_measures() {
    const std::vector<SampleId> a{0, 1, 2, 3};
    const std::vector<SampleId> r{3, 2, 1, 0};
    const std::vector<std::uint8_t> labels{0, 1, 1, 0, 1};
    const double same = normalized_footrule(a, a);
    const double reversed = normalized_footrule(a, r);
    const auto corr = label_correlation(labels, labels);
    std::ostringstream ss;
    ss << "footrule(a,a) = " << same << ", reversed = " << reversed << ", correlation(a,a) = " << corr.value_or(NAN);
    return {same == 0.0 && reversed == 1.0 && corr && *corr == 1.0, ss.str()};
}

ExperimentConfig synthetic_config(const fs::path& out, std::vector<double> levels) {
    ExperimentConfig c;
    c.seed = 2017;
    c.output_dir = out;
    c.levels = std::move(levels);
    return c;
}

Outcome self_classification(const Dataset& dataset) {
    Experiment e(synthetic_config(scratch("self"), {1.0}), dataset);
    std::string detail;
    bool ok = true;
    for (const auto method : kAllMethods) {
        const auto rows = e.evaluate(std::string(to_string(method)), 1.0);
        const double v = rows.back().value;
        ok = ok && rows.back().metric == metric_names::kSelfClassification && v == 1.0;
        detail += std::string(detail.empty() ? "" : ", ") + std::string(to_string(method)) + " " + format_exact(v);
    }
    return {ok, detail};
}

Outcome rank_invariances(const Dataset& dataset) {
    Experiment e(synthetic_config(scratch("invariance"), {0.5}), dataset);
    bool identical = true;
    for (const auto method : kAllMethods) {
        const auto m = e.distance_matrix(method, 0.5);
        std::vector<double> v(m.values().begin(), m.values().end());
        for (auto& x : v) x = x * x * x + x;
        const DistanceMatrix t({m.query_ids().begin(), m.query_ids().end()},
                               {m.candidate_ids().begin(), m.candidate_ids().end()}, v);
        const auto name = std::string(to_string(method));
        auto before = mean_metrics(m, e.transcriptions(), 0.5, name);
        auto after = mean_metrics(t, e.transcriptions(), 0.5, name);
        identical = identical && before == after && rank(m, true).order == rank(t, true).order;
    }
    const auto a = e.distance_matrix(Method::lbp, 0.5);
    const auto b = e.distance_matrix(Method::dtw, 0.5);
    const auto fused = fuse_distances(std::vector<DistanceMatrix>{a, b}, FusionWeights{{1.0, 0.0}});
    const bool fusion_ok = rank(fused, true).order == rank(a, true).order &&
                           rank(fused, false).order == rank(a, false).order;
    return {identical && fusion_ok, std::string("x^3+x reports ") + (identical ? "bit-identical" : "differ") +
                                        ", fusion (1,0) rankings " + (fusion_ok ? "identical" : "differ")};
}

std::map<std::string, std::map<double, double>> map_by_level(std::span<const ReportRow> rows) {
    std::map<std::string, std::map<double, double>> out;
    for (const auto& r : rows) {
        if (r.metric == metric_names::kMeanAveragePrecision) out[r.method][r.distortion_level] = r.value;
    }
    return out;
}

Outcome degradation_shape(const Dataset& dataset) {
    const auto start = Clock::now();
    Experiment e(synthetic_config(scratch("sweep"), {}), dataset);
    const auto rows = e.run_distortion_sweep();
    const double elapsed = seconds_since(start);
    const auto maps = map_by_level(rows);
    bool ok = rows.size() == 2000 && elapsed < kSweepSeconds;
    std::string detail = std::to_string(rows.size()) + " rows in " + fixed(elapsed, 1) + " s;";
    for (const auto method : kAllMethods) {
        const auto name = std::string(to_string(method));
        const auto it = maps.find(name);
        if (it == maps.end()) {
            ok = false;
            detail += " " + name + " missing;";
            continue;
        }
        const auto& m = it->second;
        const double high = (m.at(0.9) + m.at(1.0)) / 2;
        const double low = (m.at(0.2) + m.at(0.3)) / 2;
        ok = ok && high > low;
        detail += " " + name + " " + fixed(high) + " > " + fixed(low) + ";";
    }
    detail.pop_back();
    return {ok, detail};
}

Outcome table_two_ordering() {
    const char* path = std::getenv("SEGBENCH_GW_CONFIG");
    if (path == nullptr || *path == '\0') {
        return {true, "SEGBENCH_GW_CONFIG not set, public dataset not provided", true};
    }
    auto config = load_config(path);
    config.levels = {1.0};
    config.methods = {"quadtree", "lbp", "hog", "dtw"};
    Experiment e(config);
    std::map<std::string, double> map;
    for (const auto& name : config.methods) map[name] = e.evaluate(name, 1.0).front().value;
    const bool ok = map["lbp"] > map["hog"] && map["hog"] > map["dtw"] && map["dtw"] > map["quadtree"];
    return {ok, "mAP lbp " + fixed(map["lbp"]) + ", hog " + fixed(map["hog"]) + ", dtw " + fixed(map["dtw"]) +
                    ", quadtree " + fixed(map["quadtree"])};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](const std::string& name, const std::function<Outcome()>& check) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const char* tag = o.skipped ? "SKIP" : (o.pass ? "PASS" : "FAIL");
        failures += !o.pass;
        std::cout << tag << "  " << name << ": " << o.detail << std::endl;
    };

    const Dataset dataset = make_synthetic_dataset();
    report("distortion solver accuracy", distortion_accuracy);
    report("self-classification at level 1.0", [&] { return self_classification(dataset); });
    report("metric oracle equivalence", metric_oracles);
    report("dtw oracle equivalence", dtw_oracle);
    report("descriptor oracles", descriptor_oracles);
    report("degradation shape on the synthetic dataset", [&] { return degradation_shape(dataset); });
    report("rank invariances", [&] { return rank_invariances(dataset); });
    report("independence measures", independence_measures);
    report("learning-free ordering on the public dataset", table_two_ordering);
    std::cout << (failures == 0 ? "all criteria met" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
