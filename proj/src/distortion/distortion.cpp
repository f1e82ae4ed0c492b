#include "segbench/distortion/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "segbench/core/error.hpp"
#include "segbench/core/text.hpp"

namespace segbench {
namespace {

constexpr int kBisectionIterations = 60;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct Candidate {
    int dx = 0;
    int dy = 0;
    double error = std::numeric_limits<double>::infinity();
    double offset = std::numeric_limits<double>::infinity();
};

// Smaller IoU error wins, then proximity to the continuous solution.
bool better(const Candidate& a, const Candidate& b) noexcept {
    if (a.error != b.error) return a.error < b.error;
    if (a.offset != b.offset) return a.offset < b.offset;
    return std::pair(a.dx, a.dy) < std::pair(b.dx, b.dy);
}

}  // namespace

std::vector<double> DistortionSpec::default_levels() {
    std::vector<double> levels;
    for (int i = 1; i <= 100; ++i) levels.push_back(i / 100.0);
    return levels;
}

void DistortionSpec::validate() const {
    if (levels.empty()) throw std::invalid_argument("no distortion levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0.0 && levels[i] <= 1.0)) {
            throw std::invalid_argument("distortion level outside (0,1]: " + std::to_string(levels[i]));
        }
        if (i > 0 && !(levels[i] > levels[i - 1])) {
            throw std::invalid_argument("distortion levels must be strictly increasing");
        }
    }
}

double shifted_iou(double width, double height, double dx, double dy) noexcept {
    const double wi = std::max(0.0, width - std::abs(dx));
    const double hi = std::max(0.0, height - std::abs(dy));
    const double inter = wi * hi;
    if (inter <= 0.0) return 0.0;
    return inter / (2.0 * width * height - inter);
}

double displacement_for_iou(const BoundingBox& box, double direction, double target) {
    if (!(target > 0.0 && target <= 1.0)) {
        throw std::invalid_argument("target IoU must lie in (0,1]");
    }
    if (!box.valid()) throw std::invalid_argument("cannot distort an empty box");
    if (target == 1.0) return 0.0;

    const double w = box.width();
    const double h = box.height();
    const double ux = std::cos(direction);
    const double uy = std::sin(direction);
    const double tx = std::abs(ux) > 0.0 ? w / std::abs(ux) : std::numeric_limits<double>::infinity();
    const double ty = std::abs(uy) > 0.0 ? h / std::abs(uy) : std::numeric_limits<double>::infinity();

    double lo = 0.0;
    double hi = std::min(tx, ty);
    for (int i = 0; i < kBisectionIterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (shifted_iou(w, h, mid * ux, mid * uy) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

BoundingBox distort_box_along(const BoundingBox& box, double direction, double target) {
    const double t = displacement_for_iou(box, direction, target);
    if (t == 0.0) return box;

    const double cx = t * std::cos(direction);
    const double cy = t * std::sin(direction);
    auto evaluate = [&](int dx, int dy) {
        Candidate c{dx, dy};
        c.error = std::abs(iou(box, box.translated(dx, dy)) - target);
        c.offset = std::hypot(dx - cx, dy - cy);
        return c;
    };

    const auto rx = static_cast<int>(std::lround(cx));
    const auto ry = static_cast<int>(std::lround(cy));
    Candidate best = evaluate(rx, ry);
    if (best.error <= kDistortionTolerance) return box.translated(rx, ry);

    const auto fx = static_cast<int>(std::floor(cx));
    const auto fy = static_cast<int>(std::floor(cy));
    for (const int dx : {fx, fx + 1}) {
        for (const int dy : {fy, fy + 1}) {
            const auto c = evaluate(dx, dy);
            if (better(c, best)) best = c;
        }
    }
    if (best.error <= kDistortionTolerance) return box.translated(best.dx, best.dy);

    // Scan every |dx| in the direction's quadrant. For a fixed |dx| the IoU is
    // non-increasing in |dy|, so the in-tolerance |dy| values form an interval.
    const int sx = cx < 0.0 ? -1 : 1;
    const int sy = cy < 0.0 ? -1 : 1;
    const int w = box.width();
    const int h = box.height();
    auto shifted = [&](int a, int b) { return iou(box, box.translated(sx * a, sy * b)); };
    Candidate in_tolerance;
    for (int a = 0; a <= w; ++a) {
        // first b with IoU <= target + tol
        int lo = 0;
        int hi = h + 1;
        while (lo < hi) {
            const int mid = (lo + hi) / 2;
            if (shifted(a, mid) <= target + kDistortionTolerance) hi = mid; else lo = mid + 1;
        }
        const int b_lo = lo;
        // last b with IoU >= target - tol
        lo = -1;
        hi = h;
        while (lo < hi) {
            const int mid = (lo + hi + 1) / 2;
            if (shifted(a, mid) >= target - kDistortionTolerance) lo = mid; else hi = mid - 1;
        }
        const int b_hi = lo;
        if (b_lo <= b_hi) {
            const int b = std::clamp(static_cast<int>(std::lround(std::abs(cy))), b_lo, b_hi);
            auto c = evaluate(sx * a, sy * b);
            c.error = 0.0;  // in-tolerance offsets compete on proximity only
            if (better(c, in_tolerance)) in_tolerance = c;
        } else {
            for (const int b : {b_lo - 1, b_lo}) {
                if (b < 0 || b > h) continue;
                const auto c = evaluate(sx * a, sy * b);
                if (better(c, best)) best = c;
            }
        }
    }
    if (in_tolerance.error == 0.0) best = in_tolerance;
    return box.translated(best.dx, best.dy);
}

BoundingBox distort_box(const BoundingBox& box, double target, DistortionRng& rng) {
    constexpr double kInv53 = 1.0 / 9007199254740992.0;
    const double u = static_cast<double>(rng() >> 11) * kInv53;
    const double direction = 2.0 * std::numbers::pi * u;
    return distort_box_along(box, direction, target);
}

std::uint64_t stream_seed(std::uint64_t seed, double level, SampleId id) noexcept {
    const auto level_key = static_cast<std::uint64_t>(std::llround(level * 1'000'000.0));
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ level_key);
    h = splitmix64(h ^ static_cast<std::uint64_t>(id));
    return h;
}

DistortedDatabase generate_distorted_database(std::span<const WordSample> samples, double level,
                                              std::uint64_t seed) {
    if (samples.empty()) throw DataError("cannot distort an empty sample set");
    if (!(level > 0.0 && level <= 1.0)) throw std::invalid_argument("distortion level outside (0,1]");
    DistortedDatabase db;
    db.level = level;
    for (const auto& s : samples) {
        DistortionRng rng(stream_seed(seed, level, s.sample_id));
        const auto box = distort_box(s.box, level, rng);
        db.boxes.emplace(s.sample_id, box);
        db.achieved_iou.emplace(s.sample_id, iou(s.box, box));
    }
    return db;
}

std::vector<DistortedDatabase> generate_distorted_databases(std::span<const WordSample> samples,
                                                            const DistortionSpec& spec) {
    spec.validate();
    if (samples.empty()) throw DataError("cannot distort an empty sample set");
    std::vector<DistortedDatabase> out;
    out.reserve(spec.levels.size());
    for (const double level : spec.levels) out.push_back(generate_distorted_database(samples, level, spec.seed));
    return out;
}

void write_distorted_database(const std::filesystem::path& path, const DistortedDatabase& db,
                              std::span<const WordSample> samples, std::uint64_t seed) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "# level=" << format_level(db.level) << " seed=" << seed << '\n';
    for (const auto& s : samples) {
        const auto& b = db.boxes.at(s.sample_id);
        out << s.page_id << '\t' << b.left << '\t' << b.top << '\t' << b.right << '\t' << b.bottom << '\t'
            << s.transcription << '\t' << format_exact(db.achieved_iou.at(s.sample_id)) << '\n';
    }
}

DistortedDatabase read_distorted_database(const std::filesystem::path& path, std::span<const WordSample> samples) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string header;
    std::getline(in, header);
    DistortedDatabase db;
    const auto pos = header.find("level=");
    if (header.rfind("#", 0) != 0 || pos == std::string::npos) {
        throw DataError(path.string() + ": missing level header");
    }
    const auto level = parse_double(std::string_view(header).substr(pos + 6, header.find(' ', pos) - pos - 6));
    if (!level) throw DataError(path.string() + ": bad level header");
    db.level = *level;
    in.close();

    std::vector<std::vector<std::string>> extra;
    const auto records = read_box_records(path, true, &extra);
    if (records.size() != samples.size()) {
        throw DataError(path.string() + ": expected " + std::to_string(samples.size()) + " records, found " +
                        std::to_string(records.size()));
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].page_id != samples[i].page_id || extra[i].empty()) {
            throw DataError(path.string() + ": record " + std::to_string(i + 1) + " does not match the ground truth");
        }
        db.boxes.emplace(samples[i].sample_id, records[i].box);
        const auto achieved = parse_double(extra[i].front());
        if (!achieved) throw DataError(path.string() + ": record " + std::to_string(i + 1) + " has a bad achieved_iou");
        db.achieved_iou.emplace(samples[i].sample_id, *achieved);
    }
    return db;
}

}  // namespace segbench
