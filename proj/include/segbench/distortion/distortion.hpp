#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "segbench/core/dataset.hpp"
#include "segbench/core/geometry.hpp"

namespace segbench {

/// Achieved-IoU tolerance after snapping a translation to the pixel grid.
inline constexpr double kDistortionTolerance = 0.005;

struct DistortionSpec {
    std::uint64_t seed = 0;
    std::vector<double> levels = default_levels();

    /// 0.01, 0.02, ..., 1.00.
    [[nodiscard]] static std::vector<double> default_levels();
    /// Throws std::invalid_argument unless levels are in (0,1] and strictly increasing.
    void validate() const;
};

struct DistortedDatabase {
    double level = 1.0;
    std::map<SampleId, BoundingBox> boxes;
    std::map<SampleId, double> achieved_iou;

    friend bool operator==(const DistortedDatabase&, const DistortedDatabase&) = default;
};

/// IoU between a w x h box and the same box shifted by the real vector (dx, dy).
[[nodiscard]] double shifted_iou(double width, double height, double dx, double dy) noexcept;

/// Translation length along `direction` (radians) that brings the IoU between
/// `box` and its shifted copy to `target`. Bisection over [0, t_zero] where
/// t_zero is the first length with no overlap.
[[nodiscard]] double displacement_for_iou(const BoundingBox& box, double direction, double target);

/// Integer translation of `box` along `direction` whose achieved IoU is as
/// close to `target` as the pixel grid allows. The rounded solution is tried
/// first, then the four floor/ceil neighbours, then the in-tolerance integer
/// offset nearest to the continuous solution within the direction's quadrant.
/// When no integer offset reaches the tolerance the closest IoU is kept.
[[nodiscard]] BoundingBox distort_box_along(const BoundingBox& box, double direction, double target);

using DistortionRng = std::mt19937_64;

/// Uniform direction in [0, 2pi) drawn from `rng`, then distort_box_along.
/// The result may leave the page; crop() pads it.
[[nodiscard]] BoundingBox distort_box(const BoundingBox& box, double target, DistortionRng& rng);

/// Seed of the independent stream for one (level, sample) pair.
[[nodiscard]] std::uint64_t stream_seed(std::uint64_t seed, double level, SampleId id) noexcept;

[[nodiscard]] DistortedDatabase generate_distorted_database(std::span<const WordSample> samples, double level,
                                                            std::uint64_t seed);

/// One database per level of `spec`. Throws DataError on an empty sample set.
[[nodiscard]] std::vector<DistortedDatabase> generate_distorted_databases(std::span<const WordSample> samples,
                                                                          const DistortionSpec& spec);

/// Ground-truth text format plus a trailing achieved_iou column, preceded by a
/// `# level=<l> seed=<s>` header. Records appear in `samples` order.
void write_distorted_database(const std::filesystem::path& path, const DistortedDatabase& db,
                              std::span<const WordSample> samples, std::uint64_t seed);
[[nodiscard]] DistortedDatabase read_distorted_database(const std::filesystem::path& path,
                                                        std::span<const WordSample> samples);

}  // namespace segbench
