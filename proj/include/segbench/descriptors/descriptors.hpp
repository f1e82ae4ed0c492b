#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "segbench/core/image.hpp"
#include "segbench/descriptors/feature_vector.hpp"
#include "segbench/descriptors/quadtree.hpp"

namespace segbench {

// Quad-tree zoning ---------------------------------------------------------

/// Ink fraction per region (4 level-1 then 16 level-2), L2-normalized.
[[nodiscard]] FeatureVector quadtree_descriptor(const BinaryImage& image);

/// Same, before normalization.
[[nodiscard]] std::array<double, QuadTreeGrid::kRegionCount> quadtree_fractions(const BinaryImage& image);

// Local binary patterns ----------------------------------------------------

/// Radius-1 eight-neighbour code of an interior pixel. Neighbour k sets bit k
/// when it is >= the centre; neighbours are visited clockwise from top-left.
[[nodiscard]] std::uint8_t lbp_code(const GrayImage& image, int x, int y) noexcept;

/// Maps each code to its bin: 58 uniform codes in increasing order, then one
/// bin for everything with more than two circular transitions.
[[nodiscard]] const std::array<std::uint8_t, 256>& uniform_lbp_table() noexcept;

/// Raw per-region code histograms (20 regions x bins), pooled over interior pixels.
[[nodiscard]] std::vector<double> lbp_histograms(const GrayImage& image, const QuadTreeGrid& grid,
                                                 const DescriptorConfig& config = {});

/// Per-region L1 then global L2 normalized histograms; the grid comes from
/// the Otsu-binarized image. Throws std::invalid_argument below 3x3.
[[nodiscard]] FeatureVector lbp_descriptor(const GrayImage& image, const DescriptorConfig& config = {});

// Histograms of oriented gradients -----------------------------------------

/// Raw magnitude-weighted unsigned orientation histograms per region from
/// central differences at interior pixels, linearly split between the two
/// nearest bin centres (bin k centred at k * 180 / bins degrees).
[[nodiscard]] std::vector<double> hog_histograms(const GrayImage& image, const QuadTreeGrid& grid,
                                                 const DescriptorConfig& config = {});

/// Per-region L2 then global L2 normalized. Throws std::invalid_argument below 3x3.
[[nodiscard]] FeatureVector hog_descriptor(const GrayImage& image, const DescriptorConfig& config = {});

}  // namespace segbench
