#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "segbench/core/dataset.hpp"
#include "segbench/runner/methods.hpp"

namespace segbench {

struct RepresentationSet {
    std::vector<SampleId> ids;
    std::vector<Representation> items;
};

/// Fixed-length descriptors: "SBFV", u32 version, u32 tag length, tag,
/// u32 dimension, u64 count, count x dimension f32 row-major, then count i64
/// sample ids. Profile sequences: "SBPS", u32 version, u32 tag length, tag,
/// u32 features, u64 count, an index block of (i64 id, u64 offset, u64
/// length) per sample, then f32 columns. Little-endian.
void write_representations(const std::filesystem::path& path, Method method, const RepresentationSet& set);
[[nodiscard]] RepresentationSet read_representations(const std::filesystem::path& path, Method method);

}  // namespace segbench
