#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "segbench/core/dataset.hpp"

namespace segbench {

/// Parameters of the built-in handwriting-like dataset. Every glyph is a fixed
/// random stroke pattern per letter; each word instance gets its own slant,
/// stroke width, jitter and ink tone, and pages carry paper noise.
struct SyntheticSpec {
    std::uint64_t seed = 2017;
    int pages = 8;
    int words_per_page = 32;
    int page_width = 900;
    std::vector<std::string> vocabulary{"the",   "and",    "of",      "to",    "fort",    "orders",
                                        "letter", "company", "march", "general", "virginia", "would"};
};

/// Deterministic in `spec`.
[[nodiscard]] Dataset make_synthetic_dataset(const SyntheticSpec& spec = {});

}  // namespace segbench
