#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "segbench/descriptors/feature_vector.hpp"
#include "segbench/dtw/dtw.hpp"

namespace segbench {

/// Malformed or incomplete configuration; the CLI maps it to a usage error.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Environment variable naming the default config file.
inline constexpr const char* kConfigEnvironmentVariable = "SEGBENCH_CONFIG";

struct ExperimentConfig {
    std::filesystem::path ground_truth;
    std::filesystem::path image_dir;
    std::string dataset_name = "dataset";
    std::vector<std::string> methods{"quadtree", "lbp", "hog", "dtw"};
    std::vector<double> levels;  // empty means the default 100 levels
    std::optional<std::uint64_t> seed;
    double band_fraction = kDefaultBandFraction;
    double train_fraction = 0.75;
    DescriptorConfig descriptors;
    std::filesystem::path output_dir = "segbench_out";
    unsigned workers = 0;  // 0 = hardware concurrency
    bool keep_matrices = false;
    double analysis_level = 1.0;
    std::filesystem::path proposals;
    /// External methods: name -> matrix file or directory of level_<l>.txt files.
    std::map<std::string, std::filesystem::path> imports;

    [[nodiscard]] std::vector<double> effective_levels() const;

    /// Throws ConfigError when the seed is missing, a method is unknown, a
    /// referenced path does not exist, or a numeric setting is out of range.
    void validate(bool needs_dataset = true) const;
};

/// Applies one `key = value` setting. Throws ConfigError on an unknown key or
/// a malformed value. `external.<name>` keys register imports.
/// Relative paths resolve against `base_dir` when it is non-empty.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir = {});

/// Flat `key = value` lines, '#' comments. Relative paths resolve against `base_dir`.
[[nodiscard]] ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {},
                                            const std::string& source = "<config>");
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// "default", "a,b,c" or "start:step:stop" (inclusive).
[[nodiscard]] std::vector<double> parse_levels(const std::string& text);

/// Canonical text of every setting, used for logging and cache keys.
void write_config(std::ostream& out, const ExperimentConfig& config);

}  // namespace segbench
