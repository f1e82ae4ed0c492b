#include "segbench/runner/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "segbench/core/text.hpp"
#include "segbench/distortion/distortion.hpp"
#include "segbench/runner/methods.hpp"

namespace segbench {
namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
    std::filesystem::path p(value);
    if (base.empty() || p.is_absolute()) return p;
    return base / p;
}

double to_double(const std::string& key, const std::string& value) {
    const auto v = parse_double(value);
    if (!v) throw ConfigError("setting '" + key + "' expects a number, got '" + value + "'");
    return *v;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
    const auto text = trim(value);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("setting '" + key + "' expects a non-negative integer, got '" + value + "'");
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("setting '" + key + "' expects true or false, got '" + value + "'");
}

}  // namespace

std::vector<double> parse_levels(const std::string& text) {
    const auto body = trim(text);
    if (body.empty() || body == "default") return DistortionSpec::default_levels();
    std::vector<double> levels;
    if (body.find(':') != std::string_view::npos) {
        const auto parts = split(body, ':');
        if (parts.size() != 3) throw ConfigError("bad level range '" + text + "'");
        const double start = parse_double(parts[0]).value_or(NAN);
        const double step = parse_double(parts[1]).value_or(NAN);
        const double stop = parse_double(parts[2]).value_or(NAN);
        if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0)) {
            throw ConfigError("bad level range '" + text + "'");
        }
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= count; ++i) {
            // Snap to 1e-6 so 0.1 + 0.1 + 0.1 style drift never leaks into file names.
            levels.push_back(std::round((start + static_cast<double>(i) * step) * 1e6) / 1e6);
        }
    } else {
        for (const auto part : split(body, ',')) {
            const auto v = parse_double(part);
            if (!v) throw ConfigError("bad distortion level '" + std::string(part) + "'");
            levels.push_back(*v);
        }
    }
    DistortionSpec spec{0, levels};
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return levels;
}

std::vector<double> ExperimentConfig::effective_levels() const {
    return levels.empty() ? DistortionSpec::default_levels() : levels;
}

void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& raw_value,
                   const std::filesystem::path& base_dir) {
    const std::string value(trim(raw_value));
    if (key == "ground_truth") {
        config.ground_truth = resolve(base_dir, value);
    } else if (key == "images") {
        config.image_dir = resolve(base_dir, value);
    } else if (key == "dataset_name") {
        config.dataset_name = value;
    } else if (key == "methods") {
        config.methods.clear();
        for (const auto m : split(value, ',')) {
            if (!trim(m).empty()) config.methods.emplace_back(trim(m));
        }
    } else if (key == "levels") {
        config.levels = parse_levels(value);
    } else if (key == "seed") {
        config.seed = to_unsigned(key, value);
    } else if (key == "band_fraction") {
        config.band_fraction = to_double(key, value);
    } else if (key == "train_fraction") {
        config.train_fraction = to_double(key, value);
    } else if (key == "hog_bins") {
        config.descriptors.hog_bins = static_cast<int>(to_unsigned(key, value));
    } else if (key == "lbp_uniform") {
        config.descriptors.lbp_uniform = to_bool(key, value);
    } else if (key == "output") {
        config.output_dir = resolve(base_dir, value);
    } else if (key == "workers") {
        config.workers = static_cast<unsigned>(to_unsigned(key, value));
    } else if (key == "keep_matrices") {
        config.keep_matrices = to_bool(key, value);
    } else if (key == "analysis_level") {
        config.analysis_level = to_double(key, value);
    } else if (key == "proposals") {
        config.proposals = resolve(base_dir, value);
    } else if (key.rfind("external.", 0) == 0 && key.size() > 9) {
        config.imports[key.substr(9)] = resolve(base_dir, value);
    } else {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir, const std::string& source) {
    ExperimentConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            apply_setting(config, std::string(trim(body.substr(0, eq))), std::string(body.substr(eq + 1)), base_dir);
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in, path.parent_path(), path.string());
}

void ExperimentConfig::validate(bool needs_dataset) const {
    if (!seed) throw ConfigError("a seed is required (set 'seed' or pass --seed)");
    if (methods.empty() && imports.empty()) throw ConfigError("no methods configured");
    for (const auto& m : methods) {
        if (!parse_method(m)) throw ConfigError("unknown method '" + m + "'");
    }
    for (const auto& [name, path] : imports) {
        if (parse_method(name)) throw ConfigError("external method '" + name + "' shadows a built-in method");
        if (!std::filesystem::exists(path)) throw ConfigError("external matrix path does not exist: " + path.string());
    }
    if (!(band_fraction >= 0.0)) throw ConfigError("band_fraction must be non-negative");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("train_fraction must lie in (0,1)");
    if (descriptors.hog_bins < 1) throw ConfigError("hog_bins must be at least 1");
    if (!(analysis_level > 0.0 && analysis_level <= 1.0)) throw ConfigError("analysis_level must lie in (0,1]");
    if (needs_dataset) {
        if (ground_truth.empty() || !std::filesystem::exists(ground_truth)) {
            throw ConfigError("ground truth file does not exist: " + ground_truth.string());
        }
        if (image_dir.empty() || !std::filesystem::is_directory(image_dir)) {
            throw ConfigError("image directory does not exist: " + image_dir.string());
        }
    }
    if (!proposals.empty() && !std::filesystem::exists(proposals)) {
        throw ConfigError("proposal file does not exist: " + proposals.string());
    }
}

void write_config(std::ostream& out, const ExperimentConfig& config) {
    out << "ground_truth = " << config.ground_truth.string() << '\n';
    out << "images = " << config.image_dir.string() << '\n';
    out << "dataset_name = " << config.dataset_name << '\n';
    out << "methods = ";
    for (std::size_t i = 0; i < config.methods.size(); ++i) out << (i ? "," : "") << config.methods[i];
    out << '\n';
    out << "levels = ";
    const auto levels = config.effective_levels();
    for (std::size_t i = 0; i < levels.size(); ++i) out << (i ? "," : "") << format_exact(levels[i]);
    out << '\n';
    if (config.seed) out << "seed = " << *config.seed << '\n';
    out << "band_fraction = " << format_exact(config.band_fraction) << '\n';
    out << "train_fraction = " << format_exact(config.train_fraction) << '\n';
    out << "hog_bins = " << config.descriptors.hog_bins << '\n';
    out << "lbp_uniform = " << (config.descriptors.lbp_uniform ? "true" : "false") << '\n';
    out << "output = " << config.output_dir.string() << '\n';
    out << "workers = " << config.workers << '\n';
    out << "keep_matrices = " << (config.keep_matrices ? "true" : "false") << '\n';
    out << "analysis_level = " << format_exact(config.analysis_level) << '\n';
    if (!config.proposals.empty()) out << "proposals = " << config.proposals.string() << '\n';
    for (const auto& [name, path] : config.imports) out << "external." << name << " = " << path.string() << '\n';
}

}  // namespace segbench
