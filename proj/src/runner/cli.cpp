#include "segbench/runner/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "segbench/core/error.hpp"
#include "segbench/core/text.hpp"
#include "segbench/runner/config.hpp"
#include "segbench/runner/experiment.hpp"
#include "segbench/runner/synthetic.hpp"

namespace segbench {
namespace {

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::string output;
    std::vector<std::string> settings;
};

ExperimentConfig resolve_config(const GlobalOptions& options) {
    ExperimentConfig config;
    std::string path = options.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv(kConfigEnvironmentVariable)) path = env;
    }
    if (!path.empty()) {
        if (!std::filesystem::is_regular_file(path)) throw ConfigError("config file not found: " + path);
        config = load_config(path);
    }
    for (const auto& setting : options.settings) {
        const auto eq = setting.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + setting + "'");
        apply_setting(config, std::string(trim(setting.substr(0, eq))), setting.substr(eq + 1));
    }
    if (options.seed) config.seed = *options.seed;
    if (options.workers) config.workers = *options.workers;
    if (!options.output.empty()) config.output_dir = options.output;
    return config;
}

void print_counts(std::ostream& out, const Experiment& experiment) {
    const auto& dataset = experiment.dataset();
    std::vector<SampleId> all;
    for (const auto& s : dataset.samples()) all.push_back(s.sample_id);
    out << fmt::format("{:<8}{:>8}{:>8}{:>8}{:>8}\n", "split", "pages", "words", "unique", "queries");
    auto line = [&](const char* label, std::span<const SampleId> ids) {
        const auto c = count_partition(dataset, ids);
        out << fmt::format("{:<8}{:>8}{:>8}{:>8}{:>8}\n", label, c.pages, c.words, c.unique_words, c.query_words);
    };
    line("train", experiment.partition().train);
    line("test", experiment.partition().test);
    line("all", all);
}

void print_rows(std::ostream& out, std::span<const ReportRow> rows) { write_report(out, rows); }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Word-spotting benchmark under controlled segmentation errors", "segbench"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    GlobalOptions options;
    app.add_option("--config", options.config_path,
                   std::string("Config file (default: $") + kConfigEnvironmentVariable + ")");
    app.add_option("--seed", options.seed, "Distortion seed");
    app.add_option("--workers", options.workers, "Worker threads (0 = all cores)");
    app.add_option("--output", options.output, "Output directory");
    app.add_option("--set", options.settings, "Override a config key (key=value), repeatable");

    auto* prepare = app.add_subcommand("prepare", "Validate the dataset and print split counts");
    auto* distort = app.add_subcommand("distort", "Write the distorted databases");
    auto* extract = app.add_subcommand("extract", "Extract and cache representations");
    auto* retrieve = app.add_subcommand("retrieve", "Compute and store distance matrices");
    auto* evaluate = app.add_subcommand("evaluate", "Run the distortion sweep and write report.csv");
    auto* independence = app.add_subcommand("independence", "Footrule and easy/hard correlation tables");
    auto* fuse = app.add_subcommand("fuse", "Weighted late fusion with weights searched on the train split");
    std::string fuse_methods;
    fuse->add_option("--methods", fuse_methods, "Comma-separated methods (default: all)");
    auto* segquality = app.add_subcommand("segquality", "IoU profile of proposed boxes against the ground truth");
    std::string proposals;
    segquality->add_option("--proposals", proposals, "Proposed boxes in the ground-truth format");
    auto* report = app.add_subcommand("report", "Merge per-cell reports into report.csv and print it");
    auto* synth = app.add_subcommand("synth", "Write the bundled synthetic dataset and a matching config");
    std::string synth_dir;
    synth->add_option("dir", synth_dir, "Target directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (synth->parsed()) {
            const std::filesystem::path dir = synth_dir;
            save_dataset(make_synthetic_dataset(), dir);
            std::ofstream conf(dir / "segbench.conf");
            conf << "ground_truth = ground_truth.txt\nimages = pages\ndataset_name = synthetic\nseed = 2017\n"
                    "output = out\n";
            if (!conf) throw DataError("cannot write " + (dir / "segbench.conf").string());
            out << "wrote " << (dir / "segbench.conf").string() << '\n';
            return kExitOk;
        }

        auto config = resolve_config(options);

        if (segquality->parsed()) {
            if (!proposals.empty()) config.proposals = proposals;
            if (config.proposals.empty()) throw ConfigError("segquality needs --proposals or a 'proposals' setting");
            if (!std::filesystem::exists(config.proposals)) {
                throw ConfigError("proposal file does not exist: " + config.proposals.string());
            }
            if (config.ground_truth.empty() || !std::filesystem::exists(config.ground_truth)) {
                throw ConfigError("ground truth file does not exist: " + config.ground_truth.string());
            }
            std::vector<LabelledBox> gt;
            std::vector<LabelledBox> prop;
            for (auto& r : read_box_records(config.ground_truth)) gt.push_back({r.page_id, r.box});
            for (auto& r : read_box_records(config.proposals, false)) prop.push_back({r.page_id, r.box});
            const auto profile = segmentation_quality(gt, prop);
            std::filesystem::create_directories(config.output_dir);
            write_segmentation_quality(config.output_dir / "segquality", profile);
            auto stat = [&](const char* label, const std::optional<SummaryStats>& s) {
                if (!s) {
                    out << label << ": no boxes\n";
                    return;
                }
                out << fmt::format("{}: min {:.4f} q1 {:.4f} median {:.4f} q3 {:.4f} max {:.4f} mean {:.4f}\n", label,
                                   s->min, s->q1, s->median, s->q3, s->max, s->mean);
            };
            stat("ground truth (detection)", profile.row_stats);
            stat("proposals (recognition)", profile.column_stats);
            return kExitOk;
        }

        Experiment experiment(config);

        if (prepare->parsed()) {
            out << "dataset " << experiment.dataset().name() << '\n';
            print_counts(out, experiment);
        } else if (distort->parsed()) {
            const auto paths = experiment.write_distorted_databases();
            out << "wrote " << paths.size() << " distorted databases\n";
        } else if (extract->parsed()) {
            for (const auto& name : experiment.config().methods) {
                const auto method = *parse_method(name);
                for (const double level : experiment.levels()) (void)experiment.representations(method, level);
                (void)experiment.train_representations(method);
            }
            out << "representations cached below " << (experiment.config().output_dir / "cache").string() << '\n';
        } else if (retrieve->parsed()) {
            const auto written = experiment.retrieve_all();
            out << "wrote " << written << " distance matrices\n";
        } else if (evaluate->parsed()) {
            const auto rows = experiment.run_distortion_sweep();
            out << rows.size() << " report rows in " << (experiment.config().output_dir / "report.csv").string()
                << '\n';
        } else if (independence->parsed()) {
            const auto [footrule, correlation] = experiment.independence();
            auto print = [&](const char* title, const IndependenceTable& table) {
                out << title << '\n' << fmt::format("{:<24}", "");
                for (const auto& m : table.methods) out << fmt::format("{:>12}", m.substr(0, 11));
                out << '\n';
                for (std::size_t i = 0; i < table.methods.size(); ++i) {
                    out << fmt::format("{:<24}", table.methods[i]);
                    for (std::size_t j = 0; j < table.methods.size(); ++j) {
                        const auto v = table.at(i, j);
                        out << (v ? fmt::format("{:>12.4f}", *v) : fmt::format("{:>12}", "nan"));
                    }
                    out << '\n';
                }
            };
            print("footrule", footrule);
            print("easy/hard correlation", correlation);
        } else if (fuse->parsed()) {
            std::vector<std::string> methods;
            for (const auto m : split(fuse_methods, ',')) {
                if (!trim(m).empty()) methods.emplace_back(trim(m));
            }
            for (const auto& m : methods) {
                const auto names = experiment.method_names();
                if (std::find(names.begin(), names.end(), m) == names.end()) {
                    throw ConfigError("fuse: method '" + m + "' is not configured");
                }
            }
            const auto result = experiment.fuse(methods);
            out << fusion_name(result.methods) << " weights:";
            for (std::size_t k = 0; k < result.methods.size(); ++k) {
                out << ' ' << result.methods[k] << '=' << format_exact(result.weights.weights[k]);
            }
            out << '\n';
            (void)experiment.merge_reports();
            print_rows(out, result.rows);
        } else if (report->parsed()) {
            print_rows(out, experiment.merge_reports());
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "segbench: configuration error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << "segbench: data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << "segbench: error: " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace segbench
