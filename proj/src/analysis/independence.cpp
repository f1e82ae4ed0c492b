#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "segbench/analysis/analysis.hpp"
#include "segbench/core/error.hpp"
#include "segbench/core/text.hpp"

namespace segbench {

double normalized_footrule(std::span<const SampleId> a, std::span<const SampleId> b) {
    if (a.size() != b.size()) throw std::invalid_argument("footrule over rankings of different length");
    std::unordered_map<SampleId, std::size_t> position;
    for (std::size_t i = 0; i < b.size(); ++i) position.emplace(b[i], i);
    if (position.size() != b.size()) throw std::invalid_argument("footrule ranking repeats an id");

    std::size_t sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto it = position.find(a[i]);
        if (it == position.end()) throw std::invalid_argument("footrule rankings cover different candidates");
        sum += i > it->second ? i - it->second : it->second - i;
    }
    const std::size_t n = a.size();
    const std::size_t max_sum = n * n / 2;
    return max_sum == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(max_sum);
}

double spearman_footrule(const Ranking& a, const Ranking& b) {
    if (a.query_ids != b.query_ids) throw std::invalid_argument("footrule over rankings of different queries");
    if (a.order.empty()) return 0.0;
    double total = 0.0;
    for (std::size_t q = 0; q < a.order.size(); ++q) total += normalized_footrule(a.order[q], b.order[q]);
    return total / static_cast<double>(a.order.size());
}

std::vector<std::uint8_t> easy_hard_labels(std::span<const double> average_precisions) {
    if (average_precisions.size() < 2) throw std::invalid_argument("easy/hard labels need at least two queries");
    std::vector<double> sorted(average_precisions.begin(), average_precisions.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    std::vector<std::uint8_t> labels;
    labels.reserve(n);
    for (const double ap : average_precisions) labels.push_back(ap > median ? 1 : 0);
    return labels;
}

std::optional<double> label_correlation(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("label vectors differ in length");
    const auto n = static_cast<double>(a.size());
    if (a.empty()) return std::nullopt;
    double ma = 0.0;
    double mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0;
    double va = 0.0;
    double vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) return std::nullopt;
    return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

void write_independence_table(const std::filesystem::path& path, const IndependenceTable& table) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "method";
    for (const auto& m : table.methods) out << ',' << m;
    out << '\n';
    const std::size_t n = table.methods.size();
    for (std::size_t i = 0; i < n; ++i) {
        out << table.methods[i];
        for (std::size_t j = 0; j < n; ++j) {
            const auto v = table.at(i, j);
            out << ',' << (v ? format_exact(*v) : std::string("nan"));
        }
        out << '\n';
    }
}

}  // namespace segbench
