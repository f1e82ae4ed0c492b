#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "segbench/core/error.hpp"
#include "segbench/core/text.hpp"
#include "segbench/metrics/metrics.hpp"

namespace segbench {

double average_precision(std::span<const std::uint8_t> relevances) {
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < relevances.size(); ++k) {
        if (relevances[k] == 0) continue;
        ++hits;
        sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
    if (hits == 0) throw std::invalid_argument("average precision of a query without relevant candidates");
    return sum / static_cast<double>(hits);
}

double r_precision(std::span<const std::uint8_t> relevances, std::size_t total_relevant) {
    if (total_relevant == 0) throw std::invalid_argument("rPrecision needs at least one relevant candidate");
    const auto top = relevances.first(std::min(total_relevant, relevances.size()));
    const auto hits = static_cast<std::size_t>(std::count_if(top.begin(), top.end(), [](auto r) { return r != 0; }));
    return static_cast<double>(hits) / static_cast<double>(total_relevant);
}

double precision_at_k(std::span<const std::uint8_t> relevances, std::size_t k) {
    if (k == 0) throw std::invalid_argument("precision@k needs k >= 1");
    const std::size_t n = std::min(k, relevances.size());
    if (n == 0) return 0.0;
    const auto top = relevances.first(n);
    const auto hits = static_cast<std::size_t>(std::count_if(top.begin(), top.end(), [](auto r) { return r != 0; }));
    return static_cast<double>(hits) / static_cast<double>(n);
}

double self_classification_accuracy(const DistanceMatrix& matrix) {
    if (matrix.rows() == 0) return 0.0;
    const auto ranking = rank(matrix, false);
    std::size_t correct = 0;
    for (std::size_t q = 0; q < matrix.rows(); ++q) {
        if (!ranking.order[q].empty() && ranking.order[q].front() == ranking.query_ids[q]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(matrix.rows());
}

std::vector<std::vector<std::uint8_t>> ranked_relevances(const Ranking& ranking, const TranscriptionIndex& index) {
    std::vector<std::vector<std::uint8_t>> out(ranking.order.size());
    for (std::size_t q = 0; q < ranking.order.size(); ++q) {
        const auto query = ranking.query_ids[q];
        out[q].reserve(ranking.order[q].size());
        for (const auto c : ranking.order[q]) out[q].push_back(index.relevant(query, c) ? 1 : 0);
    }
    return out;
}

std::vector<QueryMetrics> per_query_metrics(const DistanceMatrix& matrix, const TranscriptionIndex& index) {
    const auto relevances = ranked_relevances(rank(matrix, true), index);
    std::vector<QueryMetrics> out;
    out.reserve(relevances.size());
    for (const auto& rel : relevances) {
        const auto total = static_cast<std::size_t>(std::count(rel.begin(), rel.end(), std::uint8_t{1}));
        QueryMetrics m;
        m.average_precision = average_precision(rel);
        m.r_precision = r_precision(rel, total);
        m.accuracy = precision_at_k(rel, 1);
        m.precision_at_10 = precision_at_k(rel, 10);
        out.push_back(m);
    }
    return out;
}

std::vector<ReportRow> mean_metrics(const DistanceMatrix& matrix, const TranscriptionIndex& index, double level,
                                    const std::string& method) {
    if (matrix.rows() == 0) throw std::invalid_argument("cannot average metrics over zero queries");
    const auto per_query = per_query_metrics(matrix, index);
    QueryMetrics sum;
    for (const auto& m : per_query) {
        sum.average_precision += m.average_precision;
        sum.r_precision += m.r_precision;
        sum.accuracy += m.accuracy;
        sum.precision_at_10 += m.precision_at_10;
    }
    const auto n = static_cast<double>(per_query.size());
    using namespace metric_names;
    return {
        {level, method, kMeanAveragePrecision, sum.average_precision / n},
        {level, method, kRPrecision, sum.r_precision / n},
        {level, method, kAccuracy, sum.accuracy / n},
        {level, method, kPrecisionAt10, sum.precision_at_10 / n},
        {level, method, kSelfClassification, self_classification_accuracy(matrix)},
    };
}

void write_report(std::ostream& out, std::span<const ReportRow> rows, bool header) {
    if (header) out << "distortion_level,method,metric,value\n";
    for (const auto& r : rows) {
        out << format_level(r.distortion_level) << ',' << r.method << ',' << r.metric << ',' << format_exact(r.value)
            << '\n';
    }
}

void write_report(const std::filesystem::path& path, std::span<const ReportRow> rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    write_report(out, rows, true);
}

std::vector<ReportRow> read_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (line_no == 1 && line.rfind("distortion_level", 0) == 0) continue;
        const auto fields = split(trim(line), ',');
        const auto level = fields.size() == 4 ? parse_double(fields[0]) : std::nullopt;
        const auto value = fields.size() == 4 ? parse_double(fields[3]) : std::nullopt;
        if (!level || !value) throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed report row");
        rows.push_back({*level, std::string(fields[1]), std::string(fields[2]), *value});
    }
    return rows;
}

}  // namespace segbench
