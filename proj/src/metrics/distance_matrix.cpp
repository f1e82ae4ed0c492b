#include "segbench/metrics/distance_matrix.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "segbench/core/error.hpp"
#include "segbench/core/text.hpp"

namespace segbench {
namespace {

void check_unique(std::span<const SampleId> ids, const char* axis) {
    std::unordered_set<SampleId> seen;
    for (const auto id : ids) {
        if (!seen.insert(id).second) {
            throw DataError(std::string("duplicate ") + axis + " id " + std::to_string(id));
        }
    }
}

std::vector<SampleId> parse_ids(const std::string& line, std::string_view key, const std::string& source,
                                std::size_t line_no) {
    const std::string_view body(line);
    if (body.substr(0, key.size()) != key) {
        throw DataError(source + ":" + std::to_string(line_no) + ": expected '" + std::string(key) + "'");
    }
    std::istringstream in(std::string(body.substr(key.size())));
    std::vector<SampleId> ids;
    std::string token;
    while (in >> token) {
        const auto value = parse_double(token);
        if (!value || *value != std::floor(*value)) {
            throw DataError(source + ":" + std::to_string(line_no) + ": bad sample id '" + token + "'");
        }
        ids.push_back(static_cast<SampleId>(*value));
    }
    return ids;
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::vector<SampleId> query_ids, std::vector<SampleId> candidate_ids)
    : query_ids_(std::move(query_ids)), candidate_ids_(std::move(candidate_ids)),
      values_(query_ids_.size() * candidate_ids_.size(), 0.0) {
    check_unique(query_ids_, "query");
    check_unique(candidate_ids_, "candidate");
}

DistanceMatrix::DistanceMatrix(std::vector<SampleId> query_ids, std::vector<SampleId> candidate_ids,
                               std::vector<double> values)
    : query_ids_(std::move(query_ids)), candidate_ids_(std::move(candidate_ids)), values_(std::move(values)) {
    check_unique(query_ids_, "query");
    check_unique(candidate_ids_, "candidate");
    if (values_.size() != query_ids_.size() * candidate_ids_.size()) {
        throw DataError("distance matrix has " + std::to_string(values_.size()) + " values, expected " +
                        std::to_string(query_ids_.size() * candidate_ids_.size()));
    }
    validate();
}

void DistanceMatrix::validate() const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
            throw DataError("distance matrix entry (" + std::to_string(i / cols()) + ", " + std::to_string(i % cols()) +
                            ") is negative or not finite");
        }
    }
}

bool DistanceMatrix::same_axes(const DistanceMatrix& other) const noexcept {
    return query_ids_ == other.query_ids_ && candidate_ids_ == other.candidate_ids_;
}

void write_distance_matrix(std::ostream& out, const DistanceMatrix& matrix) {
    out << "query_ids:";
    for (const auto id : matrix.query_ids()) out << ' ' << id;
    out << "\ncandidate_ids:";
    for (const auto id : matrix.candidate_ids()) out << ' ' << id;
    out << '\n';
    for (std::size_t q = 0; q < matrix.rows(); ++q) {
        const auto row = matrix.row(q);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ' ';
            out << format_exact(row[c]);
        }
        out << '\n';
    }
}

void write_distance_matrix(const std::filesystem::path& path, const DistanceMatrix& matrix) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    write_distance_matrix(out, matrix);
}

DistanceMatrix read_distance_matrix(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!trim(line).empty()) return true;
        }
        return false;
    };
    if (!next_line()) throw DataError(source + ": empty distance matrix file");
    auto queries = parse_ids(line, "query_ids:", source, line_no);
    if (!next_line()) throw DataError(source + ": missing candidate_ids line");
    auto candidates = parse_ids(line, "candidate_ids:", source, line_no);

    std::vector<double> values;
    values.reserve(queries.size() * candidates.size());
    std::size_t rows = 0;
    while (next_line()) {
        std::istringstream row(line);
        std::string token;
        std::size_t count = 0;
        while (row >> token) {
            const auto value = parse_double(token);
            if (!value || !std::isfinite(*value) || *value < 0.0) {
                throw DataError(source + ":" + std::to_string(line_no) + ": bad distance '" + token + "'");
            }
            values.push_back(*value);
            ++count;
        }
        if (count != candidates.size()) {
            throw DataError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(candidates.size()) +
                            " values, found " + std::to_string(count));
        }
        ++rows;
    }
    if (rows != queries.size()) {
        throw DataError(source + ": expected " + std::to_string(queries.size()) + " rows, found " + std::to_string(rows));
    }
    try {
        return DistanceMatrix(std::move(queries), std::move(candidates), std::move(values));
    } catch (const DataError& e) {
        throw DataError(source + ": " + e.what());
    }
}

DistanceMatrix read_distance_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_distance_matrix(in, path.string());
}

}  // namespace segbench
