#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "segbench/core/text.hpp"
#include "segbench/metrics/metrics.hpp"

namespace segbench {

Ranking rank(const DistanceMatrix& matrix, bool suppress_diagonal) {
    Ranking ranking;
    ranking.query_ids.assign(matrix.query_ids().begin(), matrix.query_ids().end());
    ranking.order.resize(matrix.rows());
    const auto candidates = matrix.candidate_ids();

    std::vector<std::size_t> idx(matrix.cols());
    for (std::size_t q = 0; q < matrix.rows(); ++q) {
        const auto row = matrix.row(q);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (row[a] != row[b]) return row[a] < row[b];
            return candidates[a] < candidates[b];
        });
        const SampleId self = matrix.query_ids()[q];
        if (suppress_diagonal && std::find(candidates.begin(), candidates.end(), self) == candidates.end()) {
            throw std::invalid_argument("query " + std::to_string(self) + " is not among the candidates");
        }
        auto& out = ranking.order[q];
        out.reserve(idx.size());
        for (const auto i : idx) {
            if (suppress_diagonal && candidates[i] == self) continue;
            out.push_back(candidates[i]);
        }
    }
    return ranking;
}

bool relevance(const WordSample& query, const WordSample& candidate) {
    return fold_case(query.transcription) == fold_case(candidate.transcription);
}

TranscriptionIndex::TranscriptionIndex(std::span<const WordSample> samples) {
    for (const auto& s : samples) folded_.emplace(s.sample_id, fold_case(s.transcription));
}

const std::string& TranscriptionIndex::folded(SampleId id) const {
    const auto it = folded_.find(id);
    if (it == folded_.end()) throw std::out_of_range("no transcription for sample " + std::to_string(id));
    return it->second;
}

bool TranscriptionIndex::relevant(SampleId query, SampleId candidate) const {
    return folded(query) == folded(candidate);
}

}  // namespace segbench
