#include "chemtime/eval/ranks.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chemtime::eval {

namespace {
using CellKey = std::pair<std::string, int>;  // dataset, split
}

std::map<std::string, double> average_ranks(const std::vector<BenchmarkRecord>& records) {
    if (records.empty()) throw std::invalid_argument("average_ranks: no records");

    std::set<std::string> models;
    std::set<CellKey> cells;
    std::map<std::pair<std::string, CellKey>, double> f1_of;
    for (const auto& r : records) {
        if (r.status != "ok") {
            throw std::invalid_argument("average_ranks: model '" + r.model +
                                        "' has a failed record on dataset '" + r.dataset +
                                        "' split " + std::to_string(r.split_index));
        }
        models.insert(r.model);
        const CellKey cell{r.dataset, r.split_index};
        cells.insert(cell);
        f1_of[{r.model, cell}] = r.f1;
    }
    for (const auto& m : models) {
        for (const auto& cell : cells) {
            if (f1_of.find({m, cell}) == f1_of.end()) {
                throw std::invalid_argument("average_ranks: missing record for model '" + m +
                                            "' on dataset '" + cell.first + "' split " +
                                            std::to_string(cell.second));
            }
        }
    }

    std::map<std::string, double> rank_sum;
    for (const auto& m : models) rank_sum[m] = 0.0;
    for (const auto& cell : cells) {
        std::vector<std::pair<double, std::string>> scored;
        scored.reserve(models.size());
        for (const auto& m : models) scored.emplace_back(f1_of[{m, cell}], m);
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            return a.first > b.first || (a.first == b.first && a.second < b.second);
        });
        // Tied scores share the mean of the positions they occupy.
        std::size_t i = 0;
        while (i < scored.size()) {
            std::size_t j = i;
            while (j + 1 < scored.size() && scored[j + 1].first == scored[i].first) ++j;
            const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (std::size_t t = i; t <= j; ++t) rank_sum[scored[t].second] += mean_rank;
            i = j + 1;
        }
    }
    std::map<std::string, double> out;
    for (const auto& [m, sum] : rank_sum) out[m] = sum / static_cast<double>(cells.size());
    return out;
}

std::vector<BenchmarkRecord> filter_converged(const std::vector<BenchmarkRecord>& records) {
    std::set<CellKey> cells;
    std::set<std::string> models;
    std::set<std::string> failed;
    std::map<std::pair<std::string, CellKey>, int> seen;
    for (const auto& r : records) {
        cells.insert({r.dataset, r.split_index});
        models.insert(r.model);
        if (r.status != "ok") failed.insert(r.model);
        ++seen[{r.model, {r.dataset, r.split_index}}];
    }
    for (const auto& m : models) {
        for (const auto& cell : cells) {
            if (seen.find({m, cell}) == seen.end()) failed.insert(m);
        }
    }
    std::vector<BenchmarkRecord> kept;
    for (const auto& r : records) {
        if (failed.count(r.model) == 0) kept.push_back(r);
    }
    return kept;
}

}  // namespace chemtime::eval
