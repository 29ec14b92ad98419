#include "chemtime/embedding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chemtime {

EmbeddingTable::EmbeddingTable(int dim, std::map<std::string, std::vector<double>> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ < 1) throw DataError("embedding table: dim must be >= 1");
    if (entries_.count(kNoneKey) == 0) {
        throw DataError("embedding table: missing required 'None' entry");
    }
    for (const auto& [name, vec] : entries_) {
        if (static_cast<int>(vec.size()) != dim_) {
            throw DataError("embedding table: entry '" + name + "' has wrong dimension");
        }
    }
}

const std::vector<double>& EmbeddingTable::at(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
        throw std::out_of_range("embedding table: no entry for '" + name + "'");
    }
    return it->second;
}

EmbeddingTable EmbeddingTable::unit_circle(const std::vector<std::string>& analyte_names) {
    std::map<std::string, std::vector<double>> entries;
    entries[kNoneKey] = {0.0, 0.0};
    const int n = static_cast<int>(analyte_names.size());
    for (int i = 0; i < n; ++i) {
        const double angle = 2.0 * std::numbers::pi * i / n;
        entries[analyte_names[i]] = {std::cos(angle), std::sin(angle)};
    }
    return EmbeddingTable(2, std::move(entries));
}

TargetSequence build_target_sequence(const MTSample& sample, const EmbeddingTable& table,
                                     const std::vector<std::string>& analyte_names) {
    const int t_len = sample.length();
    TargetSequence seq;
    seq.targets.reserve(t_len);
    seq.names.reserve(t_len);

    std::string active = EmbeddingTable::kNoneKey;
    if (!sample.is_blank()) {
        const int idx = sample.single_analyte_index();  // throws on multi-analyte
        if (idx >= static_cast<int>(analyte_names.size())) {
            throw std::invalid_argument("build_target_sequence: analyte index beyond name list");
        }
        active = analyte_names[idx];
    }
    const std::vector<double>& none_vec = table.at(EmbeddingTable::kNoneKey);
    const std::vector<double>& active_vec = table.at(active);

    const int onset = std::min(sample.onset_index(), t_len);
    for (int t = 0; t < t_len; ++t) {
        if (t < onset) {
            seq.targets.push_back(none_vec);
            seq.names.push_back(EmbeddingTable::kNoneKey);
        } else {
            seq.targets.push_back(active_vec);
            seq.names.push_back(active);
        }
    }
    return seq;
}

}  // namespace chemtime
