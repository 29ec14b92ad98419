#include "chemtime/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace chemtime {

MTSample::MTSample(std::string id, std::vector<std::vector<double>> channels,
                   double sample_rate, int onset_index, std::vector<double> concentrations)
    : id_(std::move(id)),
      channels_(std::move(channels)),
      sample_rate_(sample_rate),
      onset_index_(onset_index),
      concentrations_(std::move(concentrations)) {
    if (channels_.empty()) throw DataError("sample '" + id_ + "': no channels");
    const std::size_t t = channels_[0].size();
    if (t == 0) throw DataError("sample '" + id_ + "': empty channels");
    for (const auto& row : channels_) {
        if (row.size() != t) throw DataError("sample '" + id_ + "': ragged channel lengths");
    }
    if (sample_rate_ <= 0.0) throw DataError("sample '" + id_ + "': sample_rate must be > 0");
    // onset_index == T is allowed: it marks flux starting past the recorded window.
    if (onset_index_ < 0 || onset_index_ > static_cast<int>(t)) {
        throw DataError("sample '" + id_ + "': onset_index out of [0, T]");
    }
    for (double c : concentrations_) {
        if (!(c >= 0.0)) throw DataError("sample '" + id_ + "': negative concentration");
    }
}

bool MTSample::is_blank() const {
    return std::all_of(concentrations_.begin(), concentrations_.end(),
                       [](double c) { return c == 0.0; });
}

int MTSample::single_analyte_index() const {
    int idx = -1;
    for (int i = 0; i < static_cast<int>(concentrations_.size()); ++i) {
        if (concentrations_[i] > 0.0) {
            if (idx >= 0) throw DataError("sample '" + id_ + "': multi-analyte exposure");
            idx = i;
        }
    }
    if (idx < 0) throw DataError("sample '" + id_ + "': blank exposure has no analyte");
    return idx;
}

Dataset::Dataset(std::string name, std::vector<std::string> analyte_names,
                 std::vector<MTSample> samples, std::string positive_analyte)
    : name_(std::move(name)),
      analyte_names_(std::move(analyte_names)),
      samples_(std::move(samples)),
      positive_analyte_(std::move(positive_analyte)) {
    if (analyte_names_.empty()) throw DataError("dataset '" + name_ + "': no analytes");
    if (std::find(analyte_names_.begin(), analyte_names_.end(), positive_analyte_) ==
        analyte_names_.end()) {
        throw DataError("dataset '" + name_ + "': positive analyte '" + positive_analyte_ +
                        "' not in analyte list");
    }
    std::unordered_set<std::string> ids;
    for (const auto& s : samples_) {
        if (s.concentrations().size() != analyte_names_.size()) {
            throw DataError("dataset '" + name_ + "': sample '" + s.id() +
                            "' concentration length mismatch");
        }
        if (!samples_.empty()) {
            if (s.channel_count() != samples_[0].channel_count()) {
                throw DataError("dataset '" + name_ + "': inconsistent channel counts");
            }
            if (s.sample_rate() != samples_[0].sample_rate()) {
                throw DataError("dataset '" + name_ + "': inconsistent sample rates");
            }
        }
        if (!ids.insert(s.id()).second) {
            throw DataError("dataset '" + name_ + "': duplicate sample id '" + s.id() + "'");
        }
    }
}

int Dataset::positive_analyte_index() const {
    auto it = std::find(analyte_names_.begin(), analyte_names_.end(), positive_analyte_);
    return static_cast<int>(it - analyte_names_.begin());
}

const MTSample& Dataset::by_id(const std::string& id) const {
    for (const auto& s : samples_) {
        if (s.id() == id) return s;
    }
    throw std::out_of_range("dataset '" + name_ + "': no sample with id '" + id + "'");
}

BinaryLabel Dataset::label_of(const MTSample& s) const {
    const int p = positive_analyte_index();
    if (p >= static_cast<int>(s.concentrations().size())) {
        throw DataError("sample '" + s.id() + "': concentration vector too short");
    }
    return s.concentrations()[p] > 0.0 ? BinaryLabel::positive : BinaryLabel::negative;
}

std::vector<BinaryLabel> Dataset::labels() const {
    std::vector<BinaryLabel> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(label_of(s));
    return out;
}

Dataset Dataset::subset(const std::vector<std::string>& ids) const {
    std::unordered_map<std::string, const MTSample*> index;
    for (const auto& s : samples_) index.emplace(s.id(), &s);
    std::vector<MTSample> picked;
    picked.reserve(ids.size());
    for (const auto& id : ids) {
        auto it = index.find(id);
        if (it == index.end()) {
            throw std::out_of_range("dataset '" + name_ + "': no sample with id '" + id + "'");
        }
        picked.push_back(*it->second);
    }
    return Dataset(name_, analyte_names_, std::move(picked), positive_analyte_);
}

MTSample prefix(const MTSample& x, int l) {
    const int t = x.length();
    if (l < 1 || l > t) {
        throw std::out_of_range("prefix: l=" + std::to_string(l) + " outside [1, " +
                                std::to_string(t) + "]");
    }
    std::vector<std::vector<double>> cut;
    cut.reserve(x.channels().size());
    for (const auto& row : x.channels()) {
        cut.emplace_back(row.begin(), row.begin() + l);
    }
    return MTSample(x.id(), std::move(cut), x.sample_rate(),
                    std::min(x.onset_index(), l), x.concentrations());
}

}  // namespace chemtime
