#include "chemtime/eval/serial.hpp"

#include <algorithm>

namespace chemtime::eval {

bool serial_prefix(const PrefixView& view, const Dataset& test, int l0) {
    if (test.size() == 0) throw std::invalid_argument("serial_prefix: empty test set");
    int t_len = test.samples()[0].length();
    for (const auto& s : test.samples()) t_len = std::min(t_len, s.length());
    if (l0 < 1 || l0 > t_len) throw std::invalid_argument("serial_prefix: l0 outside [1, T]");

    std::vector<BinaryLabel> base;
    base.reserve(test.size());
    for (const auto& s : test.samples()) base.push_back(view.classify_prefix(s, l0));
    for (int l = l0 + 1; l <= t_len; ++l) {
        for (int i = 0; i < test.size(); ++i) {
            if (view.classify_prefix(test.samples()[i], l) != base[i]) return false;
        }
    }
    return true;
}

NativePrefixView::NativePrefixView(const baselines::Classifier& clf) : clf_(clf) {
    if (!clf.supports_prefix()) {
        throw CapabilityError(clf.kind() + ": prefix inference not supported; "
                              "use RetrainPrefixView for fixed-window models");
    }
}

BinaryLabel NativePrefixView::classify_prefix(const MTSample& s, int len) const {
    return clf_.predict_prefix(s, len);
}

RetrainPrefixView::RetrainPrefixView(baselines::ModelSpec spec, Dataset train, std::uint64_t seed)
    : spec_(std::move(spec)), train_(std::move(train)), seed_(seed) {}

BinaryLabel RetrainPrefixView::classify_prefix(const MTSample& s, int len) const {
    auto it = by_window_.find(len);
    if (it == by_window_.end()) {
        auto clf = baselines::make_classifier(spec_, seed_);
        std::vector<MTSample> cut;
        cut.reserve(train_.size());
        for (const auto& ts : train_.samples()) cut.push_back(prefix(ts, std::min(len, ts.length())));
        clf->fit(Dataset(train_.name(), train_.analyte_names(), std::move(cut),
                         train_.positive_analyte()));
        it = by_window_.emplace(len, std::move(clf)).first;
    }
    return it->second->predict(prefix(s, std::min(len, s.length())));
}

}  // namespace chemtime::eval
