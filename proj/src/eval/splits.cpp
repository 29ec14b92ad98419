#include "chemtime/eval/splits.hpp"

#include <algorithm>
#include <stdexcept>

#include "chemtime/rng.hpp"

namespace chemtime::eval {

std::vector<SplitSpec> make_splits(const Dataset& ds, std::uint64_t seed, int n_folds) {
    if (n_folds < 2) throw std::invalid_argument("make_splits: need at least 2 folds");
    std::vector<std::string> pos, neg;
    for (const auto& s : ds.samples()) {
        (ds.label_of(s) == BinaryLabel::positive ? pos : neg).push_back(s.id());
    }
    if (static_cast<int>(pos.size()) < n_folds || static_cast<int>(neg.size()) < n_folds) {
        throw std::invalid_argument("make_splits: dataset '" + ds.name() + "' needs at least " +
                                    std::to_string(n_folds) + " samples per class");
    }

    Rng rng(derive_seed(seed, "eval/splits/" + ds.name()));
    rng.shuffle(pos);
    rng.shuffle(neg);

    // Stratified deal: each class round-robins into the folds, the cursor
    // carrying over between classes so fold sizes stay within one of equal.
    std::vector<std::vector<std::string>> folds(n_folds);
    std::size_t cursor = 0;
    for (const auto* cls : {&pos, &neg}) {
        for (const auto& id : *cls) folds[cursor++ % n_folds].push_back(id);
    }

    std::vector<SplitSpec> splits;
    splits.reserve(n_folds);
    for (int f = 0; f < n_folds; ++f) {
        SplitSpec spec;
        spec.dataset = ds.name();
        spec.split_index = f;
        spec.withheld_ids = folds[f];
        for (int g = 0; g < n_folds; ++g) {
            if (g == f) continue;
            spec.train_ids.insert(spec.train_ids.end(), folds[g].begin(), folds[g].end());
        }
        std::sort(spec.train_ids.begin(), spec.train_ids.end());
        std::sort(spec.withheld_ids.begin(), spec.withheld_ids.end());
        splits.push_back(std::move(spec));
    }
    return splits;
}

}  // namespace chemtime::eval
