#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chemtime/types.hpp"

namespace chemtime::eval {

/// One of the four 75/25 training splits of a dataset's training corpus.
struct SplitSpec {
    std::string dataset;
    int split_index = 0;
    std::vector<std::string> train_ids;     // 75% used for fitting
    std::vector<std::string> withheld_ids;  // the removed 25% fold
};

/// Seeded stratified n-fold partition; split i withholds fold i. Folds
/// partition the corpus exactly. Requires at least n samples per class.
std::vector<SplitSpec> make_splits(const Dataset& ds, std::uint64_t seed, int n_folds = 4);

}  // namespace chemtime::eval
