#pragma once

#include <vector>

#include "chemtime/types.hpp"

namespace chemtime {

/// Binary F1 over the positive class: 2TP / (2TP + FP + FN), 0 on empty denominator.
double f1_score(const std::vector<BinaryLabel>& preds, const std::vector<BinaryLabel>& truth);

/// round(s * rate), but never 0 for a strictly positive duration.
int seconds_to_steps(double seconds, double rate_hz);

}  // namespace chemtime
