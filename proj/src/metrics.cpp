#include "chemtime/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chemtime {

double f1_score(const std::vector<BinaryLabel>& preds, const std::vector<BinaryLabel>& truth) {
    if (preds.size() != truth.size()) {
        throw std::invalid_argument("f1_score: " + std::to_string(preds.size()) +
                                    " predictions vs " + std::to_string(truth.size()) +
                                    " truths");
    }
    if (preds.empty()) throw std::invalid_argument("f1_score: empty inputs");
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const bool p = preds[i] == BinaryLabel::positive;
        const bool t = truth[i] == BinaryLabel::positive;
        if (p && t) ++tp;
        else if (p && !t) ++fp;
        else if (!p && t) ++fn;
    }
    const double denom = static_cast<double>(2 * tp + fp + fn);
    return denom == 0.0 ? 0.0 : 2.0 * static_cast<double>(tp) / denom;
}

int seconds_to_steps(double seconds, double rate_hz) {
    if (seconds < 0.0) throw std::invalid_argument("seconds_to_steps: negative duration");
    if (rate_hz <= 0.0) throw std::invalid_argument("seconds_to_steps: rate must be > 0");
    if (seconds == 0.0) return 0;
    const int n = static_cast<int>(std::lround(seconds * rate_hz));
    return n < 1 ? 1 : n;
}

}  // namespace chemtime
