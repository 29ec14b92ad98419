#include "chemtime/margin.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "chemtime/linalg.hpp"
#include "chemtime/metrics.hpp"
#include "chemtime/rng.hpp"

namespace chemtime {

LinearMargin fit_linear_margin(const std::vector<std::vector<double>>& points,
                               const std::vector<BinaryLabel>& labels,
                               const MarginFitConfig& cfg) {
    if (points.size() != labels.size()) {
        throw std::invalid_argument("fit_linear_margin: size mismatch");
    }
    if (points.empty()) throw std::invalid_argument("fit_linear_margin: empty training set");
    const bool has_pos = std::find(labels.begin(), labels.end(), BinaryLabel::positive) !=
                         labels.end();
    const bool has_neg = std::find(labels.begin(), labels.end(), BinaryLabel::negative) !=
                         labels.end();
    if (!has_pos || !has_neg) {
        throw TrainingError("fit_linear_margin: degenerate fit, training set has a single class");
    }

    const int d = static_cast<int>(points[0].size());
    const int n = static_cast<int>(points.size());
    // Bias handled as an appended constant feature.
    std::vector<double> w(d + 1, 0.0);
    Rng rng(derive_seed(cfg.seed, "margin/pegasos"));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    long t = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (int i = 0; i < n; ++i) {
            ++t;
            const double eta = 1.0 / (cfg.lambda * static_cast<double>(t));
            const std::vector<double>& x = points[order[i]];
            const double y = labels[order[i]] == BinaryLabel::positive ? 1.0 : -1.0;
            double score = w[d];
            for (int j = 0; j < d; ++j) score += w[j] * x[j];
            const double shrink = 1.0 - eta * cfg.lambda;
            for (double& v : w) v *= shrink;
            if (y * score < 1.0) {
                const double s = eta * y;
                for (int j = 0; j < d; ++j) w[j] += s * x[j];
                w[d] += s;
            }
        }
    }
    LinearMargin m;
    m.w.assign(w.begin(), w.begin() + d);
    m.b0 = w[d];
    return m;
}

void fit_boost(ChemTimeModel& model, const Dataset& train, const MarginFitConfig& cfg) {
    if (train.size() == 0) throw std::invalid_argument("fit_boost: empty training set");
    if (model.boost_mode == BoostMode::nearest_target) {
        model.margin.reset();
        model.boost_fitted = true;
        return;
    }
    std::vector<std::vector<double>> finals;
    finals.reserve(train.size());
    for (const auto& s : train.samples()) {
        Trajectory traj = forward(model, s);
        finals.push_back(traj.points.back());
    }
    model.margin = fit_linear_margin(finals, train.labels(), cfg);
    model.boost_fitted = true;
}

PredictionResult predict(const ChemTimeModel& model, const MTSample& sample, int prefix_len) {
    if (!model.boost_fitted) throw CapabilityError("predict: boost not fit");
    const auto t0 = std::chrono::steady_clock::now();
    const MTSample cut = prefix(sample, prefix_len);
    RecurrentState state = initial_state(model);
    const int k = model.input_size();
    if (cut.channel_count() != k) {
        throw std::invalid_argument("predict: channel count mismatch");
    }
    std::vector<double> col(k), e;
    for (int t = 0; t < cut.length(); ++t) {
        for (int c = 0; c < k; ++c) col[c] = cut.channels()[c][t];
        e = step(model, state, col);
    }
    const double dist = decision_distance(model, e);
    const auto t1 = std::chrono::steady_clock::now();

    PredictionResult res;
    res.label = dist > 0.0 ? BinaryLabel::positive : BinaryLabel::negative;
    res.decision_distance = dist;
    res.prefix_len = prefix_len;
    res.infer_seconds = std::chrono::duration<double>(t1 - t0).count();
    return res;
}

std::vector<BinaryLabel> prefix_labels(const ChemTimeModel& model, const MTSample& sample) {
    if (!model.boost_fitted) throw CapabilityError("prefix_labels: boost not fit");
    Trajectory traj = forward(model, sample);
    std::vector<BinaryLabel> out;
    out.reserve(traj.length());
    for (double d : traj.distances) {
        out.push_back(d > 0.0 ? BinaryLabel::positive : BinaryLabel::negative);
    }
    return out;
}

int calibrate_early_window(const ChemTimeModel& model, const Dataset& validation,
                           double f1_floor) {
    if (validation.size() == 0) throw std::invalid_argument("calibrate_early_window: empty set");
    if (!(f1_floor > 0.0 && f1_floor <= 1.0)) {
        throw std::invalid_argument("calibrate_early_window: floor outside (0, 1]");
    }
    int t_len = validation.samples()[0].length();
    for (const auto& s : validation.samples()) t_len = std::min(t_len, s.length());

    // One encoder pass per sample covers every prefix.
    std::vector<std::vector<BinaryLabel>> per_sample;
    per_sample.reserve(validation.size());
    for (const auto& s : validation.samples()) per_sample.push_back(prefix_labels(model, s));
    const std::vector<BinaryLabel> truth = validation.labels();

    int best = t_len;
    for (int l = t_len; l >= 1; --l) {
        std::vector<BinaryLabel> preds;
        preds.reserve(validation.size());
        for (const auto& labels : per_sample) preds.push_back(labels[l - 1]);
        if (f1_score(preds, truth) >= f1_floor) {
            best = l;
        } else {
            break;  // the floor must hold for every longer prefix too
        }
    }
    return best;
}

}  // namespace chemtime
