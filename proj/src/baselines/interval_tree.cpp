#include "chemtime/baselines/interval_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "chemtime/rng.hpp"

namespace chemtime::baselines {

namespace {

double gini(int pos, int total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(pos) / total;
    return 2.0 * p * (1.0 - p);
}

BinaryLabel majority(const std::vector<BinaryLabel>& y, const std::vector<int>& idx) {
    int pos = 0;
    for (int i : idx) {
        if (y[i] == BinaryLabel::positive) ++pos;
    }
    return 2 * pos >= static_cast<int>(idx.size()) ? BinaryLabel::positive
                                                   : BinaryLabel::negative;
}

/// mean, sample std, least-squares slope of one window.
void window_stats(const std::vector<double>& v, int start, int end, double out[3]) {
    const int m = end - start;
    double mean = 0.0;
    for (int i = start; i < end; ++i) mean += v[i];
    mean /= m;
    double var = 0.0;
    for (int i = start; i < end; ++i) {
        const double d = v[i] - mean;
        var += d * d;
    }
    const double sd = m > 1 ? std::sqrt(var / (m - 1)) : 0.0;
    double slope = 0.0;
    if (m > 1) {
        const double t_mean = (m - 1) / 2.0;
        double num = 0.0, den = 0.0;
        for (int i = start; i < end; ++i) {
            const double dt = (i - start) - t_mean;
            num += dt * (v[i] - mean);
            den += dt * dt;
        }
        slope = num / den;
    }
    out[0] = mean;
    out[1] = sd;
    out[2] = slope;
}

}  // namespace

std::pair<double, double> best_gini_split(const std::vector<double>& values,
                                          const std::vector<BinaryLabel>& labels, int min_leaf) {
    const int n = static_cast<int>(values.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&values](int a, int b) { return values[a] < values[b]; });

    int total_pos = 0;
    for (BinaryLabel l : labels) {
        if (l == BinaryLabel::positive) ++total_pos;
    }
    const double parent = gini(total_pos, n);

    double best_gain = 0.0;
    double best_threshold = 0.0;
    int left_pos = 0;
    for (int i = 0; i < n - 1; ++i) {
        if (labels[order[i]] == BinaryLabel::positive) ++left_pos;
        const int left_n = i + 1;
        const int right_n = n - left_n;
        if (values[order[i]] == values[order[i + 1]]) continue;  // not a cut point
        if (left_n < min_leaf || right_n < min_leaf) continue;
        const double g_left = gini(left_pos, left_n);
        const double g_right = gini(total_pos - left_pos, right_n);
        const double gain =
            parent - (left_n * g_left + right_n * g_right) / static_cast<double>(n);
        if (gain > best_gain + 1e-15) {
            best_gain = gain;
            best_threshold = 0.5 * (values[order[i]] + values[order[i + 1]]);
        }
    }
    return {best_gain, best_threshold};
}

void IntervalTreeClassifier::fit(const Dataset& train) {
    if (train.size() < 2) {
        throw std::invalid_argument("interval_tree: need at least 2 samples");
    }
    chan_std_ = Standardizer::fit(train);
    const int t_len = train.samples()[0].length();
    for (const auto& s : train.samples()) {
        if (s.length() != t_len) {
            throw std::invalid_argument("interval_tree: ragged sample lengths");
        }
    }

    Rng rng(derive_seed(seed_, "interval_tree/intervals"));
    const int min_len = std::min(3, t_len);
    intervals_.clear();
    intervals_.reserve(n_intervals_);
    for (int i = 0; i < n_intervals_; ++i) {
        const int start = static_cast<int>(rng.uniform_int(t_len - min_len + 1));
        const int len = min_len + static_cast<int>(rng.uniform_int(t_len - start - min_len + 1));
        intervals_.push_back({start, start + len});
    }

    std::vector<std::vector<double>> feats;
    feats.reserve(train.size());
    for (const auto& s : train.samples()) feats.push_back(features_of(s));
    const std::vector<BinaryLabel> y = train.labels();

    nodes_.clear();
    std::vector<int> idx(train.size());
    std::iota(idx.begin(), idx.end(), 0);
    build(feats, y, idx, 0);
}

int IntervalTreeClassifier::build(const std::vector<std::vector<double>>& feats,
                                  const std::vector<BinaryLabel>& y, std::vector<int>& idx,
                                  int depth) {
    const int node_id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[node_id].leaf = majority(y, idx);

    int pos = 0;
    for (int i : idx) {
        if (y[i] == BinaryLabel::positive) ++pos;
    }
    const bool pure = pos == 0 || pos == static_cast<int>(idx.size());
    if (pure || depth >= max_depth_ || static_cast<int>(idx.size()) < 2 * min_leaf_) {
        return node_id;
    }

    const int n_feats = static_cast<int>(feats[0].size());
    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<double> column(idx.size());
    std::vector<BinaryLabel> labels(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) labels[i] = y[idx[i]];
    for (int f = 0; f < n_feats; ++f) {
        for (std::size_t i = 0; i < idx.size(); ++i) column[i] = feats[idx[i]][f];
        const auto [gain, threshold] = best_gini_split(column, labels, min_leaf_);
        if (gain > best_gain + 1e-15) {
            best_gain = gain;
            best_feature = f;
            best_threshold = threshold;
        }
    }
    if (best_feature < 0) return node_id;  // no usable split, stay a leaf

    std::vector<int> left_idx, right_idx;
    for (int i : idx) {
        (feats[i][best_feature] <= best_threshold ? left_idx : right_idx).push_back(i);
    }
    nodes_[node_id].is_leaf = false;
    nodes_[node_id].feature = best_feature;
    nodes_[node_id].threshold = best_threshold;
    const int left = build(feats, y, left_idx, depth + 1);
    nodes_[node_id].left = left;
    const int right = build(feats, y, right_idx, depth + 1);
    nodes_[node_id].right = right;
    return node_id;
}

std::vector<double> IntervalTreeClassifier::features_of(const MTSample& s) const {
    const int k = s.channel_count();
    const int t_len = s.length();
    std::vector<double> feats;
    feats.reserve(intervals_.size() * k * 3);
    std::vector<double> ch;
    for (int c = 0; c < k; ++c) {
        ch = s.channels()[c];
        for (double& v : ch) v = chan_std_.apply(c, v);
        for (const auto& iv : intervals_) {
            const int start = std::min(iv.start, t_len - 1);
            const int end = std::min(iv.end, t_len);
            double out[3];
            window_stats(ch, start, std::max(end, start + 1), out);
            feats.push_back(out[0]);
            feats.push_back(out[1]);
            feats.push_back(out[2]);
        }
    }
    return feats;
}

BinaryLabel IntervalTreeClassifier::predict(const MTSample& s) const {
    if (nodes_.empty()) throw std::logic_error("interval_tree: not fitted");
    const std::vector<double> feats = features_of(s);
    int node = 0;
    while (!nodes_[node].is_leaf) {
        node = feats[nodes_[node].feature] <= nodes_[node].threshold ? nodes_[node].left
                                                                     : nodes_[node].right;
    }
    return nodes_[node].leaf;
}

nlohmann::json IntervalTreeClassifier::to_json() const {
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& iv : intervals_) intervals.push_back({{"start", iv.start}, {"end", iv.end}});
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : nodes_) {
        nodes.push_back({{"is_leaf", n.is_leaf},
                         {"leaf", n.leaf == BinaryLabel::positive ? 1 : 0},
                         {"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right}});
    }
    return nlohmann::json{
        {"n_intervals", n_intervals_},
        {"max_depth", max_depth_},
        {"min_leaf", min_leaf_},
        {"seed", seed_},
        {"standardizer", {{"mean", chan_std_.mean}, {"std", chan_std_.stddev}}},
        {"intervals", std::move(intervals)},
        {"nodes", std::move(nodes)}};
}

IntervalTreeClassifier IntervalTreeClassifier::from_json(const nlohmann::json& j) {
    IntervalTreeClassifier c(j.at("n_intervals").get<int>(), j.at("max_depth").get<int>(),
                             j.at("min_leaf").get<int>(), j.at("seed").get<std::uint64_t>());
    c.chan_std_.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
    c.chan_std_.stddev = j.at("standardizer").at("std").get<std::vector<double>>();
    for (const auto& iv : j.at("intervals")) {
        c.intervals_.push_back({iv.at("start").get<int>(), iv.at("end").get<int>()});
    }
    for (const auto& nj : j.at("nodes")) {
        Node n;
        n.is_leaf = nj.at("is_leaf").get<bool>();
        n.leaf = nj.at("leaf").get<int>() ? BinaryLabel::positive : BinaryLabel::negative;
        n.feature = nj.at("feature").get<int>();
        n.threshold = nj.at("threshold").get<double>();
        n.left = nj.at("left").get<int>();
        n.right = nj.at("right").get<int>();
        c.nodes_.push_back(n);
    }
    return c;
}

}  // namespace chemtime::baselines
