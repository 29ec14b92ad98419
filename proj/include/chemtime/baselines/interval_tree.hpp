#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "chemtime/model.hpp"
#include "chemtime/types.hpp"

namespace chemtime::baselines {

/// Random-interval summary features (mean, std, slope per interval per
/// channel) classified by a single gini decision tree.
class IntervalTreeClassifier {
public:
    struct Interval {
        int start = 0;
        int end = 0;  // exclusive
    };

    struct Node {
        bool is_leaf = true;
        BinaryLabel leaf = BinaryLabel::negative;
        int feature = -1;
        double threshold = 0.0;
        int left = -1;
        int right = -1;
    };

    IntervalTreeClassifier(int n_intervals = 30, int max_depth = 8, int min_leaf = 2,
                           std::uint64_t seed = 0)
        : n_intervals_(n_intervals), max_depth_(max_depth), min_leaf_(min_leaf), seed_(seed) {}

    void fit(const Dataset& train);
    BinaryLabel predict(const MTSample& s) const;

    std::vector<double> features_of(const MTSample& s) const;
    const std::vector<Node>& nodes() const { return nodes_; }

    nlohmann::json to_json() const;
    static IntervalTreeClassifier from_json(const nlohmann::json& j);

private:
    int n_intervals_;
    int max_depth_;
    int min_leaf_;
    std::uint64_t seed_;
    Standardizer chan_std_;
    std::vector<Interval> intervals_;
    std::vector<Node> nodes_;

    int build(const std::vector<std::vector<double>>& feats, const std::vector<BinaryLabel>& y,
              std::vector<int>& idx, int depth);
};

/// Exhaustive best gini split over one feature column; exposed for the
/// split-search tests. Returns {gain, threshold}; gain <= 0 means no split.
std::pair<double, double> best_gini_split(const std::vector<double>& values,
                                          const std::vector<BinaryLabel>& labels, int min_leaf);

}  // namespace chemtime::baselines
