#pragma once

#include <vector>

#include <json.hpp>

#include "chemtime/baselines/adapters.hpp"
#include "chemtime/linalg.hpp"
#include "chemtime/model.hpp"
#include "chemtime/types.hpp"

namespace chemtime::baselines {

/// K-nearest-neighbour on column-concatenated, per-channel standardized rows.
/// Distance ties go to the smallest training index; vote ties to positive.
class KnnConcatClassifier {
public:
    explicit KnnConcatClassifier(int k_neighbors = 1) : k_neighbors_(k_neighbors) {}

    void fit(const Dataset& train);
    BinaryLabel predict(const MTSample& s) const;

    nlohmann::json to_json() const;
    static KnnConcatClassifier from_json(const nlohmann::json& j);

private:
    int k_neighbors_ = 1;
    Standardizer chan_std_;
    int t_len_ = 0;
    std::vector<std::vector<double>> rows_;  // standardized concat rows
    std::vector<BinaryLabel> labels_;
};

/// 1-nearest-neighbour over single-channel series; the stock base classifier
/// for the column-ensembling adapter.
class Univariate1NN : public UnivariateClassifier {
public:
    void fit(const std::vector<std::vector<double>>& series,
             const std::vector<BinaryLabel>& labels) override;
    BinaryLabel predict(const std::vector<double>& series) const override;
    nlohmann::json to_json() const override;
    static std::unique_ptr<UnivariateClassifier> from_json(const nlohmann::json& j);

private:
    std::vector<std::vector<double>> series_;
    std::vector<BinaryLabel> labels_;
};

}  // namespace chemtime::baselines
