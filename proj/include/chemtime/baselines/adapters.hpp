#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <json.hpp>

#include "chemtime/linalg.hpp"
#include "chemtime/model.hpp"
#include "chemtime/types.hpp"

namespace chemtime::baselines {

/// Column concatenation: sample i becomes the row
/// [channel 0 values..., channel 1 values..., ..., channel k-1 values...].
Matrix column_concat(const Dataset& ds);
std::vector<double> concat_row(const MTSample& s);

/// A classifier over single-channel series, the unit the column-ensembling
/// adapter replicates per channel.
class UnivariateClassifier {
public:
    virtual ~UnivariateClassifier() = default;
    virtual void fit(const std::vector<std::vector<double>>& series,
                     const std::vector<BinaryLabel>& labels) = 0;
    virtual BinaryLabel predict(const std::vector<double>& series) const = 0;
    virtual nlohmann::json to_json() const = 0;
};

using UnivariateFactory = std::function<std::unique_ptr<UnivariateClassifier>()>;

/// Column ensembling: one base classifier per channel, majority vote,
/// exact ties resolved to the positive class.
class EnsembleVote {
public:
    static BinaryLabel vote(const std::vector<BinaryLabel>& votes);

    void fit(const Dataset& train, const UnivariateFactory& base);
    BinaryLabel predict(const MTSample& s) const;

    int channel_count() const { return static_cast<int>(members_.size()); }
    const Standardizer& standardizer() const { return chan_std_; }

    nlohmann::json to_json() const;
    /// Rebuilds members through `base` plus each member's saved state.
    static EnsembleVote from_json(const nlohmann::json& j,
                                  const std::function<std::unique_ptr<UnivariateClassifier>(
                                      const nlohmann::json&)>& member_loader);

private:
    std::vector<std::unique_ptr<UnivariateClassifier>> members_;
    Standardizer chan_std_;
};

}  // namespace chemtime::baselines
