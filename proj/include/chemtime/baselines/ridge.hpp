#pragma once

#include <vector>

#include <json.hpp>

#include "chemtime/linalg.hpp"
#include "chemtime/types.hpp"

namespace chemtime::baselines {

/// Exact solve of (X^T X + lambda I) w = X^T y. Uses the primal system when
/// the feature count does not exceed the row count, otherwise the equivalent
/// dual form w = X^T (X X^T + lambda I)^{-1} y.
std::vector<double> ridge_solve(const Matrix& x, const std::vector<double>& y, double lambda);

inline std::vector<double> default_lambda_grid() { return {0.01, 0.1, 1.0, 10.0, 100.0}; }

/// Linear classifier with a closed-form ridge fit. Features are standardized
/// column-wise and a constant bias column is appended; the penalty is scaled
/// by the row count so the fit depends on the empirical distribution, not the
/// sample count. Lambda is picked by F1 on a fixed every-fifth-row holdout.
class RidgeClassifier {
public:
    void fit(const Matrix& x, const std::vector<BinaryLabel>& labels,
             const std::vector<double>& lambdas = default_lambda_grid());

    double score_row(const std::vector<double>& row) const;
    BinaryLabel predict_row(const std::vector<double>& row) const;
    std::vector<BinaryLabel> predict(const Matrix& x) const;

    double chosen_lambda() const { return chosen_lambda_; }
    const std::vector<double>& weights() const { return weights_; }
    bool fitted() const { return !weights_.empty(); }

    nlohmann::json to_json() const;
    static RidgeClassifier from_json(const nlohmann::json& j);

private:
    std::vector<double> feat_mean_, feat_std_;
    std::vector<double> weights_;  // last entry multiplies the bias column
    double chosen_lambda_ = 0.0;
};

}  // namespace chemtime::baselines
