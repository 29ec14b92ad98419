#include "chemtime/baselines/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chemtime/metrics.hpp"

namespace chemtime::baselines {

std::vector<double> ridge_solve(const Matrix& x, const std::vector<double>& y, double lambda) {
    const int n = x.rows;
    const int p = x.cols;
    if (static_cast<int>(y.size()) != n) {
        throw std::invalid_argument("ridge_solve: y length != row count");
    }
    if (n == 0 || p == 0) throw std::invalid_argument("ridge_solve: empty system");
    if (lambda < 0.0) throw std::invalid_argument("ridge_solve: negative lambda");

    if (p <= n) {
        Matrix gram(p, p);
        for (int i = 0; i < n; ++i) {
            const double* row = x.row(i);
            for (int a = 0; a < p; ++a) {
                const double ra = row[a];
                if (ra == 0.0) continue;
                double* g = gram.row(a);
                for (int b = a; b < p; ++b) g[b] += ra * row[b];
            }
        }
        for (int a = 0; a < p; ++a) {
            for (int b = 0; b < a; ++b) gram(a, b) = gram(b, a);
            gram(a, a) += lambda;
        }
        std::vector<double> xty(p, 0.0);
        for (int i = 0; i < n; ++i) {
            const double* row = x.row(i);
            for (int a = 0; a < p; ++a) xty[a] += row[a] * y[i];
        }
        return cholesky_solve(std::move(gram), std::move(xty));
    }

    // Dual route: w = X^T (X X^T + lambda I)^{-1} y, identical in exact arithmetic.
    Matrix gram(n, n);
    for (int i = 0; i < n; ++i) {
        const double* ri = x.row(i);
        for (int j = i; j < n; ++j) {
            const double* rj = x.row(j);
            double s = 0.0;
            for (int a = 0; a < p; ++a) s += ri[a] * rj[a];
            gram(i, j) = s;
            gram(j, i) = s;
        }
        gram(i, i) += lambda;
    }
    std::vector<double> alpha = cholesky_solve(std::move(gram), y);
    std::vector<double> w(p, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* row = x.row(i);
        const double ai = alpha[i];
        for (int a = 0; a < p; ++a) w[a] += ai * row[a];
    }
    return w;
}

namespace {

Matrix standardize_and_bias(const Matrix& x, const std::vector<double>& mean,
                            const std::vector<double>& std_dev) {
    Matrix out(x.rows, x.cols + 1);
    for (int i = 0; i < x.rows; ++i) {
        const double* src = x.row(i);
        double* dst = out.row(i);
        for (int j = 0; j < x.cols; ++j) dst[j] = (src[j] - mean[j]) / std_dev[j];
        dst[x.cols] = 1.0;
    }
    return out;
}

std::vector<double> signed_labels(const std::vector<BinaryLabel>& labels) {
    std::vector<double> y(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        y[i] = labels[i] == BinaryLabel::positive ? 1.0 : -1.0;
    }
    return y;
}

Matrix take_rows(const Matrix& x, const std::vector<int>& idx) {
    Matrix out(static_cast<int>(idx.size()), x.cols);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const double* src = x.row(idx[i]);
        std::copy(src, src + x.cols, out.row(static_cast<int>(i)));
    }
    return out;
}

}  // namespace

void RidgeClassifier::fit(const Matrix& x, const std::vector<BinaryLabel>& labels,
                          const std::vector<double>& lambdas) {
    const int n = x.rows;
    const int p = x.cols;
    if (n < 2) throw std::invalid_argument("RidgeClassifier::fit: need at least 2 rows");
    if (static_cast<int>(labels.size()) != n) {
        throw std::invalid_argument("RidgeClassifier::fit: label count mismatch");
    }
    if (lambdas.empty()) throw std::invalid_argument("RidgeClassifier::fit: empty lambda grid");
    const bool has_pos = std::count(labels.begin(), labels.end(), BinaryLabel::positive) > 0;
    if (!has_pos || std::count(labels.begin(), labels.end(), BinaryLabel::negative) == 0) {
        throw TrainingError("RidgeClassifier::fit: both classes required");
    }

    feat_mean_.assign(p, 0.0);
    feat_std_.assign(p, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* row = x.row(i);
        for (int j = 0; j < p; ++j) feat_mean_[j] += row[j];
    }
    for (int j = 0; j < p; ++j) feat_mean_[j] /= n;
    for (int i = 0; i < n; ++i) {
        const double* row = x.row(i);
        for (int j = 0; j < p; ++j) {
            const double d = row[j] - feat_mean_[j];
            feat_std_[j] += d * d;
        }
    }
    for (int j = 0; j < p; ++j) {
        feat_std_[j] = std::sqrt(feat_std_[j] / n);
        if (feat_std_[j] < 1e-12) feat_std_[j] = 1.0;
    }

    const Matrix design = standardize_and_bias(x, feat_mean_, feat_std_);
    const std::vector<double> y = signed_labels(labels);

    double best_lambda = lambdas.front();
    if (lambdas.size() > 1) {
        // Deterministic 80/20 holdout: every fifth row validates.
        std::vector<int> fit_idx, val_idx;
        for (int i = 0; i < n; ++i) {
            (i % 5 == 4 ? val_idx : fit_idx).push_back(i);
        }
        bool usable = !val_idx.empty() && !fit_idx.empty();
        if (usable) {
            int pos = 0, neg = 0;
            for (int i : fit_idx) {
                (labels[i] == BinaryLabel::positive ? pos : neg)++;
            }
            usable = pos > 0 && neg > 0;
        }
        if (usable) {
            const Matrix fit_x = take_rows(design, fit_idx);
            std::vector<double> fit_y;
            for (int i : fit_idx) fit_y.push_back(y[i]);
            std::vector<BinaryLabel> val_truth;
            for (int i : val_idx) val_truth.push_back(labels[i]);

            double best_f1 = -1.0;
            for (double lambda : lambdas) {
                const std::vector<double> w =
                    ridge_solve(fit_x, fit_y, lambda * static_cast<double>(fit_x.rows));
                std::vector<BinaryLabel> preds;
                preds.reserve(val_idx.size());
                for (int i : val_idx) {
                    double s = 0.0;
                    const double* row = design.row(i);
                    for (int j = 0; j < design.cols; ++j) s += row[j] * w[j];
                    preds.push_back(s > 0.0 ? BinaryLabel::positive : BinaryLabel::negative);
                }
                const double f1 = f1_score(preds, val_truth);
                if (f1 > best_f1) {
                    best_f1 = f1;
                    best_lambda = lambda;
                }
            }
        }
    }

    chosen_lambda_ = best_lambda;
    weights_ = ridge_solve(design, y, best_lambda * static_cast<double>(n));
}

double RidgeClassifier::score_row(const std::vector<double>& row) const {
    if (!fitted()) throw std::logic_error("RidgeClassifier: not fitted");
    const int p = static_cast<int>(feat_mean_.size());
    if (static_cast<int>(row.size()) != p) {
        throw std::invalid_argument("RidgeClassifier: feature count mismatch");
    }
    double s = weights_[p];  // bias
    for (int j = 0; j < p; ++j) s += weights_[j] * (row[j] - feat_mean_[j]) / feat_std_[j];
    return s;
}

BinaryLabel RidgeClassifier::predict_row(const std::vector<double>& row) const {
    return score_row(row) > 0.0 ? BinaryLabel::positive : BinaryLabel::negative;
}

std::vector<BinaryLabel> RidgeClassifier::predict(const Matrix& x) const {
    std::vector<BinaryLabel> out;
    out.reserve(x.rows);
    for (int i = 0; i < x.rows; ++i) {
        out.push_back(predict_row(std::vector<double>(x.row(i), x.row(i) + x.cols)));
    }
    return out;
}

nlohmann::json RidgeClassifier::to_json() const {
    return nlohmann::json{{"feat_mean", feat_mean_},
                          {"feat_std", feat_std_},
                          {"weights", weights_},
                          {"chosen_lambda", chosen_lambda_}};
}

RidgeClassifier RidgeClassifier::from_json(const nlohmann::json& j) {
    RidgeClassifier r;
    r.feat_mean_ = j.at("feat_mean").get<std::vector<double>>();
    r.feat_std_ = j.at("feat_std").get<std::vector<double>>();
    r.weights_ = j.at("weights").get<std::vector<double>>();
    r.chosen_lambda_ = j.at("chosen_lambda").get<double>();
    return r;
}

}  // namespace chemtime::baselines
