#include "chemtime/baselines/knn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chemtime::baselines {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

/// Indices of the K nearest rows; distance ties resolved to smaller index.
std::vector<int> k_nearest(const std::vector<std::vector<double>>& rows,
                           const std::vector<double>& query, int k) {
    std::vector<std::pair<double, int>> dist;
    dist.reserve(rows.size());
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        dist.emplace_back(sq_dist(rows[i], query), i);
    }
    std::sort(dist.begin(), dist.end());
    std::vector<int> out;
    for (int i = 0; i < k && i < static_cast<int>(dist.size()); ++i) {
        out.push_back(dist[i].second);
    }
    return out;
}

BinaryLabel vote_of(const std::vector<int>& idx, const std::vector<BinaryLabel>& labels) {
    int pos = 0;
    for (int i : idx) {
        if (labels[i] == BinaryLabel::positive) ++pos;
    }
    const int neg = static_cast<int>(idx.size()) - pos;
    return pos >= neg ? BinaryLabel::positive : BinaryLabel::negative;
}

}  // namespace

void KnnConcatClassifier::fit(const Dataset& train) {
    if (train.size() == 0) throw std::invalid_argument("knn: empty training set");
    if (k_neighbors_ < 1) throw std::invalid_argument("knn: K must be >= 1");
    chan_std_ = Standardizer::fit(train);
    t_len_ = train.samples()[0].length();
    rows_.clear();
    rows_.reserve(train.size());
    const int k = train.channel_count();
    for (const auto& s : train.samples()) {
        if (s.length() != t_len_) throw std::invalid_argument("knn: ragged sample lengths");
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(k) * t_len_);
        for (int c = 0; c < k; ++c) {
            for (double v : s.channels()[c]) row.push_back(chan_std_.apply(c, v));
        }
        rows_.push_back(std::move(row));
    }
    labels_ = train.labels();
}

BinaryLabel KnnConcatClassifier::predict(const MTSample& s) const {
    if (rows_.empty()) throw std::logic_error("knn: not fitted");
    if (s.channel_count() != static_cast<int>(chan_std_.mean.size()) || s.length() != t_len_) {
        throw std::invalid_argument("knn: query shape mismatch with training data");
    }
    std::vector<double> query;
    query.reserve(rows_[0].size());
    for (int c = 0; c < s.channel_count(); ++c) {
        for (double v : s.channels()[c]) query.push_back(chan_std_.apply(c, v));
    }
    return vote_of(k_nearest(rows_, query, k_neighbors_), labels_);
}

nlohmann::json KnnConcatClassifier::to_json() const {
    return nlohmann::json{
        {"k_neighbors", k_neighbors_},
        {"t_len", t_len_},
        {"standardizer", {{"mean", chan_std_.mean}, {"std", chan_std_.stddev}}},
        {"rows", rows_},
        {"labels", [this] {
             std::vector<int> out;
             for (BinaryLabel l : labels_) out.push_back(l == BinaryLabel::positive ? 1 : 0);
             return out;
         }()}};
}

KnnConcatClassifier KnnConcatClassifier::from_json(const nlohmann::json& j) {
    KnnConcatClassifier c(j.at("k_neighbors").get<int>());
    c.t_len_ = j.at("t_len").get<int>();
    c.chan_std_.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
    c.chan_std_.stddev = j.at("standardizer").at("std").get<std::vector<double>>();
    c.rows_ = j.at("rows").get<std::vector<std::vector<double>>>();
    for (int v : j.at("labels").get<std::vector<int>>()) {
        c.labels_.push_back(v ? BinaryLabel::positive : BinaryLabel::negative);
    }
    return c;
}

void Univariate1NN::fit(const std::vector<std::vector<double>>& series,
                        const std::vector<BinaryLabel>& labels) {
    if (series.empty()) throw std::invalid_argument("1nn: empty training set");
    if (series.size() != labels.size()) throw std::invalid_argument("1nn: label count mismatch");
    series_ = series;
    labels_ = labels;
}

BinaryLabel Univariate1NN::predict(const std::vector<double>& series) const {
    if (series_.empty()) throw std::logic_error("1nn: not fitted");
    if (series.size() != series_[0].size()) {
        throw std::invalid_argument("1nn: query length mismatch");
    }
    return labels_[k_nearest(series_, series, 1)[0]];
}

nlohmann::json Univariate1NN::to_json() const {
    std::vector<int> labels;
    for (BinaryLabel l : labels_) labels.push_back(l == BinaryLabel::positive ? 1 : 0);
    return nlohmann::json{{"series", series_}, {"labels", labels}};
}

std::unique_ptr<UnivariateClassifier> Univariate1NN::from_json(const nlohmann::json& j) {
    auto c = std::make_unique<Univariate1NN>();
    c->series_ = j.at("series").get<std::vector<std::vector<double>>>();
    for (int v : j.at("labels").get<std::vector<int>>()) {
        c->labels_.push_back(v ? BinaryLabel::positive : BinaryLabel::negative);
    }
    return c;
}

}  // namespace chemtime::baselines
