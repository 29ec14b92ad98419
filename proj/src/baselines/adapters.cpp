#include "chemtime/baselines/adapters.hpp"

#include <stdexcept>

namespace chemtime::baselines {

Matrix column_concat(const Dataset& ds) {
    if (ds.size() == 0) throw std::invalid_argument("column_concat: empty dataset");
    const int t_len = ds.samples()[0].length();
    for (const auto& s : ds.samples()) {
        if (s.length() != t_len) {
            throw std::invalid_argument("column_concat: ragged sample lengths");
        }
    }
    const int k = ds.channel_count();
    Matrix out(ds.size(), k * t_len);
    for (int i = 0; i < ds.size(); ++i) {
        double* row = out.row(i);
        const auto& channels = ds.samples()[i].channels();
        for (int c = 0; c < k; ++c) {
            for (int t = 0; t < t_len; ++t) row[c * t_len + t] = channels[c][t];
        }
    }
    return out;
}

std::vector<double> concat_row(const MTSample& s) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(s.channel_count()) * s.length());
    for (const auto& channel : s.channels()) {
        row.insert(row.end(), channel.begin(), channel.end());
    }
    return row;
}

BinaryLabel EnsembleVote::vote(const std::vector<BinaryLabel>& votes) {
    if (votes.empty()) throw std::invalid_argument("vote: no votes");
    int pos = 0;
    for (BinaryLabel v : votes) {
        if (v == BinaryLabel::positive) ++pos;
    }
    const int neg = static_cast<int>(votes.size()) - pos;
    return pos >= neg ? BinaryLabel::positive : BinaryLabel::negative;
}

void EnsembleVote::fit(const Dataset& train, const UnivariateFactory& base) {
    if (train.size() == 0) throw std::invalid_argument("EnsembleVote::fit: empty dataset");
    const int k = train.channel_count();
    chan_std_ = Standardizer::fit(train);
    const std::vector<BinaryLabel> labels = train.labels();
    members_.clear();
    members_.reserve(k);
    for (int c = 0; c < k; ++c) {
        std::vector<std::vector<double>> series;
        series.reserve(train.size());
        for (const auto& s : train.samples()) {
            std::vector<double> ch = s.channels()[c];
            for (double& v : ch) v = chan_std_.apply(c, v);
            series.push_back(std::move(ch));
        }
        auto member = base();
        member->fit(series, labels);
        members_.push_back(std::move(member));
    }
}

BinaryLabel EnsembleVote::predict(const MTSample& s) const {
    if (members_.empty()) throw std::logic_error("EnsembleVote::predict: not fitted");
    if (s.channel_count() != channel_count()) {
        throw std::invalid_argument("EnsembleVote::predict: channel count mismatch");
    }
    std::vector<BinaryLabel> votes;
    votes.reserve(members_.size());
    for (int c = 0; c < channel_count(); ++c) {
        std::vector<double> ch = s.channels()[c];
        for (double& v : ch) v = chan_std_.apply(c, v);
        votes.push_back(members_[c]->predict(ch));
    }
    return vote(votes);
}

nlohmann::json EnsembleVote::to_json() const {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : members_) members.push_back(m->to_json());
    return nlohmann::json{{"standardizer", {{"mean", chan_std_.mean}, {"std", chan_std_.stddev}}},
                          {"members", std::move(members)}};
}

EnsembleVote EnsembleVote::from_json(
    const nlohmann::json& j,
    const std::function<std::unique_ptr<UnivariateClassifier>(const nlohmann::json&)>&
        member_loader) {
    EnsembleVote ev;
    ev.chan_std_.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
    ev.chan_std_.stddev = j.at("standardizer").at("std").get<std::vector<double>>();
    for (const auto& mj : j.at("members")) ev.members_.push_back(member_loader(mj));
    return ev;
}

}  // namespace chemtime::baselines
