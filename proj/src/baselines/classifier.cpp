#include "chemtime/baselines/classifier.hpp"

#include <fstream>

#include "chemtime/baselines/interval_tree.hpp"
#include "chemtime/baselines/knn.hpp"
#include "chemtime/baselines/ridge.hpp"
#include "chemtime/baselines/rocket.hpp"
#include "chemtime/margin.hpp"
#include "chemtime/model_io.hpp"
#include "chemtime/rng.hpp"
#include "chemtime/train.hpp"

namespace chemtime::baselines {

using nlohmann::json;

namespace {

template <typename T>
T param_or(const json& params, const char* key, T fallback) {
    if (params.contains(key)) return params.at(key).get<T>();
    return fallback;
}

/// The proposed method behind the common surface: recurrent encoder trained
/// on target sequences, margin boost on final embeddings, native prefixes.
class ChemTimeClassifier : public Classifier {
public:
    ChemTimeClassifier(const json& params, std::uint64_t seed) {
        cfg_.hidden = param_or(params, "hidden", 32);
        cfg_.lr = param_or(params, "lr", 1e-2);
        cfg_.epochs = param_or(params, "epochs", 50);
        cfg_.batch = param_or(params, "batch", 8);
        cfg_.loss = loss_kind_from_string(param_or<std::string>(params, "loss", "squared"));
        cfg_.boost = boost_mode_from_string(
            param_or<std::string>(params, "boost", "linear_margin"));
        cfg_.seed = seed;
        margin_cfg_.lambda = param_or(params, "margin_lambda", 1e-3);
        margin_cfg_.epochs = param_or(params, "margin_epochs", 200);
        margin_cfg_.seed = seed;
        if (params.contains("table")) {
            table_ = embedding_table_from_json(params.at("table"));
        }
    }

    explicit ChemTimeClassifier(ChemTimeModel model) : model_(std::move(model)) {}

    std::string kind() const override { return "chemtime"; }

    void fit(const Dataset& train_ds) override {
        const EmbeddingTable table =
            table_ ? *table_ : EmbeddingTable::unit_circle(train_ds.analyte_names());
        model_ = chemtime::train(train_ds, table, cfg_);
        fit_boost(*model_, train_ds, margin_cfg_);
    }

    BinaryLabel predict(const MTSample& s) const override {
        return chemtime::predict(model(), s, s.length()).label;
    }

    bool supports_prefix() const override { return true; }

    BinaryLabel predict_prefix(const MTSample& s, int len) const override {
        return chemtime::predict(model(), s, len).label;
    }

    json to_json() const override { return chemtime_model_to_json(model()); }

    const ChemTimeModel& model() const {
        if (!model_) throw std::logic_error("chemtime: not fitted");
        return *model_;
    }

private:
    TrainConfig cfg_;
    MarginFitConfig margin_cfg_;
    std::optional<EmbeddingTable> table_;
    std::optional<ChemTimeModel> model_;
};

class RocketClassifier : public Classifier {
public:
    RocketClassifier(const json& params, std::uint64_t seed)
        : kernel_count_(param_or(params, "kernels", 1000)), seed_(seed) {}

    RocketClassifier(std::vector<RocketKernel> kernels, Standardizer st, RidgeClassifier ridge)
        : kernels_(std::move(kernels)), chan_std_(std::move(st)), ridge_(std::move(ridge)) {}

    std::string kind() const override { return "rocket"; }

    void fit(const Dataset& train) override {
        chan_std_ = Standardizer::fit(train);
        kernels_ = generate_kernels(train.channel_count(), train.samples()[0].length(),
                                    kernel_count_, seed_);
        Matrix feats(train.size(), 2 * static_cast<int>(kernels_.size()));
        for (int i = 0; i < train.size(); ++i) {
            const std::vector<double> f =
                rocket_features(standardized(train.samples()[i]), kernels_);
            std::copy(f.begin(), f.end(), feats.row(i));
        }
        ridge_.fit(feats, train.labels());
    }

    BinaryLabel predict(const MTSample& s) const override {
        return ridge_.predict_row(rocket_features(standardized(s), kernels_));
    }

    json to_json() const override {
        return json{{"kind", "rocket"},
                    {"standardizer", {{"mean", chan_std_.mean}, {"std", chan_std_.stddev}}},
                    {"kernels", kernels_to_json(kernels_)},
                    {"ridge", ridge_.to_json()}};
    }

private:
    std::vector<std::vector<double>> standardized(const MTSample& s) const {
        std::vector<std::vector<double>> out = s.channels();
        for (int c = 0; c < static_cast<int>(out.size()); ++c) {
            for (double& v : out[c]) v = chan_std_.apply(c, v);
        }
        return out;
    }

    int kernel_count_ = 1000;
    std::uint64_t seed_ = 0;
    std::vector<RocketKernel> kernels_;
    Standardizer chan_std_;
    RidgeClassifier ridge_;
};

class RidgeConcatClassifier : public Classifier {
public:
    RidgeConcatClassifier() = default;
    explicit RidgeConcatClassifier(RidgeClassifier ridge) : ridge_(std::move(ridge)) {}

    std::string kind() const override { return "ridge_concat"; }

    void fit(const Dataset& train) override { ridge_.fit(column_concat(train), train.labels()); }

    BinaryLabel predict(const MTSample& s) const override {
        return ridge_.predict_row(concat_row(s));
    }

    json to_json() const override {
        return json{{"kind", "ridge_concat"}, {"ridge", ridge_.to_json()}};
    }

private:
    RidgeClassifier ridge_;
};

class KnnConcatWrapper : public Classifier {
public:
    KnnConcatWrapper(const json& params, std::uint64_t /*seed*/)
        : knn_(param_or(params, "k", 1)) {}
    explicit KnnConcatWrapper(KnnConcatClassifier knn) : knn_(std::move(knn)) {}

    std::string kind() const override { return "knn_concat"; }
    void fit(const Dataset& train) override { knn_.fit(train); }
    BinaryLabel predict(const MTSample& s) const override { return knn_.predict(s); }
    json to_json() const override {
        return json{{"kind", "knn_concat"}, {"knn", knn_.to_json()}};
    }

private:
    KnnConcatClassifier knn_;
};

class KnnEnsembleClassifier : public Classifier {
public:
    KnnEnsembleClassifier() = default;
    explicit KnnEnsembleClassifier(EnsembleVote ev) : ensemble_(std::move(ev)), fitted_(true) {}

    std::string kind() const override { return "knn_ensemble"; }

    void fit(const Dataset& train) override {
        ensemble_.fit(train, [] { return std::make_unique<Univariate1NN>(); });
        fitted_ = true;
    }

    BinaryLabel predict(const MTSample& s) const override {
        if (!fitted_) throw std::logic_error("knn_ensemble: not fitted");
        return ensemble_.predict(s);
    }

    json to_json() const override {
        return json{{"kind", "knn_ensemble"}, {"ensemble", ensemble_.to_json()}};
    }

private:
    EnsembleVote ensemble_;
    bool fitted_ = false;
};

class IntervalTreeWrapper : public Classifier {
public:
    IntervalTreeWrapper(const json& params, std::uint64_t seed)
        : tree_(param_or(params, "intervals", 30), param_or(params, "max_depth", 8),
                param_or(params, "min_leaf", 2), seed) {}
    explicit IntervalTreeWrapper(IntervalTreeClassifier tree) : tree_(std::move(tree)) {}

    std::string kind() const override { return "interval_tree"; }
    void fit(const Dataset& train) override { tree_.fit(train); }
    BinaryLabel predict(const MTSample& s) const override { return tree_.predict(s); }
    json to_json() const override {
        return json{{"kind", "interval_tree"}, {"tree", tree_.to_json()}};
    }

private:
    IntervalTreeClassifier tree_;
};

/// Evaluation probe: always answers with the true label.
class OracleClassifier : public Classifier {
public:
    std::string kind() const override { return "oracle"; }

    void fit(const Dataset& train) override { positive_index_ = train.positive_analyte_index(); }

    BinaryLabel predict(const MTSample& s) const override {
        if (positive_index_ < 0) throw std::logic_error("oracle: not fitted");
        return s.concentrations()[positive_index_] > 0.0 ? BinaryLabel::positive
                                                         : BinaryLabel::negative;
    }

    bool supports_prefix() const override { return true; }
    BinaryLabel predict_prefix(const MTSample& s, int /*len*/) const override {
        return predict(s);
    }

    json to_json() const override {
        return json{{"kind", "oracle"}, {"positive_index", positive_index_}};
    }

private:
    int positive_index_ = -1;
};

/// Evaluation probe: seeded fair coin per prediction.
class CoinflipClassifier : public Classifier {
public:
    explicit CoinflipClassifier(std::uint64_t seed)
        : seed_(seed), rng_(derive_seed(seed, "coinflip")) {}

    std::string kind() const override { return "coinflip"; }
    void fit(const Dataset& /*train*/) override {}

    BinaryLabel predict(const MTSample& /*s*/) const override {
        return rng_.uniform01() < 0.5 ? BinaryLabel::positive : BinaryLabel::negative;
    }

    json to_json() const override { return json{{"kind", "coinflip"}, {"seed", seed_}}; }

private:
    std::uint64_t seed_;
    mutable Rng rng_;
};

}  // namespace

std::vector<std::string> known_model_kinds() {
    return {"chemtime",     "rocket",        "ridge_concat", "knn_concat",
            "knn_ensemble", "interval_tree", "oracle",       "coinflip"};
}

std::unique_ptr<Classifier> make_classifier(const ModelSpec& spec, std::uint64_t seed) {
    const json& p = spec.params;
    if (spec.kind == "chemtime") return std::make_unique<ChemTimeClassifier>(p, seed);
    if (spec.kind == "rocket") return std::make_unique<RocketClassifier>(p, seed);
    if (spec.kind == "ridge_concat") return std::make_unique<RidgeConcatClassifier>();
    if (spec.kind == "knn_concat") return std::make_unique<KnnConcatWrapper>(p, seed);
    if (spec.kind == "knn_ensemble") return std::make_unique<KnnEnsembleClassifier>();
    if (spec.kind == "interval_tree") return std::make_unique<IntervalTreeWrapper>(p, seed);
    if (spec.kind == "oracle") return std::make_unique<OracleClassifier>();
    if (spec.kind == "coinflip") return std::make_unique<CoinflipClassifier>(seed);
    throw std::invalid_argument("make_classifier: unknown model kind '" + spec.kind + "'");
}

std::unique_ptr<Classifier> classifier_from_json(const json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "chemtime") {
            return std::make_unique<ChemTimeClassifier>(chemtime_model_from_json(j));
        }
        if (kind == "rocket") {
            Standardizer st;
            st.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
            st.stddev = j.at("standardizer").at("std").get<std::vector<double>>();
            return std::make_unique<RocketClassifier>(kernels_from_json(j.at("kernels")),
                                                      std::move(st),
                                                      RidgeClassifier::from_json(j.at("ridge")));
        }
        if (kind == "ridge_concat") {
            return std::make_unique<RidgeConcatClassifier>(
                RidgeClassifier::from_json(j.at("ridge")));
        }
        if (kind == "knn_concat") {
            return std::make_unique<KnnConcatWrapper>(
                KnnConcatClassifier::from_json(j.at("knn")));
        }
        if (kind == "knn_ensemble") {
            return std::make_unique<KnnEnsembleClassifier>(EnsembleVote::from_json(
                j.at("ensemble"),
                [](const json& mj) { return Univariate1NN::from_json(mj); }));
        }
        if (kind == "interval_tree") {
            return std::make_unique<IntervalTreeWrapper>(
                IntervalTreeClassifier::from_json(j.at("tree")));
        }
        throw DataError("model file: unknown kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw DataError(std::string("model file: ") + e.what());
    }
}

void save_classifier(const Classifier& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << c.to_json().dump(1) << "\n";
}

std::unique_ptr<Classifier> load_classifier(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("model file '" + path + "': " + e.what());
    }
    return classifier_from_json(j);
}

}  // namespace chemtime::baselines
