#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "chemtime/eval/benchmark.hpp"
#include "chemtime/eval/frontier.hpp"
#include "chemtime/eval/ranks.hpp"
#include "chemtime/eval/serial.hpp"
#include "chemtime/eval/splits.hpp"
#include "chemtime/eval/survival.hpp"
#include "chemtime/metrics.hpp"
#include "chemtime/rng.hpp"
#include "chemtime/simgen.hpp"

using namespace chemtime;
using namespace chemtime::eval;
using chemtime::baselines::ModelSpec;

namespace {

DatasetPair small_pair(std::uint64_t seed = 0, int n_train = 40, int n_test = 16) {
    simgen::SimConfig cfg = simgen::default_config(seed);
    cfg.n_train = n_train;
    cfg.n_test = n_test;
    auto [train, test] = simgen::generate_dataset(cfg);
    return DatasetPair{std::move(train), std::move(test)};
}

BenchmarkRecord rec(const std::string& model, const std::string& ds, int split, double f1,
                    const std::string& status = "ok") {
    BenchmarkRecord r;
    r.model = model;
    r.dataset = ds;
    r.split_index = split;
    r.f1 = f1;
    r.status = status;
    return r;
}

}  // namespace

TEST_CASE("make_splits produces four stratified splits partitioning the corpus") {
    const DatasetPair pair = small_pair(1, 100);
    const auto splits = make_splits(pair.train, 9);
    REQUIRE(splits.size() == 4);

    std::set<std::string> all_ids;
    for (const auto& s : pair.train.samples()) all_ids.insert(s.id());

    std::set<std::string> withheld_union;
    for (const auto& sp : splits) {
        CHECK(sp.train_ids.size() == 75);
        CHECK(sp.withheld_ids.size() == 25);
        std::set<std::string> train_set(sp.train_ids.begin(), sp.train_ids.end());
        for (const auto& id : sp.withheld_ids) {
            CHECK(train_set.count(id) == 0);
            const bool fresh = withheld_union.insert(id).second;
            CHECK(fresh);  // folds are disjoint across splits
        }
        CHECK(train_set.size() + sp.withheld_ids.size() == all_ids.size());
    }
    CHECK(withheld_union == all_ids);  // folds partition the corpus
}

TEST_CASE("make_splits is deterministic and stratified") {
    const DatasetPair pair = small_pair(2, 48);
    const auto a = make_splits(pair.train, 5);
    const auto b = make_splits(pair.train, 5);
    for (int i = 0; i < 4; ++i) {
        CHECK(a[i].train_ids == b[i].train_ids);
        CHECK(a[i].withheld_ids == b[i].withheld_ids);
    }
    // 12 positives / 36 negatives stratify to 3/9 per fold
    for (const auto& sp : a) {
        int pos = 0;
        for (const auto& id : sp.withheld_ids) {
            if (pair.train.label_of(pair.train.by_id(id)) == BinaryLabel::positive) ++pos;
        }
        CHECK(pos == 3);
    }
}

TEST_CASE("make_splits rejects datasets that are too small") {
    std::vector<MTSample> samples;
    for (int i = 0; i < 6; ++i) {
        samples.push_back(MTSample("s" + std::to_string(i), {{1.0, 2.0}}, 20.0, 0,
                                   i < 3 ? std::vector<double>{1.0, 0.0}
                                         : std::vector<double>{0.0, 1.0}));
    }
    const Dataset ds("tiny", {"A", "B"}, std::move(samples), "A");
    CHECK_THROWS_AS(make_splits(ds, 0), std::invalid_argument);
}

TEST_CASE("run_benchmark emits one record per model, dataset and split") {
    const DatasetPair pair = small_pair(3);
    std::vector<DatasetPair> datasets{pair};
    std::vector<std::vector<SplitSpec>> splits{make_splits(pair.train, 0)};
    const std::vector<ModelSpec> models{ModelSpec::of("oracle"), ModelSpec::of("knn_concat")};

    const auto records = run_benchmark(models, datasets, splits, 0);
    REQUIRE(records.size() == 8);
    for (const auto& r : records) {
        CHECK(r.status == "ok");
        CHECK(r.f1 >= 0.0);
        CHECK(r.f1 <= 1.0);
        CHECK(r.train_seconds >= 0.0);
        CHECK(r.infer_seconds >= 0.0);
        CHECK(std::isfinite(r.train_seconds));
        CHECK(std::isfinite(r.infer_seconds));
        if (r.model == "oracle") CHECK(r.f1 == 1.0);
    }
}

TEST_CASE("run_benchmark is deterministic apart from wall-clock columns") {
    const DatasetPair pair = small_pair(4);
    std::vector<DatasetPair> datasets{pair};
    std::vector<std::vector<SplitSpec>> splits{make_splits(pair.train, 1)};
    std::vector<ModelSpec> models{ModelSpec::of("knn_concat"), ModelSpec::of("interval_tree")};
    ModelSpec rocket = ModelSpec::of("rocket");
    rocket.params["kernels"] = 60;
    models.push_back(rocket);

    const auto a = run_benchmark(models, datasets, splits, 7);
    const auto b = run_benchmark(models, datasets, splits, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].model == b[i].model);
        CHECK(a[i].dataset == b[i].dataset);
        CHECK(a[i].split_index == b[i].split_index);
        CHECK(a[i].f1 == b[i].f1);
        CHECK(a[i].status == b[i].status);
    }
}

TEST_CASE("run_benchmark parallel scoring equals serial scoring") {
    const DatasetPair pair = small_pair(5, 32, 12);
    std::vector<DatasetPair> datasets{pair};
    std::vector<std::vector<SplitSpec>> splits{make_splits(pair.train, 2)};
    const std::vector<ModelSpec> models{ModelSpec::of("knn_concat"),
                                        ModelSpec::of("ridge_concat")};
    const auto serial = run_benchmark(models, datasets, splits, 3, 1);
    const auto parallel = run_benchmark(models, datasets, splits, 3, 2);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].f1 == parallel[i].f1);
        CHECK(serial[i].status == parallel[i].status);
    }
}

TEST_CASE("fit failures surface as failed records, not exceptions") {
    const DatasetPair pair = small_pair(6, 24, 8);
    // A split whose training ids are all negative: ridge cannot fit one class.
    std::vector<std::string> neg_ids, all_ids;
    for (const auto& s : pair.train.samples()) {
        all_ids.push_back(s.id());
        if (pair.train.label_of(s) == BinaryLabel::negative) neg_ids.push_back(s.id());
    }
    SplitSpec degenerate;
    degenerate.dataset = pair.train.name();
    degenerate.split_index = 0;
    degenerate.train_ids = neg_ids;
    degenerate.withheld_ids = {};
    std::vector<DatasetPair> datasets{pair};
    std::vector<std::vector<SplitSpec>> splits{{degenerate}};
    const auto records =
        run_benchmark({ModelSpec::of("ridge_concat")}, datasets, splits, 0);
    REQUIRE(records.size() == 1);
    CHECK(records[0].status == "failed");
}

TEST_CASE("average ranks on hand examples") {
    SUBCASE("single model always ranks first") {
        const auto ranks = average_ranks({rec("m", "d", 0, 0.5), rec("m", "d", 1, 0.7)});
        CHECK(ranks.at("m") == 1.0);
    }
    SUBCASE("a uniformly better model takes rank 1") {
        std::vector<BenchmarkRecord> records;
        for (int s = 0; s < 4; ++s) {
            records.push_back(rec("good", "d", s, 0.9));
            records.push_back(rec("bad", "d", s, 0.5));
        }
        const auto ranks = average_ranks(records);
        CHECK(ranks.at("good") == 1.0);
        CHECK(ranks.at("bad") == 2.0);
    }
    SUBCASE("three models with one tie: tied pair averages 1.5 in that cell") {
        // dataset d1 split 0: a=b=0.9 (tie), c=0.1 -> ranks a=1.5 b=1.5 c=3
        // dataset d2 split 0: a=0.9, b=0.5, c=0.1  -> ranks a=1 b=2 c=3
        const std::vector<BenchmarkRecord> records{
            rec("a", "d1", 0, 0.9), rec("b", "d1", 0, 0.9), rec("c", "d1", 0, 0.1),
            rec("a", "d2", 0, 0.9), rec("b", "d2", 0, 0.5), rec("c", "d2", 0, 0.1)};
        const auto ranks = average_ranks(records);
        CHECK(ranks.at("a") == doctest::Approx(1.25));
        CHECK(ranks.at("b") == doctest::Approx(1.75));
        CHECK(ranks.at("c") == doctest::Approx(3.0));
        // per-cell ranks sum to m(m+1)/2 = 6
        CHECK(ranks.at("a") + ranks.at("b") + ranks.at("c") == doctest::Approx(6.0));
    }
}

TEST_CASE("average ranks name the missing hole and reject failed records") {
    const std::vector<BenchmarkRecord> holey{rec("a", "d", 0, 0.9), rec("b", "d", 0, 0.8),
                                             rec("a", "d", 1, 0.9)};
    try {
        average_ranks(holey);
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("b") != std::string::npos);
        CHECK(msg.find("1") != std::string::npos);
    }
    CHECK_THROWS_AS(average_ranks({rec("a", "d", 0, 0.0, "failed")}), std::invalid_argument);
}

TEST_CASE("per-cell rank sums are exact for random complete grids") {
    Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const int n_models = 2 + static_cast<int>(rng.uniform_int(5));
        std::vector<BenchmarkRecord> records;
        for (int d = 0; d < 2; ++d) {
            for (int s = 0; s < 3; ++s) {
                for (int m = 0; m < n_models; ++m) {
                    records.push_back(rec("m" + std::to_string(m), "d" + std::to_string(d), s,
                                          std::round(rng.uniform01() * 4.0) / 4.0));
                }
            }
        }
        const auto ranks = average_ranks(records);
        double sum = 0.0;
        for (const auto& [model, r] : ranks) sum += r;
        CHECK(sum == doctest::Approx(n_models * (n_models + 1) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("filter_converged drops models with failed or missing cells") {
    const std::vector<BenchmarkRecord> records{
        rec("ok_model", "d", 0, 0.9),     rec("ok_model", "d", 1, 0.8),
        rec("flaky", "d", 0, 0.7),        rec("flaky", "d", 1, 0.0, "failed"),
        rec("sparse", "d", 0, 0.6)};
    const auto kept = filter_converged(records);
    std::set<std::string> models;
    for (const auto& r : kept) models.insert(r.model);
    CHECK(models == std::set<std::string>{"ok_model"});
    CHECK(kept.size() == 2);
}

TEST_CASE("oracle survives every survival round down to the smallest window") {
    const DatasetPair pair = small_pair(7, 32, 12);
    const auto splits = make_splits(pair.train, 0);
    SurvivalConfig cfg;
    const SurvivalTable table = survival({ModelSpec::of("oracle")}, pair, splits, cfg);
    REQUIRE(table.rounds.size() == 20);  // 5.00 down to 0.25
    for (std::size_t r = 0; r < table.rounds.size(); ++r) {
        CHECK(table.rounds[r].window_seconds ==
              doctest::Approx(5.0 - 0.25 * static_cast<double>(r)).epsilon(1e-12));
        REQUIRE(table.rounds[r].entries.size() == 1);
        CHECK(table.rounds[r].entries[0].f1 == 1.0);
        CHECK_FALSE(table.rounds[r].entries[0].eliminated);
    }
    CHECK(table.elimination_window("oracle") == 0.0);
}

TEST_CASE("a balanced coin flip is eliminated in the first round, ten seeds out of ten") {
    const DatasetPair pair = small_pair(8, 32, 16);
    const auto splits = make_splits(pair.train, 0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SurvivalConfig cfg;
        cfg.seed = seed;
        ModelSpec coin = ModelSpec::of("coinflip");
        coin.name = "coinflip";
        const SurvivalTable table = survival({coin}, pair, splits, cfg);
        REQUIRE(!table.rounds.empty());
        REQUIRE(table.rounds[0].entries.size() == 1);
        CHECK(table.rounds[0].entries[0].eliminated);
        CHECK(table.rounds.size() == 1);  // nobody left after round 0
    }
}

TEST_CASE("survival windows decrease by the step and eliminations are permanent") {
    const DatasetPair pair = small_pair(9, 32, 12);
    const auto splits = make_splits(pair.train, 3);
    SurvivalConfig cfg;
    cfg.seed = 5;
    const SurvivalTable table =
        survival({ModelSpec::of("oracle"), ModelSpec::of("coinflip")}, pair, splits, cfg);
    std::set<std::string> eliminated;
    double last_window = 1e9;
    for (const auto& round : table.rounds) {
        CHECK(round.window_seconds < last_window);
        last_window = round.window_seconds;
        for (const auto& e : round.entries) {
            CHECK(eliminated.count(e.model) == 0);  // the dead never reappear
            if (e.eliminated) eliminated.insert(e.model);
        }
    }
    CHECK(eliminated.count("coinflip") == 1);
}

TEST_CASE("inference-biased survival cannot outlast the plain mode") {
    const DatasetPair pair = small_pair(10, 32, 12);
    const auto splits = make_splits(pair.train, 1);
    SurvivalConfig plain;
    SurvivalConfig biased;
    biased.mode = SurvivalMode::inference_biased;
    const std::vector<ModelSpec> models{ModelSpec::of("knn_concat")};
    const SurvivalTable p = survival(models, pair, splits, plain);
    const SurvivalTable b = survival(models, pair, splits, biased);
    CHECK(b.elimination_window("knn_concat") >= p.elimination_window("knn_concat"));
    CHECK(b.mode == SurvivalMode::inference_biased);
}

namespace {

/// Test double with a known change point: positive iff the prefix covers it.
class FlipAt : public PrefixView {
public:
    explicit FlipAt(int at) : at_(at) {}
    BinaryLabel classify_prefix(const MTSample&, int len) const override {
        return len >= at_ ? BinaryLabel::positive : BinaryLabel::negative;
    }

private:
    int at_;
};

class ConstantView : public PrefixView {
public:
    BinaryLabel classify_prefix(const MTSample&, int) const override {
        return BinaryLabel::positive;
    }
};

class ReadsStepZero : public PrefixView {
public:
    BinaryLabel classify_prefix(const MTSample& s, int) const override {
        return s.channels()[0][0] > 0 ? BinaryLabel::positive : BinaryLabel::negative;
    }
};

}  // namespace

TEST_CASE("serial detection finds exact change points") {
    const DatasetPair pair = small_pair(11, 16, 8);
    CHECK(serial_prefix(ConstantView{}, pair.test, 1));
    CHECK(serial_prefix(ReadsStepZero{}, pair.test, 1));

    const FlipAt flip(50);
    for (int l0 : {1, 10, 49}) CHECK_FALSE(serial_prefix(flip, pair.test, l0));
    CHECK(serial_prefix(flip, pair.test, 50));
    CHECK(serial_prefix(flip, pair.test, 51));
    CHECK_THROWS_AS(serial_prefix(flip, pair.test, 0), std::invalid_argument);
}

TEST_CASE("native prefix views require the capability") {
    auto knn = baselines::make_classifier(ModelSpec::of("knn_concat"), 0);
    CHECK_THROWS_AS(NativePrefixView{*knn}, CapabilityError);
}

TEST_CASE("retrain-per-window view reproduces single fits") {
    const DatasetPair pair = small_pair(12, 24, 8);
    RetrainPrefixView view(ModelSpec::of("knn_concat"), pair.train, 4);
    auto direct = baselines::make_classifier(ModelSpec::of("knn_concat"), 4);
    std::vector<MTSample> cut;
    for (const auto& s : pair.train.samples()) cut.push_back(prefix(s, 30));
    direct->fit(Dataset(pair.train.name(), pair.train.analyte_names(), std::move(cut),
                        pair.train.positive_analyte()));
    for (const auto& s : pair.test.samples()) {
        CHECK(view.classify_prefix(s, 30) == direct->predict(prefix(s, 30)));
    }
}

TEST_CASE("pareto frontier on hand points") {
    CHECK(pareto_frontier({{1.0, 0.5}}) == std::vector<bool>{true});
    const auto flags = pareto_frontier({{1.0, 0.9}, {2.0, 0.8}});
    CHECK(flags == std::vector<bool>{true, false});
    // exact duplicates are both kept
    const auto dup = pareto_frontier({{1.0, 0.9}, {1.0, 0.9}});
    CHECK(dup == std::vector<bool>{true, true});
}

TEST_CASE("pareto frontier matches the quadratic dominance oracle on random sets") {
    Rng rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_int(40));
        std::vector<std::pair<double, double>> pts(n);
        for (auto& p : pts) {
            p.first = std::round(rng.uniform(0.0, 4.0)) / 4.0;  // provoke ties
            p.second = std::round(rng.uniform(0.0, 4.0)) / 4.0;
        }
        const auto flags = pareto_frontier(pts);
        for (int i = 0; i < n; ++i) {
            bool dominated = false;
            for (int j = 0; j < n && !dominated; ++j) {
                if (j == i) continue;
                const bool le = pts[j].first <= pts[i].first;
                const bool ge = pts[j].second >= pts[i].second;
                const bool strict =
                    pts[j].first < pts[i].first || pts[j].second > pts[i].second;
                dominated = le && ge && strict;
            }
            CHECK(flags[i] == !dominated);
        }
    }
}

TEST_CASE("frontier flags are stable under permutation") {
    Rng rng(73);
    std::vector<std::pair<double, double>> pts(25);
    for (auto& p : pts) {
        p.first = rng.uniform01();
        p.second = rng.uniform01();
    }
    const auto base = pareto_frontier(pts);
    std::vector<int> order(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) order[i] = static_cast<int>(i);
    rng.shuffle(order);
    std::vector<std::pair<double, double>> shuffled;
    for (int i : order) shuffled.push_back(pts[i]);
    const auto moved = pareto_frontier(shuffled);
    for (std::size_t i = 0; i < order.size(); ++i) CHECK(moved[i] == base[order[i]]);
}

TEST_CASE("frontier_from_records averages per model and flags dominance") {
    const std::vector<BenchmarkRecord> records{
        [] { auto r = rec("fast", "d", 0, 0.8); r.infer_seconds = 0.1; return r; }(),
        [] { auto r = rec("fast", "d", 1, 0.9); r.infer_seconds = 0.3; return r; }(),
        [] { auto r = rec("slow_bad", "d", 0, 0.5); r.infer_seconds = 2.0; return r; }(),
        [] { auto r = rec("slow_bad", "d", 1, 0.6); r.infer_seconds = 2.0; return r; }(),
        [] { auto r = rec("slow_good", "d", 0, 0.99); r.infer_seconds = 3.0; return r; }(),
        [] { auto r = rec("slow_good", "d", 1, 0.97); r.infer_seconds = 3.0; return r; }()};
    const auto points = frontier_from_records(records);
    REQUIRE(points.size() == 3);
    for (const auto& p : points) {
        if (p.model == "fast") {
            CHECK(p.f1 == doctest::Approx(0.85));
            CHECK(p.infer_seconds == doctest::Approx(0.2));
            CHECK(p.on_frontier);
        } else if (p.model == "slow_bad") {
            CHECK_FALSE(p.on_frontier);  // dominated by fast
        } else {
            CHECK(p.on_frontier);  // most accurate, keeps a frontier spot
        }
    }
}
