#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "chemtime/dataset_io.hpp"
#include "chemtime/metrics.hpp"
#include "chemtime/rng.hpp"
#include "chemtime/types.hpp"

using namespace chemtime;

namespace {

MTSample make_sample(const std::string& id, std::vector<std::vector<double>> channels,
                     int onset = 0, std::vector<double> conc = {1.0}) {
    return MTSample(id, std::move(channels), 20.0, onset, std::move(conc));
}

MTSample random_sample(Rng& rng, const std::string& id, int k, int t, int analytes) {
    std::vector<std::vector<double>> channels(k, std::vector<double>(t));
    for (auto& row : channels) {
        for (double& v : row) v = rng.uniform(-100.0, 100.0);
    }
    std::vector<double> conc(analytes, 0.0);
    conc[rng.uniform_int(analytes)] = rng.uniform(5.0, 30.0);
    const int onset = static_cast<int>(rng.uniform_int(t));
    return MTSample(id, std::move(channels), 20.0, onset, std::move(conc));
}

Dataset random_dataset(std::uint64_t seed, int n = 12, int k = 3, int t = 15) {
    Rng rng(seed);
    std::vector<MTSample> samples;
    for (int i = 0; i < n; ++i) {
        samples.push_back(random_sample(rng, "s" + std::to_string(i), k, t, 2));
    }
    return Dataset("rand", {"A", "B"}, std::move(samples), "A");
}

}  // namespace

TEST_CASE("prefix keeps the first l columns of every channel") {
    const MTSample x = make_sample("x", {{1, 2, 3}, {4, 5, 6}});
    const MTSample cut = prefix(x, 2);
    CHECK(cut.channels() == std::vector<std::vector<double>>{{1, 2}, {4, 5}});
    CHECK(cut.id() == "x");
    CHECK(cut.sample_rate() == x.sample_rate());
    CHECK(cut.concentrations() == x.concentrations());
}

TEST_CASE("prefix with l = T is the identity") {
    Rng rng(7);
    const MTSample x = random_sample(rng, "x", 8, 100, 4);
    const MTSample same = prefix(x, 100);
    CHECK(same.channels() == x.channels());
    CHECK(same.onset_index() == x.onset_index());
}

TEST_CASE("prefix with l = 1 keeps column zero") {
    Rng rng(9);
    const MTSample x = random_sample(rng, "x", 8, 100, 4);
    const MTSample one = prefix(x, 1);
    CHECK(one.channel_count() == 8);
    CHECK(one.length() == 1);
    for (int c = 0; c < 8; ++c) CHECK(one.channels()[c][0] == x.channels()[c][0]);
}

TEST_CASE("prefix clamps the onset index") {
    const MTSample x = MTSample("x", {{1, 2, 3, 4}}, 20.0, 3, {1.0});
    CHECK(prefix(x, 2).onset_index() == 2);  // flux cut out of the window
    CHECK(prefix(x, 4).onset_index() == 3);
}

TEST_CASE("prefix rejects out-of-range lengths") {
    const MTSample x = make_sample("x", {{1, 2, 3}});
    CHECK_THROWS_AS(prefix(x, 0), std::out_of_range);
    CHECK_THROWS_AS(prefix(x, 4), std::out_of_range);
    CHECK_THROWS_AS(prefix(x, -1), std::out_of_range);
}

TEST_CASE("prefix composes: prefix(prefix(x,a),b) == prefix(x,min(a,b))") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const MTSample x = random_sample(rng, "x", 3, 20, 2);
        const int a = 1 + static_cast<int>(rng.uniform_int(20));
        const int b = 1 + static_cast<int>(rng.uniform_int(a));
        const MTSample lhs = prefix(prefix(x, a), b);
        const MTSample rhs = prefix(x, std::min(a, b));
        CHECK(lhs.channels() == rhs.channels());
        CHECK(lhs.onset_index() == rhs.onset_index());
    }
}

TEST_CASE("f1_score on hand cases") {
    using L = BinaryLabel;
    const std::vector<L> truth{L::positive, L::positive, L::negative, L::negative};
    CHECK(f1_score(truth, truth) == 1.0);
    const std::vector<L> inverted{L::negative, L::negative, L::positive, L::positive};
    CHECK(f1_score(inverted, truth) == 0.0);
    // TP=1, FP=1, FN=1 -> 2/(2+1+1) = 0.5
    const std::vector<L> preds{L::positive, L::negative, L::positive, L::negative};
    CHECK(f1_score(preds, truth) == 0.5);
}

TEST_CASE("f1_score argument errors") {
    using L = BinaryLabel;
    CHECK_THROWS_AS(f1_score({L::positive}, {}), std::invalid_argument);
    CHECK_THROWS_AS(f1_score({}, {}), std::invalid_argument);
}

TEST_CASE("f1_score is invariant under paired permutations") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(40));
        std::vector<BinaryLabel> preds(n), truth(n);
        for (int i = 0; i < n; ++i) {
            preds[i] = rng.uniform01() < 0.5 ? BinaryLabel::positive : BinaryLabel::negative;
            truth[i] = rng.uniform01() < 0.5 ? BinaryLabel::positive : BinaryLabel::negative;
        }
        const double base = f1_score(preds, truth);
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        rng.shuffle(order);
        std::vector<BinaryLabel> p2(n), t2(n);
        for (int i = 0; i < n; ++i) {
            p2[i] = preds[order[i]];
            t2[i] = truth[order[i]];
        }
        CHECK(f1_score(p2, t2) == base);
    }
}

TEST_CASE("seconds_to_steps arithmetic") {
    CHECK(seconds_to_steps(5.0, 20.0) == 100);
    CHECK(seconds_to_steps(0.25, 20.0) == 5);
    CHECK(seconds_to_steps(0.0, 20.0) == 0);
    CHECK(seconds_to_steps(0.001, 20.0) == 1);  // positive durations round up to a step
    CHECK_THROWS_AS(seconds_to_steps(-0.1, 20.0), std::invalid_argument);
    CHECK_THROWS_AS(seconds_to_steps(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("dataset round-trips through its file format bit-exactly") {
    const Dataset ds = random_dataset(17);
    const std::string path =
        (std::filesystem::temp_directory_path() / "chemtime_core_roundtrip.json").string();
    save_dataset(ds, path);
    const Dataset back = load_dataset(path);
    REQUIRE(back.size() == ds.size());
    CHECK(back.name() == ds.name());
    CHECK(back.analyte_names() == ds.analyte_names());
    CHECK(back.positive_analyte() == ds.positive_analyte());
    CHECK(back.sample_rate() == ds.sample_rate());
    for (int i = 0; i < ds.size(); ++i) {
        CHECK(back.samples()[i].id() == ds.samples()[i].id());
        CHECK(back.samples()[i].onset_index() == ds.samples()[i].onset_index());
        CHECK(back.samples()[i].concentrations() == ds.samples()[i].concentrations());
        CHECK(back.samples()[i].channels() == ds.samples()[i].channels());
    }
    // Serialize-again equality implies the text form is stable too.
    CHECK(dataset_to_json(back).dump() == dataset_to_json(ds).dump());
    std::remove(path.c_str());
}

TEST_CASE("dataset validation rejects malformed input") {
    CHECK_THROWS_AS(MTSample("x", {{1, 2}, {1}}, 20.0, 0, {1.0}), DataError);
    CHECK_THROWS_AS(MTSample("x", {{1, 2}}, 20.0, 3, {1.0}), DataError);  // onset > T
    CHECK_THROWS_AS(MTSample("x", {{1, 2}}, 20.0, 0, {-1.0}), DataError);
    CHECK_THROWS_AS(MTSample("x", {{1, 2}}, 0.0, 0, {1.0}), DataError);
    CHECK_THROWS_AS(MTSample("x", {}, 20.0, 0, {1.0}), DataError);

    // onset == T marks flux past the recorded window, e.g. after hard prefixes
    CHECK(MTSample("x", {{1, 2}}, 20.0, 2, {1.0}).onset_index() == 2);

    std::vector<MTSample> dup;
    dup.push_back(make_sample("same", {{1, 2}}));
    dup.push_back(make_sample("same", {{3, 4}}));
    CHECK_THROWS_AS(Dataset("d", {"A"}, std::move(dup), "A"), DataError);

    std::vector<MTSample> ok;
    ok.push_back(make_sample("a", {{1, 2}}));
    CHECK_THROWS_AS(Dataset("d", {"A"}, std::move(ok), "Z"), DataError);
}

TEST_CASE("binary labels derive from the positive analyte concentration") {
    std::vector<MTSample> samples;
    samples.push_back(MTSample("pos", {{1, 2}}, 20.0, 0, {0.0, 17.0}));
    samples.push_back(MTSample("neg", {{1, 2}}, 20.0, 0, {5.0, 0.0}));
    samples.push_back(MTSample("blank", {{1, 2}}, 20.0, 0, {0.0, 0.0}));
    const Dataset ds("d", {"A", "B"}, std::move(samples), "B");
    CHECK(ds.label_of(ds.by_id("pos")) == BinaryLabel::positive);
    CHECK(ds.label_of(ds.by_id("neg")) == BinaryLabel::negative);
    CHECK(ds.label_of(ds.by_id("blank")) == BinaryLabel::negative);
    CHECK(ds.by_id("blank").is_blank());
    CHECK_THROWS_AS(ds.by_id("missing"), std::out_of_range);
}

TEST_CASE("dataset subset picks by id and rejects unknown ids") {
    const Dataset ds = random_dataset(23, 6);
    const Dataset sub = ds.subset({"s1", "s4"});
    CHECK(sub.size() == 2);
    CHECK(sub.samples()[0].id() == "s1");
    CHECK(sub.samples()[1].id() == "s4");
    CHECK_THROWS_AS(ds.subset({"nope"}), std::out_of_range);
}
