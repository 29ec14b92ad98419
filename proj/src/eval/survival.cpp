#include "chemtime/eval/survival.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "chemtime/metrics.hpp"
#include "chemtime/rng.hpp"

namespace chemtime::eval {

namespace {

using Clock = std::chrono::steady_clock;

Dataset truncate_all(const Dataset& ds, int steps) {
    std::vector<MTSample> cut;
    cut.reserve(ds.size());
    for (const auto& s : ds.samples()) cut.push_back(prefix(s, std::min(steps, s.length())));
    return Dataset(ds.name(), ds.analyte_names(), std::move(cut), ds.positive_analyte());
}

struct ModelState {
    baselines::ModelSpec spec;
    bool alive = true;
    double infer_per_sample = 0.0;  // measured last round, drives the biased mode
    // Prefix-capable models keep their per-split instances from round 0.
    std::vector<std::unique_ptr<baselines::Classifier>> cached;
    bool prefix_native = false;
};

}  // namespace

double SurvivalTable::elimination_window(const std::string& model) const {
    for (const auto& round : rounds) {
        for (const auto& e : round.entries) {
            if (e.model == model && e.eliminated) return round.window_seconds;
        }
    }
    return 0.0;
}

SurvivalTable survival(const std::vector<baselines::ModelSpec>& models, const DatasetPair& pair,
                       const std::vector<SplitSpec>& splits, const SurvivalConfig& cfg) {
    if (!(cfg.start_s > 0.0)) throw std::invalid_argument("survival: start must be > 0");
    if (!(cfg.step_s > 0.0)) throw std::invalid_argument("survival: step must be > 0");
    if (!(cfg.floor > 0.0 && cfg.floor <= 1.0)) {
        throw std::invalid_argument("survival: floor outside (0, 1]");
    }
    if (splits.empty()) throw std::invalid_argument("survival: no splits");

    const double rate = pair.train.sample_rate();
    int t_max = pair.test.samples().empty() ? 0 : pair.test.samples()[0].length();
    for (const auto& s : pair.test.samples()) t_max = std::min(t_max, s.length());
    const int start_steps = std::min(seconds_to_steps(cfg.start_s, rate), t_max);

    std::vector<ModelState> states;
    states.reserve(models.size());
    for (const auto& spec : models) {
        ModelState st;
        st.spec = spec;
        states.push_back(std::move(st));
    }

    SurvivalTable table;
    table.mode = cfg.mode;

    for (int round = 0;; ++round) {
        const double budget = cfg.start_s - round * cfg.step_s;
        if (budget <= 0.0) break;
        bool any_alive = false;
        for (const auto& st : states) any_alive |= st.alive;
        if (!any_alive) break;

        SurvivalRound row;
        row.round = round;
        row.window_seconds = budget;

        for (auto& st : states) {
            if (!st.alive) continue;
            SurvivalEntry entry;
            entry.model = st.spec.name;

            double window_s = budget;
            if (cfg.mode == SurvivalMode::inference_biased) {
                window_s = budget - st.infer_per_sample;
            }
            if (window_s <= 0.0) {
                entry.f1 = 0.0;
                entry.eliminated = true;
                st.alive = false;
                row.entries.push_back(std::move(entry));
                continue;
            }
            const int steps = std::min(seconds_to_steps(window_s, rate), start_steps);

            double f1_sum = 0.0;
            bool failed = false;
            long n_preds = 0;
            double infer_seconds = 0.0;
            for (std::size_t sp = 0; sp < splits.size(); ++sp) {
                try {
                    baselines::Classifier* clf = nullptr;
                    std::unique_ptr<baselines::Classifier> fresh;
                    if (round == 0) {
                        // Round 0 fits at the starting window; prefix-capable
                        // models keep these instances for later rounds.
                        fresh = baselines::make_classifier(
                            st.spec, derive_seed(derive_seed(cfg.seed, st.spec.name),
                                                 static_cast<std::uint64_t>(sp)));
                        fresh->fit(truncate_all(pair.train.subset(splits[sp].train_ids), steps));
                        clf = fresh.get();
                    } else if (st.prefix_native) {
                        clf = st.cached[sp].get();
                    } else {
                        fresh = baselines::make_classifier(
                            st.spec, derive_seed(derive_seed(cfg.seed, st.spec.name),
                                                 static_cast<std::uint64_t>(sp)));
                        fresh->fit(truncate_all(pair.train.subset(splits[sp].train_ids), steps));
                        clf = fresh.get();
                    }
                    if (round == 0) {
                        st.prefix_native = clf->supports_prefix();
                    }

                    std::vector<BinaryLabel> preds;
                    preds.reserve(pair.test.size());
                    const auto t0 = Clock::now();
                    if (st.prefix_native) {
                        for (const auto& s : pair.test.samples()) {
                            preds.push_back(clf->predict_prefix(s, std::min(steps, s.length())));
                        }
                    } else {
                        const Dataset cut_test = truncate_all(pair.test, steps);
                        for (const auto& s : cut_test.samples()) preds.push_back(clf->predict(s));
                    }
                    infer_seconds += std::chrono::duration<double>(Clock::now() - t0).count();
                    n_preds += pair.test.size();
                    f1_sum += f1_score(preds, pair.test.labels());

                    if (round == 0 && st.prefix_native) st.cached.push_back(std::move(fresh));
                } catch (const std::exception&) {
                    failed = true;
                    break;
                }
            }

            entry.f1 = failed ? 0.0 : f1_sum / static_cast<double>(splits.size());
            if (n_preds > 0) st.infer_per_sample = infer_seconds / static_cast<double>(n_preds);
            entry.eliminated = failed || entry.f1 < cfg.floor;
            if (entry.eliminated) st.alive = false;
            row.entries.push_back(std::move(entry));
        }
        table.rounds.push_back(std::move(row));
    }
    return table;
}

void write_survival_csv(const SurvivalTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "round,window_seconds,model,f1,eliminated\n";
    for (const auto& round : table.rounds) {
        for (const auto& e : round.entries) {
            out << round.round << ',' << std::fixed << std::setprecision(2)
                << round.window_seconds << std::defaultfloat << std::setprecision(17) << ','
                << e.model << ',' << e.f1 << ',' << (e.eliminated ? 1 : 0) << '\n';
        }
    }
    if (!out) throw DataError("write failed for '" + path + "'");
}

}  // namespace chemtime::eval
