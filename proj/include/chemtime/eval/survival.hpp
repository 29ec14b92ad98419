#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chemtime/eval/benchmark.hpp"

namespace chemtime::eval {

enum class SurvivalMode { plain, inference_biased };

struct SurvivalEntry {
    std::string model;
    double f1 = 0.0;
    bool eliminated = false;
};

struct SurvivalRound {
    int round = 0;
    double window_seconds = 0.0;
    std::vector<SurvivalEntry> entries;  // models alive entering the round
};

struct SurvivalTable {
    SurvivalMode mode = SurvivalMode::plain;
    std::vector<SurvivalRound> rounds;

    /// Window of the round where `model` was eliminated; 0 when it survived
    /// every round (or never appeared).
    double elimination_window(const std::string& model) const;
};

struct SurvivalConfig {
    double start_s = 5.0;
    double step_s = 0.25;
    double floor = 0.8;
    SurvivalMode mode = SurvivalMode::plain;
    std::uint64_t seed = 0;
};

/// Round r evaluates every surviving model at window start_s - r*step_s.
/// Fixed-window models are refit per round on prefix-truncated training data;
/// prefix-capable models are fit once at the starting window and queried at
/// shorter prefixes. Elimination: mean F1 across the splits below the floor
/// (a fit failure counts as 0). In inference_biased mode a model's data
/// window is the round budget minus its per-sample inference time measured
/// in the previous round; a budget fully consumed by inference eliminates.
SurvivalTable survival(const std::vector<baselines::ModelSpec>& models, const DatasetPair& pair,
                       const std::vector<SplitSpec>& splits, const SurvivalConfig& cfg = {});

/// round,window_seconds,model,f1,eliminated (windows fixed to 2 decimals).
void write_survival_csv(const SurvivalTable& table, const std::string& path);

}  // namespace chemtime::eval
