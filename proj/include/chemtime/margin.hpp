#pragma once

#include <cstdint>
#include <vector>

#include "chemtime/model.hpp"
#include "chemtime/types.hpp"

namespace chemtime {

struct MarginFitConfig {
    double lambda = 1e-3;
    int epochs = 200;
    std::uint64_t seed = 0;
};

/// L2-regularized hinge-loss linear classifier trained by a deterministic
/// subgradient schedule (eta_t = 1 / (lambda t), seeded shuffled passes).
/// Labels are +/-1 encoded as BinaryLabel. Throws TrainingError when only
/// one class is present.
LinearMargin fit_linear_margin(const std::vector<std::vector<double>>& points,
                               const std::vector<BinaryLabel>& labels,
                               const MarginFitConfig& cfg = {});

/// Fits the model's boost stage on final-step embeddings of the training
/// corpus. In nearest_target mode there is nothing to fit; the flag is set.
void fit_boost(ChemTimeModel& model, const Dataset& train,
               const MarginFitConfig& cfg = {});

/// Runs the encoder over prefix(sample, prefix_len), classifies the last
/// embedding, and reports the signed margin plus wall-clock inference time.
PredictionResult predict(const ChemTimeModel& model, const MTSample& sample, int prefix_len);

/// Labels at every prefix length 1..T from a single encoder pass.
std::vector<BinaryLabel> prefix_labels(const ChemTimeModel& model, const MTSample& sample);

/// Smallest prefix length l such that validation F1 stays at or above
/// `f1_floor` for every prefix >= l; returns the common length T when no
/// prefix qualifies.
int calibrate_early_window(const ChemTimeModel& model, const Dataset& validation,
                           double f1_floor);

}  // namespace chemtime
