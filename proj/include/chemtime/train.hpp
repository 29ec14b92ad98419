#pragma once

#include <cstdint>
#include <vector>

#include "chemtime/embedding.hpp"
#include "chemtime/model.hpp"

namespace chemtime {

struct TrainConfig {
    int hidden = 32;
    double lr = 1e-2;
    int epochs = 50;
    int batch = 8;
    LossKind loss = LossKind::squared;
    BoostMode boost = BoostMode::linear_margin;
    std::uint64_t seed = 0;
    double clip_norm = 5.0;
    double hinge_margin = 0.1;
    std::vector<double> step_weights;  // empty = uniform weighting over steps
};

/// Full-gradient backpropagation through time for one sample: the exact
/// derivative of the (weighted) sequence loss with respect to every parameter.
/// `sample` columns are standardized by the model's standardizer, matching
/// inference.
Params bptt_gradient(const ChemTimeModel& model, const MTSample& sample,
                     const TargetSequence& targets,
                     const std::vector<double>& step_weights = {},
                     double* loss_out = nullptr);

/// Mini-batch gradient descent over the summed sequence loss. Deterministic
/// given cfg.seed. Throws TrainingError naming the epoch if the loss leaves
/// the finite range.
ChemTimeModel train(const Dataset& train_ds, const EmbeddingTable& table,
                    const TrainConfig& cfg, std::vector<double>* epoch_mean_losses = nullptr);

}  // namespace chemtime
