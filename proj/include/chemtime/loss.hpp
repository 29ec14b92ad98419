#pragma once

#include <vector>

#include "chemtime/embedding.hpp"
#include "chemtime/model.hpp"

namespace chemtime {

/// Loss of a single embedding against its target.
///   squared:    |e - y|^2
///   cosine:     1 - e.y / (|e||y|), 0 when either norm is 0
///   hinge_rank: sum over table entries j != target of max(0, m - e.y + e.v_j)
double step_loss(const std::vector<double>& e, const std::vector<double>& y,
                 const std::string& target_name, LossKind kind, const EmbeddingTable& table,
                 double hinge_margin = 0.1);

/// d(step_loss)/d(e). Subgradient 0 at the cosine loss's undefined origin.
std::vector<double> step_loss_grad(const std::vector<double>& e, const std::vector<double>& y,
                                   const std::string& target_name, LossKind kind,
                                   const EmbeddingTable& table, double hinge_margin = 0.1);

/// Sum over t of step_loss, optionally weighted per step (empty = uniform 1).
double sequence_loss(const Trajectory& traj, const TargetSequence& targets, LossKind kind,
                     const EmbeddingTable& table, double hinge_margin = 0.1,
                     const std::vector<double>& step_weights = {});

}  // namespace chemtime
