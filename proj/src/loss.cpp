#include "chemtime/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "chemtime/linalg.hpp"

namespace chemtime {

double step_loss(const std::vector<double>& e, const std::vector<double>& y,
                 const std::string& target_name, LossKind kind, const EmbeddingTable& table,
                 double hinge_margin) {
    switch (kind) {
        case LossKind::squared: {
            double s = 0.0;
            for (std::size_t i = 0; i < e.size(); ++i) {
                const double d = e[i] - y[i];
                s += d * d;
            }
            return s;
        }
        case LossKind::cosine: {
            const double ne = norm2(e);
            const double ny = norm2(y);
            if (ne == 0.0 || ny == 0.0) return 0.0;
            return 1.0 - dot(e, y) / (ne * ny);
        }
        case LossKind::hinge_rank: {
            double s = 0.0;
            const double ey = dot(e, y);
            for (const auto& [name, v] : table.entries()) {
                if (name == target_name) continue;
                const double term = hinge_margin - ey + dot(e, v);
                if (term > 0.0) s += term;
            }
            return s;
        }
    }
    throw std::logic_error("step_loss: unhandled loss kind");
}

std::vector<double> step_loss_grad(const std::vector<double>& e, const std::vector<double>& y,
                                   const std::string& target_name, LossKind kind,
                                   const EmbeddingTable& table, double hinge_margin) {
    std::vector<double> g(e.size(), 0.0);
    switch (kind) {
        case LossKind::squared: {
            for (std::size_t i = 0; i < e.size(); ++i) g[i] = 2.0 * (e[i] - y[i]);
            return g;
        }
        case LossKind::cosine: {
            const double ne = norm2(e);
            const double ny = norm2(y);
            if (ne == 0.0 || ny == 0.0) return g;
            const double ey = dot(e, y);
            const double inv = 1.0 / (ne * ny);
            for (std::size_t i = 0; i < e.size(); ++i) {
                g[i] = ey * e[i] / (ne * ne) * inv - y[i] * inv;
            }
            return g;
        }
        case LossKind::hinge_rank: {
            const double ey = dot(e, y);
            for (const auto& [name, v] : table.entries()) {
                if (name == target_name) continue;
                if (hinge_margin - ey + dot(e, v) > 0.0) {
                    for (std::size_t i = 0; i < e.size(); ++i) g[i] += v[i] - y[i];
                }
            }
            return g;
        }
    }
    throw std::logic_error("step_loss_grad: unhandled loss kind");
}

double sequence_loss(const Trajectory& traj, const TargetSequence& targets, LossKind kind,
                     const EmbeddingTable& table, double hinge_margin,
                     const std::vector<double>& step_weights) {
    const int t_len = traj.length();
    if (t_len != targets.length()) {
        throw std::invalid_argument("sequence_loss: trajectory length " + std::to_string(t_len) +
                                    " vs target length " + std::to_string(targets.length()));
    }
    if (!step_weights.empty() && static_cast<int>(step_weights.size()) != t_len) {
        throw std::invalid_argument("sequence_loss: step weight length mismatch");
    }
    double total = 0.0;
    for (int t = 0; t < t_len; ++t) {
        const double w = step_weights.empty() ? 1.0 : step_weights[t];
        total += w * step_loss(traj.points[t], targets.targets[t], targets.names[t], kind,
                               table, hinge_margin);
    }
    return total;
}

}  // namespace chemtime
