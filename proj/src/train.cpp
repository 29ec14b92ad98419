#include "chemtime/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "chemtime/linalg.hpp"
#include "chemtime/loss.hpp"
#include "chemtime/rng.hpp"

namespace chemtime {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Per-step activations cached for the backward pass.
struct StepCache {
    std::vector<double> x;       // standardized input column
    std::vector<double> h_prev;  // state entering the step
    std::vector<double> z, r, cand, rh;
    std::vector<double> h;       // state leaving the step
    std::vector<double> e;       // projected embedding
};

/// Mirrors chemtime::step, recording every intermediate.
void forward_cached(const ChemTimeModel& model,
                    const std::vector<std::vector<double>>& std_columns,
                    std::vector<StepCache>& caches) {
    const GruCell& cell = model.params.cell;
    const int h_n = cell.hidden;
    std::vector<double> h(h_n, 0.0);
    caches.clear();
    caches.reserve(std_columns.size());
    for (const auto& x : std_columns) {
        StepCache c;
        c.x = x;
        c.h_prev = h;
        c.z = cell.bz;
        c.r = cell.br;
        matvec_add(cell.wz, x, c.z);
        matvec_add(cell.uz, h, c.z);
        matvec_add(cell.wr, x, c.r);
        matvec_add(cell.ur, h, c.r);
        for (int i = 0; i < h_n; ++i) {
            c.z[i] = sigmoid(c.z[i]);
            c.r[i] = sigmoid(c.r[i]);
        }
        c.rh.resize(h_n);
        for (int i = 0; i < h_n; ++i) c.rh[i] = c.r[i] * h[i];
        c.cand = cell.bc;
        matvec_add(cell.wc, x, c.cand);
        matvec_add(cell.uc, c.rh, c.cand);
        for (int i = 0; i < h_n; ++i) c.cand[i] = std::tanh(c.cand[i]);
        for (int i = 0; i < h_n; ++i) h[i] = (1.0 - c.z[i]) * h[i] + c.z[i] * c.cand[i];
        c.h = h;
        c.e = model.params.proj.b;
        matvec_add(model.params.proj.w, h, c.e);
        caches.push_back(std::move(c));
    }
}

std::vector<std::vector<double>> standardized_columns(const ChemTimeModel& model,
                                                      const MTSample& sample) {
    const int k = sample.channel_count();
    const int t_len = sample.length();
    std::vector<std::vector<double>> cols(t_len, std::vector<double>(k));
    for (int t = 0; t < t_len; ++t) {
        for (int c = 0; c < k; ++c) {
            cols[t][c] = model.standardizer.apply(c, sample.channels()[c][t]);
        }
    }
    return cols;
}

void backward(const ChemTimeModel& model, const std::vector<StepCache>& caches,
              const TargetSequence& targets, const std::vector<double>& step_weights,
              Params& grad, double* loss_out) {
    const GruCell& cell = model.params.cell;
    const int h_n = cell.hidden;
    const int t_len = static_cast<int>(caches.size());

    double loss = 0.0;
    std::vector<double> dh(h_n, 0.0);
    std::vector<double> dh_prev(h_n), dcand(h_n), dz(h_n), da(h_n), drh(h_n), dr(h_n);

    for (int t = t_len - 1; t >= 0; --t) {
        const StepCache& c = caches[t];
        const double w = step_weights.empty() ? 1.0 : step_weights[t];

        loss += w * step_loss(c.e, targets.targets[t], targets.names[t], model.loss_kind,
                              model.table, model.hinge_margin);
        std::vector<double> g = step_loss_grad(c.e, targets.targets[t], targets.names[t],
                                               model.loss_kind, model.table, model.hinge_margin);
        if (w != 1.0) {
            for (double& v : g) v *= w;
        }

        outer_add(grad.proj.w, 1.0, g, c.h);
        for (std::size_t i = 0; i < g.size(); ++i) grad.proj.b[i] += g[i];
        matvec_t_add(model.params.proj.w, g, dh);

        for (int i = 0; i < h_n; ++i) {
            dcand[i] = dh[i] * c.z[i];
            dz[i] = dh[i] * (c.cand[i] - c.h_prev[i]);
            dh_prev[i] = dh[i] * (1.0 - c.z[i]);
        }
        // candidate gate
        for (int i = 0; i < h_n; ++i) da[i] = dcand[i] * (1.0 - c.cand[i] * c.cand[i]);
        outer_add(grad.cell.wc, 1.0, da, c.x);
        outer_add(grad.cell.uc, 1.0, da, c.rh);
        for (int i = 0; i < h_n; ++i) grad.cell.bc[i] += da[i];
        std::fill(drh.begin(), drh.end(), 0.0);
        matvec_t_add(cell.uc, da, drh);
        for (int i = 0; i < h_n; ++i) {
            dr[i] = drh[i] * c.h_prev[i];
            dh_prev[i] += drh[i] * c.r[i];
        }
        // reset gate
        for (int i = 0; i < h_n; ++i) da[i] = dr[i] * c.r[i] * (1.0 - c.r[i]);
        outer_add(grad.cell.wr, 1.0, da, c.x);
        outer_add(grad.cell.ur, 1.0, da, c.h_prev);
        for (int i = 0; i < h_n; ++i) grad.cell.br[i] += da[i];
        matvec_t_add(cell.ur, da, dh_prev);
        // update gate
        for (int i = 0; i < h_n; ++i) da[i] = dz[i] * c.z[i] * (1.0 - c.z[i]);
        outer_add(grad.cell.wz, 1.0, da, c.x);
        outer_add(grad.cell.uz, 1.0, da, c.h_prev);
        for (int i = 0; i < h_n; ++i) grad.cell.bz[i] += da[i];
        matvec_t_add(cell.uz, da, dh_prev);

        dh = dh_prev;
    }
    if (loss_out) *loss_out = loss;
}

}  // namespace

Params bptt_gradient(const ChemTimeModel& model, const MTSample& sample,
                     const TargetSequence& targets, const std::vector<double>& step_weights,
                     double* loss_out) {
    if (sample.channel_count() != model.input_size()) {
        throw std::invalid_argument("bptt_gradient: channel count mismatch");
    }
    if (targets.length() != sample.length()) {
        throw std::invalid_argument("bptt_gradient: target length mismatch");
    }
    if (!step_weights.empty() && static_cast<int>(step_weights.size()) != sample.length()) {
        throw std::invalid_argument("bptt_gradient: step weight length mismatch");
    }
    std::vector<StepCache> caches;
    forward_cached(model, standardized_columns(model, sample), caches);
    Params grad(model.input_size(), model.hidden_size(), model.embed_dim());
    backward(model, caches, targets, step_weights, grad, loss_out);
    return grad;
}

ChemTimeModel train(const Dataset& train_ds, const EmbeddingTable& table,
                    const TrainConfig& cfg, std::vector<double>* epoch_mean_losses) {
    if (train_ds.size() == 0) throw std::invalid_argument("train: empty dataset");
    if (cfg.hidden < 1) throw std::invalid_argument("train: hidden size must be >= 1");
    if (cfg.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
    if (cfg.batch < 1) throw std::invalid_argument("train: batch must be >= 1");

    const int k = train_ds.channel_count();
    ChemTimeModel model;
    model.params = Params(k, cfg.hidden, table.dim());
    model.loss_kind = cfg.loss;
    model.hinge_margin = cfg.hinge_margin;
    model.boost_mode = cfg.boost;
    model.standardizer = Standardizer::fit(train_ds);
    model.table = table;
    model.analyte_names = train_ds.analyte_names();
    model.positive_analyte = train_ds.positive_analyte();

    Rng rng(derive_seed(cfg.seed, "chemtime/train"));
    const double init_scale = 1.0 / std::sqrt(static_cast<double>(cfg.hidden));
    model.params.for_each_array([&rng, init_scale](std::vector<double>& a) {
        for (double& v : a) v = rng.uniform(-init_scale, init_scale);
    });

    const int n = train_ds.size();
    std::vector<TargetSequence> targets;
    targets.reserve(n);
    std::vector<std::vector<std::vector<double>>> columns;
    columns.reserve(n);
    for (const auto& s : train_ds.samples()) {
        targets.push_back(build_target_sequence(s, table, train_ds.analyte_names()));
        columns.push_back(standardized_columns(model, s));
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (epoch_mean_losses) epoch_mean_losses->clear();

    std::vector<StepCache> caches;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;
        for (int start = 0; start < n; start += cfg.batch) {
            const int end = std::min(n, start + cfg.batch);
            Params grad(k, cfg.hidden, table.dim());
            for (int b = start; b < end; ++b) {
                const int idx = order[b];
                forward_cached(model, columns[idx], caches);
                double sample_loss = 0.0;
                backward(model, caches, targets[idx], cfg.step_weights, grad, &sample_loss);
                epoch_loss += sample_loss;
            }
            if (!std::isfinite(epoch_loss)) {
                throw TrainingError("train: loss diverged at epoch " + std::to_string(epoch));
            }
            grad.scale(1.0 / static_cast<double>(end - start));
            const double g_norm = grad.norm();
            if (cfg.clip_norm > 0.0 && g_norm > cfg.clip_norm) {
                grad.scale(cfg.clip_norm / g_norm);
            }
            model.params.add_scaled(grad, -cfg.lr);
        }
        if (epoch_mean_losses) {
            epoch_mean_losses->push_back(epoch_loss / static_cast<double>(n));
        }
    }
    return model;
}

}  // namespace chemtime
