#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chemtime/embedding.hpp"
#include "chemtime/linalg.hpp"
#include "chemtime/types.hpp"

namespace chemtime {

enum class LossKind { squared, cosine, hinge_rank };

LossKind loss_kind_from_string(const std::string& s);
const char* to_string(LossKind k);

/// Single-layer gated recurrent cell (update / reset / candidate gates).
struct GruCell {
    int input = 0;   // k, sensor channels
    int hidden = 0;  // H
    Matrix wz, uz;   // H x k, H x H
    Matrix wr, ur;
    Matrix wc, uc;
    std::vector<double> bz, br, bc;
};

/// Linear map from hidden state to the chemistry latent: e = W h + b.
struct Projection {
    Matrix w;               // d x H
    std::vector<double> b;  // d
};

/// All trainable parameters of the encoder.
struct Params {
    GruCell cell;
    Projection proj;

    Params() = default;
    Params(int input, int hidden, int embed_dim);

    template <typename F>
    void for_each_array(F&& f) {
        f(cell.wz.a); f(cell.uz.a); f(cell.bz);
        f(cell.wr.a); f(cell.ur.a); f(cell.br);
        f(cell.wc.a); f(cell.uc.a); f(cell.bc);
        f(proj.w.a); f(proj.b);
    }

    template <typename F>
    void for_each_array(F&& f) const {
        f(cell.wz.a); f(cell.uz.a); f(cell.bz);
        f(cell.wr.a); f(cell.ur.a); f(cell.br);
        f(cell.wc.a); f(cell.uc.a); f(cell.bc);
        f(proj.w.a); f(proj.b);
    }

    void fill(double v);
    void add_scaled(const Params& other, double alpha);
    double norm() const;
    void scale(double alpha);
};

/// Per-channel affine normalization fit on the training split.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;  // floored away from zero

    static Standardizer fit(const Dataset& train);
    /// Standardized value of channel c.
    double apply(int c, double v) const { return (v - mean[c]) / stddev[c]; }
};

enum class BoostMode { linear_margin, nearest_target };

BoostMode boost_mode_from_string(const std::string& s);
const char* to_string(BoostMode m);

/// Hinge-loss linear read-out over final embeddings. decision = sign(w.e + b0),
/// signed distance = (w.e + b0) / |w|.
struct LinearMargin {
    std::vector<double> w;
    double b0 = 0.0;

    double raw_score(const std::vector<double>& e) const;
    double distance(const std::vector<double>& e) const;
};

/// The trained early classifier: recurrent encoder + projection into the
/// embedding table's latent, plus the decision read-out.
struct ChemTimeModel {
    Params params;
    LossKind loss_kind = LossKind::squared;
    double hinge_margin = 0.1;
    Standardizer standardizer;
    EmbeddingTable table;
    std::vector<std::string> analyte_names;
    std::string positive_analyte;
    BoostMode boost_mode = BoostMode::linear_margin;
    std::optional<LinearMargin> margin;
    bool boost_fitted = false;

    int input_size() const { return params.cell.input; }
    int hidden_size() const { return params.cell.hidden; }
    int embed_dim() const { return table.dim(); }
};

/// Hidden state carried between incremental steps.
struct RecurrentState {
    std::vector<double> h;
};

/// Embedding trajectory of one sample; distances present once boost is fit.
struct Trajectory {
    std::vector<std::vector<double>> points;  // T x d
    std::vector<double> distances;            // T, empty if boost not fit

    int length() const { return static_cast<int>(points.size()); }
};

RecurrentState initial_state(const ChemTimeModel& model);

/// Advances the state by one raw input column (standardization applied
/// internally) and returns the step's embedding e_t.
std::vector<double> step(const ChemTimeModel& model, RecurrentState& state,
                         const std::vector<double>& raw_column);

/// Whole-sequence encoding. Identical, element for element, to iterating
/// `step` from `initial_state`; the implementation shares that path.
Trajectory forward(const ChemTimeModel& model, const MTSample& sample);

/// Signed margin of one embedding under the fitted boost.
double decision_distance(const ChemTimeModel& model, const std::vector<double>& e);

}  // namespace chemtime
