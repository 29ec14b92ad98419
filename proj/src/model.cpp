#include "chemtime/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chemtime {

LossKind loss_kind_from_string(const std::string& s) {
    if (s == "squared") return LossKind::squared;
    if (s == "cosine") return LossKind::cosine;
    if (s == "hinge_rank") return LossKind::hinge_rank;
    throw std::invalid_argument("unknown loss kind '" + s + "'");
}

const char* to_string(LossKind k) {
    switch (k) {
        case LossKind::squared: return "squared";
        case LossKind::cosine: return "cosine";
        case LossKind::hinge_rank: return "hinge_rank";
    }
    return "squared";
}

BoostMode boost_mode_from_string(const std::string& s) {
    if (s == "linear_margin") return BoostMode::linear_margin;
    if (s == "nearest_target") return BoostMode::nearest_target;
    throw std::invalid_argument("unknown boost mode '" + s + "'");
}

const char* to_string(BoostMode m) {
    return m == BoostMode::linear_margin ? "linear_margin" : "nearest_target";
}

Params::Params(int input, int hidden, int embed_dim) {
    cell.input = input;
    cell.hidden = hidden;
    cell.wz = Matrix(hidden, input);
    cell.uz = Matrix(hidden, hidden);
    cell.wr = Matrix(hidden, input);
    cell.ur = Matrix(hidden, hidden);
    cell.wc = Matrix(hidden, input);
    cell.uc = Matrix(hidden, hidden);
    cell.bz.assign(hidden, 0.0);
    cell.br.assign(hidden, 0.0);
    cell.bc.assign(hidden, 0.0);
    proj.w = Matrix(embed_dim, hidden);
    proj.b.assign(embed_dim, 0.0);
}

void Params::fill(double v) {
    for_each_array([v](std::vector<double>& a) { std::fill(a.begin(), a.end(), v); });
}

void Params::add_scaled(const Params& other, double alpha) {
    std::vector<const std::vector<double>*> theirs;
    other.for_each_array([&theirs](const std::vector<double>& a) { theirs.push_back(&a); });
    std::size_t i = 0;
    for_each_array([&](std::vector<double>& a) {
        const std::vector<double>& o = *theirs[i++];
        for (std::size_t j = 0; j < a.size(); ++j) a[j] += alpha * o[j];
    });
}

double Params::norm() const {
    double s = 0.0;
    for_each_array([&s](const std::vector<double>& a) {
        for (double v : a) s += v * v;
    });
    return std::sqrt(s);
}

void Params::scale(double alpha) {
    for_each_array([alpha](std::vector<double>& a) {
        for (double& v : a) v *= alpha;
    });
}

Standardizer Standardizer::fit(const Dataset& train) {
    if (train.size() == 0) throw std::invalid_argument("standardizer: empty dataset");
    const int k = train.channel_count();
    Standardizer st;
    st.mean.assign(k, 0.0);
    st.stddev.assign(k, 0.0);
    std::vector<long> counts(k, 0);
    for (const auto& s : train.samples()) {
        for (int c = 0; c < k; ++c) {
            for (double v : s.channels()[c]) {
                st.mean[c] += v;
                ++counts[c];
            }
        }
    }
    for (int c = 0; c < k; ++c) st.mean[c] /= static_cast<double>(counts[c]);
    for (const auto& s : train.samples()) {
        for (int c = 0; c < k; ++c) {
            for (double v : s.channels()[c]) {
                const double d = v - st.mean[c];
                st.stddev[c] += d * d;
            }
        }
    }
    for (int c = 0; c < k; ++c) {
        st.stddev[c] = std::sqrt(st.stddev[c] / static_cast<double>(counts[c]));
        if (st.stddev[c] < 1e-12) st.stddev[c] = 1.0;  // constant channel
    }
    return st;
}

double LinearMargin::raw_score(const std::vector<double>& e) const {
    return dot(w, e) + b0;
}

double LinearMargin::distance(const std::vector<double>& e) const {
    const double n = norm2(w);
    if (n < 1e-300) return 0.0;
    return raw_score(e) / n;
}

RecurrentState initial_state(const ChemTimeModel& model) {
    return RecurrentState{std::vector<double>(model.hidden_size(), 0.0)};
}

namespace {
inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
}  // namespace

std::vector<double> step(const ChemTimeModel& model, RecurrentState& state,
                         const std::vector<double>& raw_column) {
    const GruCell& cell = model.params.cell;
    const int k = cell.input;
    const int h_n = cell.hidden;
    if (static_cast<int>(raw_column.size()) != k) {
        throw std::invalid_argument("step: input column has " +
                                    std::to_string(raw_column.size()) + " channels, model expects " +
                                    std::to_string(k));
    }
    if (static_cast<int>(state.h.size()) != h_n) {
        throw std::invalid_argument("step: state size mismatch");
    }

    std::vector<double> x(k);
    for (int c = 0; c < k; ++c) x[c] = model.standardizer.apply(c, raw_column[c]);

    std::vector<double> z(cell.bz), r(cell.br), cand(cell.bc);
    matvec_add(cell.wz, x, z);
    matvec_add(cell.uz, state.h, z);
    matvec_add(cell.wr, x, r);
    matvec_add(cell.ur, state.h, r);
    for (int i = 0; i < h_n; ++i) {
        z[i] = sigmoid(z[i]);
        r[i] = sigmoid(r[i]);
    }
    std::vector<double> rh(h_n);
    for (int i = 0; i < h_n; ++i) rh[i] = r[i] * state.h[i];
    matvec_add(cell.wc, x, cand);
    matvec_add(cell.uc, rh, cand);
    for (int i = 0; i < h_n; ++i) cand[i] = std::tanh(cand[i]);
    for (int i = 0; i < h_n; ++i) {
        state.h[i] = (1.0 - z[i]) * state.h[i] + z[i] * cand[i];
    }

    std::vector<double> e(model.params.proj.b);
    matvec_add(model.params.proj.w, state.h, e);
    return e;
}

Trajectory forward(const ChemTimeModel& model, const MTSample& sample) {
    if (sample.channel_count() != model.input_size()) {
        throw std::invalid_argument("forward: sample has " +
                                    std::to_string(sample.channel_count()) +
                                    " channels, model expects " +
                                    std::to_string(model.input_size()));
    }
    const int t_len = sample.length();
    const int k = model.input_size();
    Trajectory traj;
    traj.points.reserve(t_len);
    RecurrentState state = initial_state(model);
    std::vector<double> col(k);
    for (int t = 0; t < t_len; ++t) {
        for (int c = 0; c < k; ++c) col[c] = sample.channels()[c][t];
        traj.points.push_back(step(model, state, col));
    }
    if (model.boost_fitted) {
        traj.distances.reserve(t_len);
        for (const auto& e : traj.points) traj.distances.push_back(decision_distance(model, e));
    }
    return traj;
}

double decision_distance(const ChemTimeModel& model, const std::vector<double>& e) {
    if (!model.boost_fitted) throw CapabilityError("decision_distance: boost not fit");
    if (model.boost_mode == BoostMode::linear_margin) {
        return model.margin->distance(e);
    }
    // Nearest-target margin: half the gap between the distance to the positive
    // analyte's vector and the distance to the closest other entry.
    double d_pos = 0.0;
    double d_other = std::numeric_limits<double>::infinity();
    for (const auto& [name, vec] : model.table.entries()) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < vec.size(); ++i) {
            const double diff = e[i] - vec[i];
            d2 += diff * diff;
        }
        const double d = std::sqrt(d2);
        if (name == model.positive_analyte) {
            d_pos = d;
        } else {
            d_other = std::min(d_other, d);
        }
    }
    return 0.5 * (d_other - d_pos);
}

}  // namespace chemtime
