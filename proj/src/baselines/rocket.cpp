#include "chemtime/baselines/rocket.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "chemtime/rng.hpp"

namespace chemtime::baselines {

std::vector<RocketKernel> generate_kernels(int k, int t, int count, std::uint64_t seed) {
    if (k < 1 || t < 2) throw std::invalid_argument("generate_kernels: need k >= 1 and t >= 2");
    if (count < 1) throw std::invalid_argument("generate_kernels: count must be >= 1");
    Rng rng(derive_seed(seed, "rocket/kernels"));
    static const int kLengths[3] = {7, 9, 11};

    std::vector<RocketKernel> kernels;
    kernels.reserve(count);
    for (int i = 0; i < count; ++i) {
        RocketKernel kern;
        // Keep only lengths that can fit the series at dilation 1.
        std::vector<int> lengths;
        for (int l : kLengths) {
            if (l <= t) lengths.push_back(l);
        }
        if (lengths.empty()) lengths.push_back(t);
        kern.length = lengths[rng.uniform_int(lengths.size())];

        const double max_exp = std::log2(static_cast<double>(t - 1) / (kern.length - 1));
        kern.dilation = static_cast<int>(std::floor(std::exp2(rng.uniform(0.0, max_exp))));
        if (kern.dilation < 1) kern.dilation = 1;
        kern.padding = rng.uniform01() < 0.5;
        kern.bias = rng.uniform(-1.0, 1.0);

        const int subset = 1 + static_cast<int>(rng.uniform_int(k));
        std::vector<int> all(k);
        std::iota(all.begin(), all.end(), 0);
        rng.shuffle(all);
        kern.channels.assign(all.begin(), all.begin() + subset);
        std::sort(kern.channels.begin(), kern.channels.end());

        kern.weights.resize(subset);
        for (auto& row : kern.weights) {
            row.resize(kern.length);
            double mean = 0.0;
            for (double& w : row) {
                w = rng.normal();
                mean += w;
            }
            mean /= kern.length;
            for (double& w : row) w -= mean;
        }

        if (kern.span() > t + 2 * kern.pad()) {
            throw std::invalid_argument("generate_kernels: kernel span exceeds padded length");
        }
        kernels.push_back(std::move(kern));
    }
    return kernels;
}

std::vector<double> rocket_features(const std::vector<std::vector<double>>& channels,
                                    const std::vector<RocketKernel>& kernels) {
    if (channels.empty()) throw std::invalid_argument("rocket_features: no channels");
    const int t = static_cast<int>(channels[0].size());
    std::vector<double> feats;
    feats.reserve(2 * kernels.size());
    for (const auto& kern : kernels) {
        const int pad = kern.pad();
        const int out_len = t + 2 * pad - kern.span() + 1;
        if (out_len < 1) {
            throw std::invalid_argument("rocket_features: series shorter than kernel span");
        }
        int positive = 0;
        double max_out = -std::numeric_limits<double>::infinity();
        for (int p = -pad; p < t + pad - kern.span() + 1; ++p) {
            double acc = kern.bias;
            for (std::size_t ci = 0; ci < kern.channels.size(); ++ci) {
                const std::vector<double>& series = channels[kern.channels[ci]];
                const std::vector<double>& w = kern.weights[ci];
                for (int j = 0; j < kern.length; ++j) {
                    const int idx = p + j * kern.dilation;
                    if (idx >= 0 && idx < t) acc += w[j] * series[idx];
                }
            }
            if (acc > 0.0) ++positive;
            if (acc > max_out) max_out = acc;
        }
        feats.push_back(static_cast<double>(positive) / out_len);
        feats.push_back(max_out);
    }
    return feats;
}

std::vector<double> rocket_features(const MTSample& s, const std::vector<RocketKernel>& kernels) {
    return rocket_features(s.channels(), kernels);
}

Matrix rocket_features(const Dataset& ds, const std::vector<RocketKernel>& kernels) {
    Matrix out(ds.size(), 2 * static_cast<int>(kernels.size()));
    for (int i = 0; i < ds.size(); ++i) {
        const std::vector<double> f = rocket_features(ds.samples()[i], kernels);
        std::copy(f.begin(), f.end(), out.row(i));
    }
    return out;
}

nlohmann::json kernels_to_json(const std::vector<RocketKernel>& kernels) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& k : kernels) {
        arr.push_back({{"length", k.length},
                       {"channels", k.channels},
                       {"weights", k.weights},
                       {"bias", k.bias},
                       {"dilation", k.dilation},
                       {"padding", k.padding}});
    }
    return arr;
}

std::vector<RocketKernel> kernels_from_json(const nlohmann::json& j) {
    std::vector<RocketKernel> kernels;
    for (const auto& kj : j) {
        RocketKernel k;
        k.length = kj.at("length").get<int>();
        k.channels = kj.at("channels").get<std::vector<int>>();
        k.weights = kj.at("weights").get<std::vector<std::vector<double>>>();
        k.bias = kj.at("bias").get<double>();
        k.dilation = kj.at("dilation").get<int>();
        k.padding = kj.at("padding").get<bool>();
        kernels.push_back(std::move(k));
    }
    return kernels;
}

}  // namespace chemtime::baselines
