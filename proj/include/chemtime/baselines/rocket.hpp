#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "chemtime/linalg.hpp"
#include "chemtime/types.hpp"

namespace chemtime::baselines {

/// One random dilated convolution kernel over a subset of channels.
struct RocketKernel {
    int length = 9;                  // 7, 9 or 11
    std::vector<int> channels;       // nonempty subset of [0, k)
    std::vector<std::vector<double>> weights;  // one mean-centered row per channel
    double bias = 0.0;               // uniform(-1, 1)
    int dilation = 1;                // floor(2^u)
    bool padding = false;            // zero-pad (length-1)*dilation/2 each side

    int span() const { return (length - 1) * dilation + 1; }
    int pad() const { return padding ? (length - 1) * dilation / 2 : 0; }
};

/// Draws `count` kernels for series of shape (k, t). Throws when a kernel's
/// dilated span cannot fit the padded series, so the transform itself never
/// has to.
std::vector<RocketKernel> generate_kernels(int k, int t, int count, std::uint64_t seed);

/// Convolution outputs pooled to (PPV, max) per kernel: 2*|kernels| features.
std::vector<double> rocket_features(const std::vector<std::vector<double>>& channels,
                                    const std::vector<RocketKernel>& kernels);
std::vector<double> rocket_features(const MTSample& s, const std::vector<RocketKernel>& kernels);
Matrix rocket_features(const Dataset& ds, const std::vector<RocketKernel>& kernels);

nlohmann::json kernels_to_json(const std::vector<RocketKernel>& kernels);
std::vector<RocketKernel> kernels_from_json(const nlohmann::json& j);

}  // namespace chemtime::baselines
