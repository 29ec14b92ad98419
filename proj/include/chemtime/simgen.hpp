#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chemtime/rng.hpp"
#include "chemtime/types.hpp"

namespace chemtime::simgen {

/// Physical description of one synthetic sensor array. Responses follow
/// first-order adsorption kinetics: channel c exposed to analyte a at
/// concentration q approaches baseline + affinity[c][a] * q with time
/// constant tau[c][a] seconds, on top of linear drift and Gaussian noise.
struct SensorArraySpec {
    int k = 8;
    std::vector<double> baselines;            // ohms, size k
    std::vector<std::vector<double>> affinity;  // k x A, ohms per percent
    std::vector<std::vector<double>> tau;       // k x A, seconds, > 0
    double noise_sigma = 0.0;                 // ohms
    double drift_slope = 0.0;                 // ohms per second

    int analyte_count() const { return affinity.empty() ? 0 : static_cast<int>(affinity[0].size()); }
    void validate() const;
};

struct SimConfig {
    SensorArraySpec array_spec;
    std::vector<std::string> analyte_names;
    std::string positive_analyte;
    int n_train = 100;
    int n_test = 32;
    double duration_s = 5.0;
    double onset_s = 1.0;
    double rate_hz = 20.0;
    double conc_lo = 10.0;  // percent
    double conc_hi = 25.0;
    std::uint64_t seed = 0;
    std::string name = "synthetic";

    void validate() const;
};

/// Deterministic closed-form response of the whole array, noise drawn from rng.
/// Row c, step t:
///   baseline_c + drift*t/rate
///   + [t >= onset] * affinity[c][a] * conc * (1 - exp(-(t-onset)/(rate*tau[c][a])))
///   + N(0, noise_sigma)
std::vector<std::vector<double>> response_curve(const SensorArraySpec& spec, int analyte,
                                                double conc, int steps, int onset,
                                                double rate_hz, Rng& rng);

/// Balanced single-analyte exposures; train and test use disjoint RNG streams.
std::pair<Dataset, Dataset> generate_dataset(const SimConfig& cfg);

/// The stock array randomized from `seed`; analyte count A.
SensorArraySpec make_array_spec(std::uint64_t seed, int k = 8, int analytes = 4);

/// Eleven randomized arrays (seeds 0..10) standing in for distinct hardware
/// configurations.
std::vector<SensorArraySpec> preset_array_specs(int k = 8, int analytes = 4);

/// Default config: preset array `spec_index`, analytes A..D, positive "A".
SimConfig default_config(std::uint64_t seed = 0, int spec_index = 0);

}  // namespace chemtime::simgen
