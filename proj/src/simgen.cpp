#include "chemtime/simgen.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chemtime/metrics.hpp"

namespace chemtime::simgen {

void SensorArraySpec::validate() const {
    if (k < 1) throw std::invalid_argument("array spec: k must be >= 1");
    if (static_cast<int>(baselines.size()) != k) {
        throw std::invalid_argument("array spec: baselines size != k");
    }
    if (static_cast<int>(affinity.size()) != k || static_cast<int>(tau.size()) != k) {
        throw std::invalid_argument("array spec: affinity/tau must have k rows");
    }
    const std::size_t a = affinity.empty() ? 0 : affinity[0].size();
    if (a == 0) throw std::invalid_argument("array spec: no analytes");
    for (int c = 0; c < k; ++c) {
        if (affinity[c].size() != a || tau[c].size() != a) {
            throw std::invalid_argument("array spec: ragged affinity/tau rows");
        }
        for (double t : tau[c]) {
            if (!(t > 0.0)) throw std::invalid_argument("array spec: tau entries must be > 0");
        }
    }
    if (noise_sigma < 0.0) throw std::invalid_argument("array spec: negative noise_sigma");
}

void SimConfig::validate() const {
    array_spec.validate();
    if (static_cast<int>(analyte_names.size()) != array_spec.analyte_count()) {
        throw std::invalid_argument("sim config: analyte name count != array analyte count");
    }
    if (n_train <= 0 || n_test <= 0) throw std::invalid_argument("sim config: counts must be > 0");
    if (!(onset_s < duration_s)) throw std::invalid_argument("sim config: onset_s must precede duration_s");
    if (!(rate_hz > 0.0)) throw std::invalid_argument("sim config: rate must be > 0");
    if (!(conc_lo <= conc_hi) || conc_lo < 0.0) {
        throw std::invalid_argument("sim config: bad concentration range");
    }
}

std::vector<std::vector<double>> response_curve(const SensorArraySpec& spec, int analyte,
                                                double conc, int steps, int onset,
                                                double rate_hz, Rng& rng) {
    if (analyte < 0 || analyte >= spec.analyte_count()) {
        throw std::invalid_argument("response_curve: analyte index out of range");
    }
    if (conc < 0.0) throw std::invalid_argument("response_curve: negative concentration");
    if (steps < 1) throw std::invalid_argument("response_curve: steps must be >= 1");
    std::vector<std::vector<double>> out(spec.k, std::vector<double>(steps));
    for (int c = 0; c < spec.k; ++c) {
        const double amp = spec.affinity[c][analyte] * conc;
        const double tau_steps = rate_hz * spec.tau[c][analyte];
        for (int t = 0; t < steps; ++t) {
            double v = spec.baselines[c] + spec.drift_slope * t / rate_hz;
            if (t >= onset) {
                v += amp * (1.0 - std::exp(-(t - onset) / tau_steps));
            }
            if (spec.noise_sigma > 0.0) v += rng.normal(0.0, spec.noise_sigma);
            out[c][t] = v;
        }
    }
    return out;
}

namespace {

std::string padded_id(const std::string& prefix, int i) {
    std::ostringstream os;
    os << prefix << "-";
    std::string n = std::to_string(i);
    for (std::size_t p = n.size(); p < 4; ++p) os << '0';
    os << n;
    return os.str();
}

Dataset generate_split(const SimConfig& cfg, int n, const std::string& id_prefix,
                       const std::string& ds_name, Rng& rng) {
    const int a_count = cfg.array_spec.analyte_count();
    const int steps = seconds_to_steps(cfg.duration_s, cfg.rate_hz);
    const int onset = seconds_to_steps(cfg.onset_s, cfg.rate_hz);

    // Balanced analyte roster: counts per analyte differ by at most one.
    std::vector<int> roster(n);
    for (int i = 0; i < n; ++i) roster[i] = i % a_count;
    rng.shuffle(roster);

    std::vector<MTSample> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int analyte = roster[i];
        const double conc = rng.uniform(cfg.conc_lo, cfg.conc_hi);
        auto channels = response_curve(cfg.array_spec, analyte, conc, steps, onset,
                                       cfg.rate_hz, rng);
        std::vector<double> conc_vec(a_count, 0.0);
        conc_vec[analyte] = conc;
        samples.emplace_back(padded_id(id_prefix, i), std::move(channels), cfg.rate_hz,
                             onset, std::move(conc_vec));
    }
    return Dataset(ds_name, cfg.analyte_names, std::move(samples), cfg.positive_analyte);
}

}  // namespace

std::pair<Dataset, Dataset> generate_dataset(const SimConfig& cfg) {
    cfg.validate();
    Rng train_rng(derive_seed(cfg.seed, "simgen/train"));
    Rng test_rng(derive_seed(cfg.seed, "simgen/test"));
    Dataset train = generate_split(cfg, cfg.n_train, "train", cfg.name, train_rng);
    Dataset test = generate_split(cfg, cfg.n_test, "test", cfg.name, test_rng);
    return {std::move(train), std::move(test)};
}

SensorArraySpec make_array_spec(std::uint64_t seed, int k, int analytes) {
    Rng rng(derive_seed(seed, "simgen/array-spec"));
    SensorArraySpec spec;
    spec.k = k;
    spec.baselines.resize(k);
    spec.affinity.assign(k, std::vector<double>(analytes));
    spec.tau.assign(k, std::vector<double>(analytes));
    for (int c = 0; c < k; ++c) {
        spec.baselines[c] = rng.uniform(900.0, 1100.0);
        for (int a = 0; a < analytes; ++a) {
            spec.affinity[c][a] = rng.uniform(-15.0, 15.0);
            spec.tau[c][a] = rng.uniform(0.5, 2.5);
        }
    }
    spec.noise_sigma = 40.0;
    spec.drift_slope = rng.uniform(-2.0, 2.0);
    return spec;
}

std::vector<SensorArraySpec> preset_array_specs(int k, int analytes) {
    std::vector<SensorArraySpec> specs;
    specs.reserve(11);
    for (std::uint64_t s = 0; s <= 10; ++s) specs.push_back(make_array_spec(s, k, analytes));
    return specs;
}

SimConfig default_config(std::uint64_t seed, int spec_index) {
    if (spec_index < 0 || spec_index > 10) {
        throw std::invalid_argument("default_config: spec_index outside 0..10");
    }
    SimConfig cfg;
    cfg.array_spec = make_array_spec(static_cast<std::uint64_t>(spec_index));
    cfg.analyte_names = {"A", "B", "C", "D"};
    cfg.positive_analyte = "A";
    cfg.seed = seed;
    cfg.name = "synthetic-" + std::to_string(spec_index);
    return cfg;
}

}  // namespace chemtime::simgen
