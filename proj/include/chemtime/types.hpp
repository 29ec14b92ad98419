#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chemtime {

/// Thrown when a data or model file is structurally valid but violates a
/// domain invariant (shape mismatch, bad onset, non-finite parameter, ...).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when model fitting cannot proceed (divergence, degenerate labels).
struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an operation is asked of a model that cannot support it,
/// e.g. prefix inference on a fixed-window classifier.
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BinaryLabel { negative = 0, positive = 1 };

inline const char* to_string(BinaryLabel l) {
    return l == BinaryLabel::positive ? "positive" : "negative";
}

/// One exposure recorded by a k-sensor array: a k x T resistance matrix plus
/// the per-analyte concentration vector and the index of flux onset.
/// onset_index == T means the flux never starts within the recorded window
/// (this arises when a prefix cuts off before onset).
class MTSample {
public:
    MTSample() = default;
    MTSample(std::string id, std::vector<std::vector<double>> channels,
             double sample_rate, int onset_index, std::vector<double> concentrations);

    const std::string& id() const { return id_; }
    const std::vector<std::vector<double>>& channels() const { return channels_; }
    double sample_rate() const { return sample_rate_; }
    int onset_index() const { return onset_index_; }
    const std::vector<double>& concentrations() const { return concentrations_; }

    int channel_count() const { return static_cast<int>(channels_.size()); }
    int length() const { return channels_.empty() ? 0 : static_cast<int>(channels_[0].size()); }

    /// True when every concentration entry is zero (nitrogen-only exposure).
    bool is_blank() const;

    /// Index of the single analyte with nonzero concentration.
    /// Throws DataError for blanks and for multi-analyte exposures.
    int single_analyte_index() const;

private:
    std::string id_;
    std::vector<std::vector<double>> channels_;  // row per channel, equal lengths
    double sample_rate_ = 0.0;
    int onset_index_ = 0;
    std::vector<double> concentrations_;
};

/// A named corpus of exposures sharing one sensor array, one analyte roster
/// and one target analyte for the binary discrimination task.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::string name, std::vector<std::string> analyte_names,
            std::vector<MTSample> samples, std::string positive_analyte);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& analyte_names() const { return analyte_names_; }
    const std::vector<MTSample>& samples() const { return samples_; }
    const std::string& positive_analyte() const { return positive_analyte_; }

    int analyte_count() const { return static_cast<int>(analyte_names_.size()); }
    int size() const { return static_cast<int>(samples_.size()); }
    int channel_count() const { return samples_.empty() ? 0 : samples_[0].channel_count(); }
    double sample_rate() const { return samples_.empty() ? 0.0 : samples_[0].sample_rate(); }
    int positive_analyte_index() const;

    const MTSample& by_id(const std::string& id) const;

    /// Positive iff the positive analyte's concentration is strictly > 0.
    BinaryLabel label_of(const MTSample& s) const;
    std::vector<BinaryLabel> labels() const;

    /// Subset by sample id, preserving metadata. Unknown ids throw.
    Dataset subset(const std::vector<std::string>& ids) const;

private:
    std::string name_;
    std::vector<std::string> analyte_names_;
    std::vector<MTSample> samples_;
    std::string positive_analyte_;
};

/// Outcome of classifying one (possibly prefix-truncated) sample.
struct PredictionResult {
    BinaryLabel label = BinaryLabel::negative;
    double decision_distance = 0.0;  // signed margin, > 0 iff positive
    int prefix_len = 0;
    double infer_seconds = 0.0;
};

/// First l timesteps of every channel; onset clamped to min(onset, l).
MTSample prefix(const MTSample& x, int l);

}  // namespace chemtime
