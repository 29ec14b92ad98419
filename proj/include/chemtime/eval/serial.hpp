#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "chemtime/baselines/classifier.hpp"
#include "chemtime/types.hpp"

namespace chemtime::eval {

/// A classifier viewed through prefix lengths: the unit the serial test runs
/// against. Implementations must answer for any l in [1, T].
class PrefixView {
public:
    virtual ~PrefixView() = default;
    virtual BinaryLabel classify_prefix(const MTSample& s, int len) const = 0;
};

/// True iff for every test sample the label at prefix l0 equals the label at
/// every longer prefix up to the common length.
bool serial_prefix(const PrefixView& view, const Dataset& test, int l0);

/// Wraps a fitted prefix-capable classifier; throws CapabilityError otherwise.
class NativePrefixView : public PrefixView {
public:
    explicit NativePrefixView(const baselines::Classifier& clf);
    BinaryLabel classify_prefix(const MTSample& s, int len) const override;

private:
    const baselines::Classifier& clf_;
};

/// Evaluates a fixed-window model family across prefixes by refitting one
/// instance per window length on truncated training data (instances cached).
class RetrainPrefixView : public PrefixView {
public:
    RetrainPrefixView(baselines::ModelSpec spec, Dataset train, std::uint64_t seed);
    BinaryLabel classify_prefix(const MTSample& s, int len) const override;

private:
    baselines::ModelSpec spec_;
    Dataset train_;
    std::uint64_t seed_;
    mutable std::map<int, std::unique_ptr<baselines::Classifier>> by_window_;
};

}  // namespace chemtime::eval
