#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "chemtime/types.hpp"

namespace chemtime::baselines {

/// Common surface the evaluation harness drives. Implementations are fit on
/// a training Dataset and predict one sample at a time; models able to
/// classify prefixes without refitting advertise supports_prefix().
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual std::string kind() const = 0;
    virtual void fit(const Dataset& train) = 0;
    virtual BinaryLabel predict(const MTSample& s) const = 0;

    virtual bool supports_prefix() const { return false; }
    virtual BinaryLabel predict_prefix(const MTSample& /*s*/, int /*len*/) const {
        throw CapabilityError(kind() + ": prefix inference not supported");
    }

    virtual nlohmann::json to_json() const = 0;
};

/// Recipe for instantiating a classifier: registry kind plus parameters.
struct ModelSpec {
    std::string name;               // row label in result tables
    std::string kind;               // registry key
    nlohmann::json params = nlohmann::json::object();

    static ModelSpec of(const std::string& kind) {
        return ModelSpec{kind, kind, nlohmann::json::object()};
    }
};

/// Kinds accepted by make_classifier. "oracle" and "coinflip" are evaluation
/// probes: the former reads the true label, the latter guesses at random.
std::vector<std::string> known_model_kinds();

std::unique_ptr<Classifier> make_classifier(const ModelSpec& spec, std::uint64_t seed);

std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j);
void save_classifier(const Classifier& c, const std::string& path);
std::unique_ptr<Classifier> load_classifier(const std::string& path);

}  // namespace chemtime::baselines
