#pragma once

#include <map>
#include <string>
#include <vector>

#include "chemtime/types.hpp"

namespace chemtime {

/// Analyte name -> point in the chemistry-informed latent space. The table
/// always carries a "None" entry: the representation of inert carrier gas.
class EmbeddingTable {
public:
    static constexpr const char* kNoneKey = "None";

    EmbeddingTable() = default;
    EmbeddingTable(int dim, std::map<std::string, std::vector<double>> entries);

    int dim() const { return dim_; }
    const std::map<std::string, std::vector<double>>& entries() const { return entries_; }
    const std::vector<double>& at(const std::string& name) const;
    bool contains(const std::string& name) const { return entries_.count(name) != 0; }

    /// d=2 layout: "None" at the origin, analytes evenly spaced on the unit
    /// circle starting at angle 0.
    static EmbeddingTable unit_circle(const std::vector<std::string>& analyte_names);

private:
    int dim_ = 0;
    std::map<std::string, std::vector<double>> entries_;
};

/// Per-step regression targets for one exposure: the "None" vector before
/// flux onset, the analyte's vector from onset onward.
struct TargetSequence {
    std::vector<std::vector<double>> targets;  // T x d
    std::vector<std::string> names;            // per-step entry name, for rank losses

    int length() const { return static_cast<int>(targets.size()); }
};

TargetSequence build_target_sequence(const MTSample& sample, const EmbeddingTable& table,
                                     const std::vector<std::string>& analyte_names);

}  // namespace chemtime
