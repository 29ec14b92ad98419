#pragma once

#include <string>
#include <vector>

#include "chemtime/eval/benchmark.hpp"

namespace chemtime::eval {

struct FrontierPoint {
    std::string model;
    double infer_seconds = 0.0;
    double f1 = 0.0;
    bool on_frontier = false;
};

/// Flags each point that no other point dominates. q dominates p when
/// q is at most as slow and at least as accurate, with one of the two strict;
/// exact duplicates are both kept.
std::vector<bool> pareto_frontier(const std::vector<std::pair<double, double>>& points);

/// Mean F1 / mean inference seconds per model over its "ok" records, flagged.
std::vector<FrontierPoint> frontier_from_records(const std::vector<BenchmarkRecord>& records);

/// model,infer_seconds,f1,on_frontier
void write_frontier_csv(const std::vector<FrontierPoint>& points, const std::string& path);

}  // namespace chemtime::eval
