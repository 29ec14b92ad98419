#pragma once

#include <map>
#include <string>
#include <vector>

#include "chemtime/eval/benchmark.hpp"

namespace chemtime::eval {

/// Mean rank per model over every (dataset, split) cell: F1 descending, ties
/// receive the mean of the tied positions. Every model must have an "ok"
/// record in every cell; a hole raises an error naming it.
std::map<std::string, double> average_ranks(const std::vector<BenchmarkRecord>& records);

/// Drops models with any failed or missing cell, mirroring the treatment of
/// non-converging models: they stay in timing tables but leave the ranking.
std::vector<BenchmarkRecord> filter_converged(const std::vector<BenchmarkRecord>& records);

}  // namespace chemtime::eval
