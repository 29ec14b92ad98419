#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chemtime/baselines/classifier.hpp"
#include "chemtime/eval/splits.hpp"
#include "chemtime/types.hpp"

namespace chemtime::eval {

/// Matching train/test corpora for one sensor configuration.
struct DatasetPair {
    Dataset train;
    Dataset test;

    const std::string& name() const { return train.name(); }
};

struct BenchmarkRecord {
    std::string model;
    std::string dataset;
    int split_index = 0;
    double f1 = 0.0;
    double train_seconds = 0.0;
    double infer_seconds = 0.0;  // wall clock over the whole test set
    std::string status = "ok";   // "ok" or "failed"
};

/// Fits every (model, dataset, split) cell on the split's train ids and
/// scores F1 on the dataset's holdout test corpus. Per-cell seeds derive from
/// `seed`, the model name, dataset name and split index, so results do not
/// depend on scheduling. Fit failures yield status="failed" records. With
/// jobs > 1 the scoring pass runs in parallel and timings are re-measured in
/// a serial phase afterwards.
std::vector<BenchmarkRecord> run_benchmark(const std::vector<baselines::ModelSpec>& models,
                                           const std::vector<DatasetPair>& datasets,
                                           const std::vector<std::vector<SplitSpec>>& splits,
                                           std::uint64_t seed, int jobs = 1);

/// Header: model,dataset,split,f1,train_seconds,infer_seconds,status
void write_benchmark_csv(const std::vector<BenchmarkRecord>& records, const std::string& path);
std::vector<BenchmarkRecord> read_benchmark_csv(const std::string& path);

}  // namespace chemtime::eval
