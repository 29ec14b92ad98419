#include "chemtime/eval/benchmark.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "chemtime/metrics.hpp"
#include "chemtime/rng.hpp"

namespace chemtime::eval {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Cell {
    int model = 0;
    int dataset = 0;
    int split = 0;
};

std::uint64_t cell_seed(std::uint64_t base, const std::string& model, const std::string& dataset,
                        int split) {
    return mix_seed(derive_seed(derive_seed(base, model), dataset) ^
                    static_cast<std::uint64_t>(split));
}

/// Fit + score one cell; timings optional.
BenchmarkRecord run_cell(const baselines::ModelSpec& spec, const DatasetPair& pair,
                         const SplitSpec& split, std::uint64_t base_seed, bool measure_time) {
    BenchmarkRecord rec;
    rec.model = spec.name;
    rec.dataset = pair.name();
    rec.split_index = split.split_index;
    try {
        auto model = baselines::make_classifier(
            spec, cell_seed(base_seed, spec.name, pair.name(), split.split_index));
        const Dataset train = pair.train.subset(split.train_ids);

        const auto t_fit = Clock::now();
        model->fit(train);
        if (measure_time) rec.train_seconds = elapsed(t_fit);

        std::vector<BinaryLabel> preds;
        preds.reserve(pair.test.size());
        const auto t_inf = Clock::now();
        for (const auto& s : pair.test.samples()) preds.push_back(model->predict(s));
        if (measure_time) rec.infer_seconds = elapsed(t_inf);

        rec.f1 = f1_score(preds, pair.test.labels());
    } catch (const std::exception&) {
        rec.status = "failed";
        rec.f1 = 0.0;
    }
    return rec;
}

}  // namespace

std::vector<BenchmarkRecord> run_benchmark(const std::vector<baselines::ModelSpec>& models,
                                           const std::vector<DatasetPair>& datasets,
                                           const std::vector<std::vector<SplitSpec>>& splits,
                                           std::uint64_t seed, int jobs) {
    if (datasets.size() != splits.size()) {
        throw std::invalid_argument("run_benchmark: one split list per dataset required");
    }
    std::vector<Cell> cells;
    for (int m = 0; m < static_cast<int>(models.size()); ++m) {
        for (int d = 0; d < static_cast<int>(datasets.size()); ++d) {
            for (int s = 0; s < static_cast<int>(splits[d].size()); ++s) {
                cells.push_back({m, d, s});
            }
        }
    }
    std::vector<BenchmarkRecord> records(cells.size());

    const bool parallel = jobs > 1 && cells.size() > 1;
    if (parallel) {
        // Scoring pass: any schedule gives the same F1s (seeds are per-cell).
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
                const Cell& c = cells[i];
                records[i] = run_cell(models[c.model], datasets[c.dataset],
                                      splits[c.dataset][c.split], seed, false);
            }
        };
        std::vector<std::thread> pool;
        const int n_threads = std::min<int>(jobs, static_cast<int>(cells.size()));
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        // Timing pass: strictly serial so wall-clock columns are uncontended.
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const Cell& c = cells[i];
            const BenchmarkRecord timed = run_cell(models[c.model], datasets[c.dataset],
                                                   splits[c.dataset][c.split], seed, true);
            records[i].train_seconds = timed.train_seconds;
            records[i].infer_seconds = timed.infer_seconds;
        }
    } else {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const Cell& c = cells[i];
            records[i] = run_cell(models[c.model], datasets[c.dataset],
                                  splits[c.dataset][c.split], seed, true);
        }
    }
    return records;
}

void write_benchmark_csv(const std::vector<BenchmarkRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "model,dataset,split,f1,train_seconds,infer_seconds,status\n";
    out.precision(17);
    for (const auto& r : records) {
        out << r.model << ',' << r.dataset << ',' << r.split_index << ',' << r.f1 << ','
            << r.train_seconds << ',' << r.infer_seconds << ',' << r.status << '\n';
    }
    if (!out) throw DataError("write failed for '" + path + "'");
}

std::vector<BenchmarkRecord> read_benchmark_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open results file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError("results file '" + path + "' is empty");
    if (line != "model,dataset,split,f1,train_seconds,infer_seconds,status") {
        throw DataError("results file '" + path + "': unexpected header");
    }
    std::vector<BenchmarkRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        BenchmarkRecord r;
        std::string field;
        try {
            std::getline(ss, r.model, ',');
            std::getline(ss, r.dataset, ',');
            std::getline(ss, field, ',');
            r.split_index = std::stoi(field);
            std::getline(ss, field, ',');
            r.f1 = std::stod(field);
            std::getline(ss, field, ',');
            r.train_seconds = std::stod(field);
            std::getline(ss, field, ',');
            r.infer_seconds = std::stod(field);
            std::getline(ss, r.status, ',');
        } catch (const std::exception&) {
            throw DataError("results file '" + path + "': bad row at line " +
                            std::to_string(line_no));
        }
        if (r.status.empty()) {
            throw DataError("results file '" + path + "': missing status at line " +
                            std::to_string(line_no));
        }
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace chemtime::eval
