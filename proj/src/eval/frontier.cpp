#include "chemtime/eval/frontier.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

namespace chemtime::eval {

std::vector<bool> pareto_frontier(const std::vector<std::pair<double, double>>& points) {
    if (points.empty()) throw std::invalid_argument("pareto_frontier: no points");
    const std::size_t n = points.size();
    std::vector<bool> on(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const bool no_worse = points[j].first <= points[i].first &&
                                  points[j].second >= points[i].second;
            const bool strictly_better = points[j].first < points[i].first ||
                                         points[j].second > points[i].second;
            if (no_worse && strictly_better) {
                on[i] = false;
                break;
            }
        }
    }
    return on;
}

std::vector<FrontierPoint> frontier_from_records(const std::vector<BenchmarkRecord>& records) {
    std::map<std::string, std::pair<double, double>> sums;  // model -> (f1 sum, time sum)
    std::map<std::string, int> counts;
    for (const auto& r : records) {
        if (r.status != "ok") continue;
        sums[r.model].first += r.f1;
        sums[r.model].second += r.infer_seconds;
        ++counts[r.model];
    }
    if (sums.empty()) throw std::invalid_argument("frontier_from_records: no usable records");

    std::vector<FrontierPoint> out;
    std::vector<std::pair<double, double>> coords;
    for (const auto& [model, sum] : sums) {
        FrontierPoint p;
        p.model = model;
        p.f1 = sum.first / counts[model];
        p.infer_seconds = sum.second / counts[model];
        coords.emplace_back(p.infer_seconds, p.f1);
        out.push_back(std::move(p));
    }
    const std::vector<bool> flags = pareto_frontier(coords);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].on_frontier = flags[i];
    return out;
}

void write_frontier_csv(const std::vector<FrontierPoint>& points, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "model,infer_seconds,f1,on_frontier\n";
    out.precision(17);
    for (const auto& p : points) {
        out << p.model << ',' << p.infer_seconds << ',' << p.f1 << ','
            << (p.on_frontier ? 1 : 0) << '\n';
    }
    if (!out) throw DataError("write failed for '" + path + "'");
}

}  // namespace chemtime::eval
