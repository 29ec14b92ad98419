#include "chemtime/dataset_io.hpp"

#include <fstream>

namespace chemtime {

using nlohmann::json;

json dataset_to_json(const Dataset& ds) {
    json samples = json::array();
    for (const auto& s : ds.samples()) {
        samples.push_back({{"id", s.id()},
                           {"onset_index", s.onset_index()},
                           {"concentrations", s.concentrations()},
                           {"channels", s.channels()}});
    }
    return json{{"name", ds.name()},
                {"sample_rate_hz", ds.sample_rate()},
                {"analytes", ds.analyte_names()},
                {"positive_analyte", ds.positive_analyte()},
                {"samples", std::move(samples)}};
}

Dataset dataset_from_json(const json& j) {
    try {
        const double rate = j.at("sample_rate_hz").get<double>();
        std::vector<MTSample> samples;
        for (const auto& sj : j.at("samples")) {
            samples.emplace_back(sj.at("id").get<std::string>(),
                                 sj.at("channels").get<std::vector<std::vector<double>>>(),
                                 rate, sj.at("onset_index").get<int>(),
                                 sj.at("concentrations").get<std::vector<double>>());
        }
        return Dataset(j.at("name").get<std::string>(),
                       j.at("analytes").get<std::vector<std::string>>(), std::move(samples),
                       j.at("positive_analyte").get<std::string>());
    } catch (const json::exception& e) {
        throw DataError(std::string("dataset file: ") + e.what());
    }
}

void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << dataset_to_json(ds).dump(1) << "\n";
    if (!out) throw DataError("write failed for '" + path + "'");
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("dataset file '" + path + "': " + e.what());
    }
    return dataset_from_json(j);
}

}  // namespace chemtime
