#include "chemtime/model_io.hpp"

#include <cmath>
#include <fstream>

namespace chemtime {

using nlohmann::json;

json embedding_table_to_json(const EmbeddingTable& table) {
    json entries = json::object();
    for (const auto& [name, vec] : table.entries()) entries[name] = vec;
    return json{{"dim", table.dim()}, {"entries", std::move(entries)}};
}

EmbeddingTable embedding_table_from_json(const json& j) {
    try {
        std::map<std::string, std::vector<double>> entries;
        for (const auto& [name, vec] : j.at("entries").items()) {
            entries[name] = vec.get<std::vector<double>>();
        }
        return EmbeddingTable(j.at("dim").get<int>(), std::move(entries));
    } catch (const json::exception& e) {
        throw DataError(std::string("embedding table file: ") + e.what());
    }
}

void save_embedding_table(const EmbeddingTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << embedding_table_to_json(table).dump(1) << "\n";
}

EmbeddingTable load_embedding_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open embedding table file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("embedding table file '" + path + "': " + e.what());
    }
    return embedding_table_from_json(j);
}

json matrix_to_json(const Matrix& m) {
    return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.a}};
}

Matrix matrix_from_json(const json& j) {
    Matrix m;
    m.rows = j.at("rows").get<int>();
    m.cols = j.at("cols").get<int>();
    m.a = j.at("data").get<std::vector<double>>();
    if (m.rows < 0 || m.cols < 0 ||
        m.a.size() != static_cast<std::size_t>(m.rows) * static_cast<std::size_t>(m.cols)) {
        throw DataError("model file: matrix shape does not match data length");
    }
    return m;
}

json chemtime_model_to_json(const ChemTimeModel& model) {
    json cell{{"input", model.params.cell.input},
              {"hidden", model.params.cell.hidden},
              {"wz", matrix_to_json(model.params.cell.wz)},
              {"uz", matrix_to_json(model.params.cell.uz)},
              {"bz", model.params.cell.bz},
              {"wr", matrix_to_json(model.params.cell.wr)},
              {"ur", matrix_to_json(model.params.cell.ur)},
              {"br", model.params.cell.br},
              {"wc", matrix_to_json(model.params.cell.wc)},
              {"uc", matrix_to_json(model.params.cell.uc)},
              {"bc", model.params.cell.bc}};
    json j{{"kind", "chemtime"},
           {"cell", std::move(cell)},
           {"projection", {{"w", matrix_to_json(model.params.proj.w)}, {"b", model.params.proj.b}}},
           {"loss_kind", to_string(model.loss_kind)},
           {"hinge_margin", model.hinge_margin},
           {"standardizer", {{"mean", model.standardizer.mean}, {"std", model.standardizer.stddev}}},
           {"table", embedding_table_to_json(model.table)},
           {"analyte_names", model.analyte_names},
           {"positive_analyte", model.positive_analyte},
           {"boost_mode", to_string(model.boost_mode)},
           {"boost_fitted", model.boost_fitted}};
    if (model.margin) {
        j["margin"] = {{"w", model.margin->w}, {"b0", model.margin->b0}};
    }
    return j;
}

ChemTimeModel chemtime_model_from_json(const json& j) {
    try {
        if (j.at("kind").get<std::string>() != "chemtime") {
            throw DataError("model file: kind is not 'chemtime'");
        }
        ChemTimeModel m;
        const json& cell = j.at("cell");
        m.params.cell.input = cell.at("input").get<int>();
        m.params.cell.hidden = cell.at("hidden").get<int>();
        m.params.cell.wz = matrix_from_json(cell.at("wz"));
        m.params.cell.uz = matrix_from_json(cell.at("uz"));
        m.params.cell.bz = cell.at("bz").get<std::vector<double>>();
        m.params.cell.wr = matrix_from_json(cell.at("wr"));
        m.params.cell.ur = matrix_from_json(cell.at("ur"));
        m.params.cell.br = cell.at("br").get<std::vector<double>>();
        m.params.cell.wc = matrix_from_json(cell.at("wc"));
        m.params.cell.uc = matrix_from_json(cell.at("uc"));
        m.params.cell.bc = cell.at("bc").get<std::vector<double>>();
        m.params.proj.w = matrix_from_json(j.at("projection").at("w"));
        m.params.proj.b = j.at("projection").at("b").get<std::vector<double>>();
        m.loss_kind = loss_kind_from_string(j.at("loss_kind").get<std::string>());
        m.hinge_margin = j.at("hinge_margin").get<double>();
        m.standardizer.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
        m.standardizer.stddev = j.at("standardizer").at("std").get<std::vector<double>>();
        m.table = embedding_table_from_json(j.at("table"));
        m.analyte_names = j.at("analyte_names").get<std::vector<std::string>>();
        m.positive_analyte = j.at("positive_analyte").get<std::string>();
        m.boost_mode = boost_mode_from_string(j.at("boost_mode").get<std::string>());
        m.boost_fitted = j.at("boost_fitted").get<bool>();
        if (j.contains("margin")) {
            LinearMargin margin;
            margin.w = j.at("margin").at("w").get<std::vector<double>>();
            margin.b0 = j.at("margin").at("b0").get<double>();
            m.margin = std::move(margin);
        }
        bool finite = true;
        m.params.for_each_array([&finite](const std::vector<double>& a) {
            for (double v : a) {
                if (!std::isfinite(v)) finite = false;
            }
        });
        if (!finite) throw DataError("model file: non-finite parameter");
        return m;
    } catch (const json::exception& e) {
        throw DataError(std::string("model file: ") + e.what());
    }
}

}  // namespace chemtime
