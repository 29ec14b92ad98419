#pragma once

#include <string>

#include <json.hpp>

#include "chemtime/model.hpp"

namespace chemtime {

nlohmann::json embedding_table_to_json(const EmbeddingTable& table);
EmbeddingTable embedding_table_from_json(const nlohmann::json& j);
void save_embedding_table(const EmbeddingTable& table, const std::string& path);
EmbeddingTable load_embedding_table(const std::string& path);

/// Tagged container {"kind": "chemtime", ...}. Round-trips every parameter
/// bit-exactly.
nlohmann::json chemtime_model_to_json(const ChemTimeModel& model);
ChemTimeModel chemtime_model_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace chemtime
