#pragma once

#include <string>

#include <json.hpp>

#include "chemtime/types.hpp"

namespace chemtime {

nlohmann::json dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const nlohmann::json& j);

void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace chemtime
