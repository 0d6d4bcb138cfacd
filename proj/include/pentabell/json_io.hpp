#pragma once

#include <json.hpp>

#include "pentabell/bell.hpp"
#include "pentabell/bks.hpp"
#include "pentabell/ray_atlas.hpp"

namespace pentabell {

// Stable-ordered JSON views of the core structures, matching the documented
// file formats (rays.json, table.json, runs.jsonl, key_meta.json).
using ordered_json = nlohmann::ordered_json;

ordered_json rays_json(const Atlas& atlas);
ordered_json bases_json(const Atlas& atlas, const std::vector<RayBasis>& bases);
ordered_json table_json(const MeasurementTable& table);
ordered_json validation_json(const ValidationReport& report);
ordered_json run_record_json(const RunRecord& record, const MeasurementTable& table);
ordered_json correlation_json(const CorrelationReport& report);
ordered_json key_meta_json(const KeyMaterial& key, const KeyReport& report);

std::string signs_str(const std::array<int, 3>& signs);
std::string signs_str(const std::array<int, 4>& signs);

}  // namespace pentabell
