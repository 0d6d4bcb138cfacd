#include "pentabell/json_io.hpp"

namespace pentabell {

std::string signs_str(const std::array<int, 3>& signs) {
  std::string s;
  for (int v : signs) s += v > 0 ? '+' : '-';
  return s;
}

std::string signs_str(const std::array<int, 4>& signs) {
  std::string s;
  for (int v : signs) s += v > 0 ? '+' : '-';
  return s;
}

ordered_json rays_json(const Atlas& atlas) {
  ordered_json rays = ordered_json::array();
  for (const Ray& r : atlas.rays()) {
    rays.push_back({{"id", r.id},
                    {"edge", to_string(r.edge)},
                    {"signs", r.signs},
                    {"amplitudes", r.amplitudes},
                    {"norm_sq", r.norm_sq}});
  }
  return ordered_json{{"count", atlas.rays().size()}, {"rays", rays}};
}

ordered_json bases_json(const Atlas& atlas, const std::vector<RayBasis>& bases) {
  ordered_json out = ordered_json::array();
  for (size_t i = 0; i < bases.size(); ++i) {
    const RayBasis& b = bases[i];
    ordered_json entry{{"id", i},
                       {"kind", b.is_pure() ? "pure" : "hybrid"},
                       {"ray_ids", b.ray_ids}};
    if (b.is_pure()) {
      entry["edge"] = to_string(b.plus_edge);
    } else {
      entry["pivot"] = to_string(b.pivot);
      entry["plus_edge"] = to_string(b.plus_edge);
      entry["minus_edge"] = to_string(b.minus_edge);
    }
    out.push_back(entry);
  }
  return out;
}

ordered_json table_json(const MeasurementTable& table) {
  ordered_json rows = ordered_json::array();
  for (const TableRow& row : table.rows) {
    ordered_json cells = ordered_json::array();
    for (const OutcomeCell& c : row.cells) {
      cells.push_back({{"signs", signs_str(c.signs)},
                       {"ray_id", c.ray_id},
                       {"label", c.label}});
    }
    rows.push_back({{"edges", row.measurement.edge_pair()},
                    {"symbol", row.measurement.symbol()},
                    {"cells", cells}});
  }
  return ordered_json{{"rows", rows}, {"label_count", table.label_count}};
}

ordered_json validation_json(const ValidationReport& report) {
  ordered_json checks = ordered_json::array();
  for (const ValidationCheck& c : report.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return ordered_json{{"all_passed", report.all_passed()}, {"checks", checks}};
}

namespace {

ordered_json outcome_json(const HybridOutcome& outcome, int row,
                          const MeasurementTable& table) {
  return ordered_json{
      {"row", row + 1},
      {"symbol", table.rows[static_cast<size_t>(row)].measurement.symbol()},
      {"signs", signs_str(outcome.signs)},
      {"cell", outcome.cell_index},
      {"ray_id", outcome.ray_id},
      {"label", outcome.label},
      {"probs",
       {outcome.probabilities[0].str(), outcome.probabilities[1].str(),
        outcome.probabilities[2].str()}}};
}

}  // namespace

ordered_json run_record_json(const RunRecord& record, const MeasurementTable& table) {
  return ordered_json{{"run", record.run_index},
                      {"alice", outcome_json(record.alice, record.alice_row, table)},
                      {"bob", outcome_json(record.bob, record.bob_row, table)},
                      {"twin_state_verified", record.twin_state_verified}};
}

ordered_json correlation_json(const CorrelationReport& report) {
  return ordered_json{
      {"total_runs", report.total_runs},
      {"same_choice_runs", report.same_choice_runs},
      {"same_choice_mismatches", report.same_choice_mismatches},
      {"twin_state_audits", report.twin_state_audits},
      {"common_label_checks", report.common_label_checks},
      {"common_label_violations", report.common_label_violations},
      {"alice_cell_counts", report.alice_cell_counts},
      {"bob_cell_counts", report.bob_cell_counts},
      {"max_cell_frequency_deviation", report.max_cell_frequency_deviation}};
}

ordered_json key_meta_json(const KeyMaterial& key, const KeyReport& report) {
  return ordered_json{{"sift_count", key.sifted_runs.size()},
                      {"sift_indices", key.sifted_runs},
                      {"revealed_positions", report.revealed_positions},
                      {"revealed_count", report.revealed_count},
                      {"mismatches", report.mismatches},
                      {"key_length", report.final_key.size()}};
}

}  // namespace pentabell
