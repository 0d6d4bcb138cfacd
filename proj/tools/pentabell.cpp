#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "pentabell/bell.hpp"
#include "pentabell/bks.hpp"
#include "pentabell/json_io.hpp"
#include "pentabell/pentagram.hpp"
#include "pentabell/ray_atlas.hpp"

namespace pb = pentabell;
namespace fs = std::filesystem;
using pb::ordered_json;

namespace {

struct GlobalOpts {
  bool json = false;
  std::string out_dir;
};

void emit(const GlobalOpts& opts, const ordered_json& doc,
          const std::string& human_text) {
  if (opts.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << human_text;
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

// Accepts a 1-based row index, an "Ex-Ey+"/"Ex-Ey-" shorthand ('+': the
// first edge takes the +1 branch), or an explicit "pivot|Ex;Ey" descriptor;
// resolves it against the active scheme so labels keep their table meaning.
int resolve_row(const pb::MeasurementTable& table, const std::string& ref) {
  const int n = static_cast<int>(table.rows.size());
  try {
    size_t used = 0;
    const int idx = std::stoi(ref, &used);
    if (used == ref.size()) {
      if (idx < 1 || idx > n)
        throw std::invalid_argument("row index " + ref + " out of range 1.." +
                                    std::to_string(n));
      return idx - 1;
    }
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }

  pb::EdgeId plus{}, minus{};
  std::optional<pb::ObsName> pivot;
  if (ref.find('|') != std::string::npos) {
    const size_t bar = ref.find('|');
    const size_t semi = ref.find(';', bar);
    if (semi == std::string::npos)
      throw std::invalid_argument("expected 'pivot|Ex;Ey' in '" + ref + "'");
    const auto name = pb::obs_name_from(ref.substr(0, bar));
    const auto e1 = pb::edge_id_from(ref.substr(bar + 1, semi - bar - 1));
    const auto e2 = pb::edge_id_from(ref.substr(semi + 1));
    if (!name || !e1 || !e2)
      throw std::invalid_argument("cannot parse row reference '" + ref + "'");
    pivot = *name;
    plus = *e1;
    minus = *e2;
  } else {
    const size_t dash = ref.find('-');
    if (dash == std::string::npos || ref.size() < 6)
      throw std::invalid_argument("cannot parse row reference '" + ref + "'");
    const char orientation = ref.back();
    if (orientation != '+' && orientation != '-')
      throw std::invalid_argument("edge-pair row reference needs a trailing '+' or '-' "
                                  "to name the +1-branch edge: '" + ref + "'");
    const auto e1 = pb::edge_id_from(ref.substr(0, dash));
    const auto e2 = pb::edge_id_from(ref.substr(dash + 1, ref.size() - dash - 2));
    if (!e1 || !e2)
      throw std::invalid_argument("cannot parse row reference '" + ref + "'");
    plus = orientation == '+' ? *e1 : *e2;
    minus = orientation == '+' ? *e2 : *e1;
  }

  for (int i = 0; i < n; ++i) {
    const pb::HybridMeasurement& m = table.rows[static_cast<size_t>(i)].measurement;
    if (m.plus_edge == plus && m.minus_edge == minus &&
        (!pivot || m.pivot == *pivot))
      return i;
  }
  throw std::invalid_argument("no scheme row matches '" + ref + "'");
}

std::string grid_text(const pb::MeasurementTable& table) {
  std::string out;
  const auto grid = table.label_grid();
  for (size_t r = 0; r < grid.size(); ++r) {
    out += table.rows[r].measurement.edge_pair() + " " +
           table.rows[r].measurement.symbol() + " :";
    for (int label : grid[r]) out += " " + std::to_string(label);
    out += "\n";
  }
  return out;
}

int cmd_verify_pentagram(const GlobalOpts& opts, bool flip_e5) {
  pb::Pentagram p = pb::build_pentagram();
  if (flip_e5) p.edges[4].expected_product = +1;
  const pb::ValidationReport report = pb::validate(p);

  std::string text;
  for (const auto& c : report.checks)
    text += std::string(c.passed ? "pass" : "FAIL") + "  " + c.name + "  (" +
            c.detail + ")\n";
  text += std::string("edge products: ");
  for (const auto& e : p.edges)
    text += pb::to_string(e.id) + (e.expected_product == 1 ? "=+1 " : "=-1 ");
  text += report.all_passed() ? "\nall checks passed\n" : "\nvalidation FAILED\n";

  ordered_json doc = pb::validation_json(report);
  emit(opts, doc, text);
  return report.all_passed() ? 0 : 1;
}

int cmd_atlas(const GlobalOpts& opts) {
  const pb::Atlas atlas = pb::build_atlas(pb::build_pentagram());
  const ordered_json doc = pb::rays_json(atlas);
  if (!opts.out_dir.empty()) write_file(opts.out_dir, "rays.json", doc.dump(2) + "\n");

  std::string text = "atlas: " + std::to_string(atlas.rays().size()) +
                     " rays (8 per edge), all components in {0,+-1}\n";
  for (const pb::Ray& r : atlas.rays()) {
    text += std::to_string(r.id) + " " + pb::to_string(r.edge) + " " +
            pb::signs_str(r.signs) + " [";
    for (int i = 0; i < 8; ++i)
      text += (i ? "," : "") + std::to_string(r.amplitudes[static_cast<size_t>(i)]);
    text += "] norm_sq=" + std::to_string(r.norm_sq) + "\n";
  }
  emit(opts, doc, text);
  return 0;
}

int cmd_bases(const GlobalOpts& opts, const std::string& kind) {
  const pb::Atlas atlas = pb::build_atlas(pb::build_pentagram());
  const auto all = pb::enumerate_bases(atlas);
  std::vector<pb::RayBasis> bases;
  for (const auto& b : all) {
    if (kind == "pure" && !b.is_pure()) continue;
    if (kind == "hybrid" && b.is_pure()) continue;
    bases.push_back(b);
  }

  std::array<int, 40> incidence{};
  for (const auto& b : all)
    for (int id : b.ray_ids) ++incidence[static_cast<size_t>(id)];
  const bool uniform_incidence =
      std::all_of(incidence.begin(), incidence.end(), [](int v) { return v == 5; });

  ordered_json doc{{"count", bases.size()},
                   {"total", all.size()},
                   {"each_ray_in_bases", uniform_incidence ? 5 : -1},
                   {"bases", pb::bases_json(atlas, bases)}};
  std::string text = "bases: " + std::to_string(bases.size());
  if (kind != "all") text += " (" + kind + ")";
  text += " of " + std::to_string(all.size()) +
          "; exhaustive search agrees; each ray lies in " +
          (uniform_incidence ? std::string("exactly 5") : std::string("VARYING")) +
          " bases\n";
  for (const auto& b : bases) {
    text += b.is_pure() ? ("pure   " + pb::to_string(b.plus_edge))
                        : ("hybrid pivot=" + pb::to_string(b.pivot) + " +" +
                           pb::to_string(b.plus_edge) + " -" + pb::to_string(b.minus_edge));
    text += " rays:";
    for (int id : b.ray_ids) text += " " + std::to_string(id);
    text += "\n";
  }
  emit(opts, doc, text);
  return uniform_incidence ? 0 : 1;
}

int cmd_table(const GlobalOpts& opts, const std::string& scheme_path) {
  const pb::Pentagram p = pb::build_pentagram();
  const pb::Atlas atlas = pb::build_atlas(p);
  const auto scheme = pb::load_scheme_file(p, scheme_path);
  const pb::MeasurementTable table = pb::generate_table(atlas, scheme);
  const ordered_json doc = pb::table_json(table);
  if (!opts.out_dir.empty()) write_file(opts.out_dir, "table.json", doc.dump(2) + "\n");
  emit(opts, doc, grid_text(table));
  return 0;
}

int cmd_verify_fig2(const GlobalOpts& opts) {
  const pb::Pentagram p = pb::build_pentagram();
  const pb::Atlas atlas = pb::build_atlas(p);
  const pb::MeasurementTable table = pb::generate_table(atlas, pb::fig2_scheme(p));
  const auto grid = table.label_grid();
  const auto& ref = pb::fig2_reference_grid();

  int matches = 0;
  int first_bad_row = -1, first_bad_col = -1;
  for (int r = 0; r < 11; ++r)
    for (int c = 0; c < 8; ++c) {
      if (grid[static_cast<size_t>(r)][static_cast<size_t>(c)] ==
          ref[static_cast<size_t>(r)][static_cast<size_t>(c)]) {
        ++matches;
      } else if (first_bad_row < 0) {
        first_bad_row = r;
        first_bad_col = c;
      }
    }
  const bool ok = matches == 88;

  // Distinct rays the scheme reaches, versus the whole atlas.
  std::set<int> covered;
  for (const auto& row : table.rows)
    for (const auto& cell : row.cells) covered.insert(cell.ray_id);
  std::vector<int> missed;
  for (const pb::Ray& r : atlas.rays())
    if (!covered.count(r.id)) missed.push_back(r.id);

  ordered_json doc{{"cells_matched", matches},
                   {"cells_total", 88},
                   {"passed", ok},
                   {"label_count", table.label_count},
                   {"distinct_rays_covered", covered.size()},
                   {"rays_never_covered", missed}};
  std::string text = std::to_string(matches) + "/88 cells match the reference grid\n";
  if (!ok)
    text += "first mismatch at row " + std::to_string(first_bad_row + 1) + ", column " +
            std::to_string(first_bad_col + 1) + "\n";
  text += "labels: " + std::to_string(table.label_count) + ", distinct rays covered: " +
          std::to_string(covered.size()) + " of 40\n";
  emit(opts, doc, text);
  return ok ? 0 : 1;
}

int cmd_prove_bks(const GlobalOpts& opts, const std::string& scheme_path) {
  const pb::Pentagram p = pb::build_pentagram();
  const pb::Atlas atlas = pb::build_atlas(p);
  const auto scheme = scheme_path.empty() ? pb::fig2_scheme(p)
                                          : pb::load_scheme_file(p, scheme_path);
  const pb::MeasurementTable table = pb::generate_table(atlas, scheme);

  pb::ParityVerdict verdict = pb::parity_check(table);
  const pb::AssignmentSearchResult search = pb::search_assignment(table);
  if (!verdict.is_contradiction) verdict.witness = search.witness;

  const bool agree = verdict.is_contradiction == search.exhausted;

  ordered_json hist = ordered_json::object();
  for (const auto& [mult, count] : verdict.multiplicity_histogram)
    hist[std::to_string(mult)] = count;
  ordered_json doc{{"rows", verdict.row_count},
                   {"is_contradiction", verdict.is_contradiction},
                   {"multiplicity_histogram", hist},
                   {"search_exhausted", search.exhausted},
                   {"search_nodes", search.nodes_visited},
                   {"oracles_agree", agree}};
  if (verdict.witness) {
    ordered_json w = ordered_json::object();
    for (const auto& [label, value] : *verdict.witness)
      w[std::to_string(label)] = value;
    doc["witness"] = w;
  }

  std::string text = "rows: " + std::to_string(verdict.row_count) + "\n";
  text += "parity verdict: " +
          std::string(verdict.is_contradiction ? "contradiction (odd rows, all even multiplicities)"
                                               : "no parity contradiction") +
          "\nmultiplicity histogram:";
  for (const auto& [mult, count] : verdict.multiplicity_histogram)
    text += " " + std::to_string(count) + " labels x" + std::to_string(mult);
  text += "\nbacktracking search: " +
          std::string(search.exhausted ? "exhausted, no assignment exists"
                                       : "satisfying assignment found") +
          " (" + std::to_string(search.nodes_visited) + " nodes)\n";
  text += agree ? "oracles agree\n" : "ORACLE DISAGREEMENT (defect)\n";
  emit(opts, doc, text);
  return agree ? 0 : 1;
}

int cmd_mermin(const GlobalOpts& opts) {
  const pb::Pentagram p = pb::build_pentagram();
  const pb::ColoringSearchResult result = pb::mermin_coloring_search(p);
  ordered_json doc{{"assignments_tried", result.assignments_tried},
                   {"satisfying_all_edges", result.satisfying_count},
                   {"satisfying_first_four_edges", result.satisfying_count_first_four},
                   {"exhausted", result.exhausted},
                   {"note", result.algebraic_note}};
  std::string text = "value assignments satisfying all five edge constraints: " +
                     std::to_string(result.satisfying_count) + "/" +
                     std::to_string(result.assignments_tried) + "\n";
  text += "satisfying E1..E4 only: " +
          std::to_string(result.satisfying_count_first_four) + "\n";
  text += result.algebraic_note + "\n";
  emit(opts, doc, text);
  return result.exhausted ? 0 : 1;
}

int cmd_enumerate(const GlobalOpts& opts, int size, bool dump) {
  const pb::Pentagram p = pb::build_pentagram();
  const pb::Atlas atlas = pb::build_atlas(p);
  const auto bases = pb::enumerate_bases(atlas);
  const pb::SchemeEnumeration result = pb::enumerate_parity_schemes(bases, size);

  bool fig2_member = false;
  if (size == 11) {
    std::set<int> fig2_ids;
    for (const auto& m : pb::fig2_scheme(p))
      fig2_ids.insert(pb::basis_index_of(bases, atlas, m));
    std::vector<int> sorted(fig2_ids.begin(), fig2_ids.end());
    for (const auto& s : result.schemes) fig2_member = fig2_member || s == sorted;
  }

  ordered_json doc{{"size", size},
                   {"definition",
                    "subsets of distinct bases whose combined ray coverage is even "
                    "everywhere"},
                   {"subsets_scanned", result.subsets_scanned},
                   {"count", result.schemes.size()}};
  if (size == 11) doc["reference_scheme_is_member"] = fig2_member;
  if (dump) doc["schemes"] = result.schemes;

  std::string text = "size-" + std::to_string(size) + " even-coverage schemes: " +
                     std::to_string(result.schemes.size()) + " (scanned " +
                     std::to_string(result.subsets_scanned) + " subsets)\n";
  if (size == 11)
    text += std::string("reference 11-measurement scheme is ") +
            (fig2_member ? "a member\n" : "NOT a member\n");
  if (dump)
    for (const auto& s : result.schemes) {
      text += "scheme:";
      for (int b : s) text += " " + std::to_string(b);
      text += "\n";
    }
  emit(opts, doc, text);
  return 0;
}

int cmd_simulate(const GlobalOpts& opts, int trials, uint64_t seed,
                 const std::string& policy_name, const std::string& alice_ref,
                 const std::string& bob_ref, const std::string& scheme_path) {
  const pb::Pentagram p = pb::build_pentagram();
  const pb::Atlas atlas = pb::build_atlas(p);
  const auto scheme = scheme_path.empty() ? pb::fig2_scheme(p)
                                          : pb::load_scheme_file(p, scheme_path);
  const pb::MeasurementTable table = pb::generate_table(atlas, scheme);

  pb::ChoicePolicy policy = pb::ChoicePolicy::uniform();
  if (!alice_ref.empty() || !bob_ref.empty()) {
    if (alice_ref.empty() || bob_ref.empty())
      throw std::invalid_argument("--alice and --bob must be given together");
    policy = pb::ChoicePolicy::fixed(resolve_row(table, alice_ref),
                                     resolve_row(table, bob_ref));
  } else if (policy_name == "round-robin") {
    policy = pb::ChoicePolicy::round_robin();
  } else if (policy_name != "uniform") {
    throw std::invalid_argument("unknown policy '" + policy_name + "'");
  }

  const auto records = pb::run_experiment(atlas, table, trials, policy, seed);
  const pb::CorrelationReport report = pb::verify_twin_collapse(records, table);

  if (!opts.out_dir.empty()) {
    std::string lines;
    for (const auto& rec : records)
      lines += pb::run_record_json(rec, table).dump() + "\n";
    write_file(opts.out_dir, "runs.jsonl", lines);
  }

  ordered_json doc = pb::correlation_json(report);
  std::string text = "runs: " + std::to_string(report.total_runs) +
                     ", same-choice: " + std::to_string(report.same_choice_runs) +
                     ", mismatches: " + std::to_string(report.same_choice_mismatches) +
                     "\n";
  text += "twin-state audits passed: " + std::to_string(report.twin_state_audits) +
          "/" + std::to_string(report.total_runs) + "\n";
  text += "common-label checks: " + std::to_string(report.common_label_checks) +
          ", violations: " + std::to_string(report.common_label_violations) + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", report.max_cell_frequency_deviation);
  text += "max |cell frequency - 1/8|: " + std::string(buf) + "\n";
  emit(opts, doc, text);
  return report.clean() ? 0 : 1;
}

int cmd_genkey(const GlobalOpts& opts, int trials, uint64_t seed, double reveal,
               const std::string& scheme_path) {
  const pb::Pentagram p = pb::build_pentagram();
  const pb::Atlas atlas = pb::build_atlas(p);
  const auto scheme = scheme_path.empty() ? pb::fig2_scheme(p)
                                          : pb::load_scheme_file(p, scheme_path);
  const pb::MeasurementTable table = pb::generate_table(atlas, scheme);

  const auto records =
      pb::run_experiment(atlas, table, trials, pb::ChoicePolicy::uniform(), seed);
  const pb::KeyMaterial key = pb::sift_key(records);
  const pb::KeyReport report = pb::verify_key(key, reveal, pb::RandomSource(seed));

  if (!opts.out_dir.empty()) {
    write_file(opts.out_dir, "key.txt", report.final_key + "\n");
    write_file(opts.out_dir, "key_meta.json",
               pb::key_meta_json(key, report).dump(2) + "\n");
  }

  ordered_json doc = pb::key_meta_json(key, report);
  std::string text = "sifted runs: " + std::to_string(key.sifted_runs.size()) + " of " +
                     std::to_string(trials) + "\n";
  text += "revealed: " + std::to_string(report.revealed_count) +
          ", mismatches: " + std::to_string(report.mismatches) + "\n";
  text += "final key length: " + std::to_string(report.final_key.size()) +
          " octal letters\n";
  emit(opts, doc, text);
  return report.mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for the three-qubit pentagram parity proof and its "
               "two-party entangled-state protocol"};
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_flag("--json", opts.json, "machine-readable output");
  app.add_option("--out", opts.out_dir, "directory for generated files");

  bool flip_e5 = false;
  auto* verify = app.add_subcommand("verify-pentagram", "validate the ten observables and five edges");
  verify->fallthrough();
  verify->add_flag("--flip-e5", flip_e5, "debug: demand product +1 on the horizontal edge");

  auto* atlas_cmd = app.add_subcommand("atlas", "compute the 40 joint eigenstates");
  atlas_cmd->fallthrough();

  std::string kind = "all";
  auto* bases_cmd = app.add_subcommand("bases", "enumerate the orthogonal 8-ray bases");
  bases_cmd->fallthrough();
  bases_cmd->add_option("--kind", kind, "all | pure | hybrid")
      ->check(CLI::IsMember({"all", "pure", "hybrid"}));

  std::string table_scheme;
  auto* table_cmd = app.add_subcommand("table", "print the outcome table of a scheme file");
  table_cmd->fallthrough();
  table_cmd->add_option("scheme", table_scheme, "scheme file")->required();

  auto* fig2_cmd = app.add_subcommand("verify-fig2",
                                      "regenerate the reference 11-row table and compare all 88 cells");
  fig2_cmd->fallthrough();

  std::string prove_scheme;
  auto* prove_cmd = app.add_subcommand("prove-bks",
                                       "parity verdict plus independent backtracking oracle");
  prove_cmd->fallthrough();
  prove_cmd->add_option("scheme", prove_scheme, "scheme file (default: built-in reference scheme)");

  auto* mermin_cmd = app.add_subcommand("mermin",
                                        "exhaust the 1024 value assignments against the edge constraints");
  mermin_cmd->fallthrough();

  int enum_size = 11;
  bool enum_dump = false;
  auto* enum_cmd = app.add_subcommand("enumerate", "count even-coverage basis subsets");
  enum_cmd->fallthrough();
  enum_cmd->add_option("--size", enum_size, "subset size")->check(CLI::Range(0, 25));
  enum_cmd->add_flag("--dump", enum_dump, "list the subsets");

  int sim_trials = 0;
  uint64_t sim_seed = 0;
  std::string sim_policy = "uniform", sim_alice, sim_bob, sim_scheme;
  auto* sim_cmd = app.add_subcommand("simulate", "seeded two-party runs on the entangled state");
  sim_cmd->fallthrough();
  sim_cmd->add_option("--trials", sim_trials, "number of runs")->required();
  sim_cmd->add_option("--seed", sim_seed, "64-bit seed")->required();
  sim_cmd->add_option("--policy", sim_policy, "uniform | round-robin");
  sim_cmd->add_option("--alice", sim_alice, "fixed row for Alice (index, Ex-Ey+/-, or pivot|Ex;Ey)");
  sim_cmd->add_option("--bob", sim_bob, "fixed row for Bob");
  sim_cmd->add_option("--scheme", sim_scheme, "scheme file (default: built-in reference scheme)");

  int key_trials = 0;
  uint64_t key_seed = 0;
  double key_reveal = 0.0;
  std::string key_scheme;
  auto* key_cmd = app.add_subcommand("genkey", "sift an octal key from seeded runs");
  key_cmd->fallthrough();
  key_cmd->add_option("--trials", key_trials, "number of runs")->required();
  key_cmd->add_option("--seed", key_seed, "64-bit seed")->required();
  key_cmd->add_option("--reveal", key_reveal, "fraction of the key sacrificed for verification")
      ->check(CLI::Range(0.0, 1.0));
  key_cmd->add_option("--scheme", key_scheme, "scheme file (default: built-in reference scheme)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify_pentagram(opts, flip_e5);
    if (atlas_cmd->parsed()) return cmd_atlas(opts);
    if (bases_cmd->parsed()) return cmd_bases(opts, kind);
    if (table_cmd->parsed()) return cmd_table(opts, table_scheme);
    if (fig2_cmd->parsed()) return cmd_verify_fig2(opts);
    if (prove_cmd->parsed()) return cmd_prove_bks(opts, prove_scheme);
    if (mermin_cmd->parsed()) return cmd_mermin(opts);
    if (enum_cmd->parsed()) return cmd_enumerate(opts, enum_size, enum_dump);
    if (sim_cmd->parsed())
      return cmd_simulate(opts, sim_trials, sim_seed, sim_policy, sim_alice, sim_bob,
                          sim_scheme);
    if (key_cmd->parsed()) return cmd_genkey(opts, key_trials, key_seed, key_reveal, key_scheme);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const pb::SchemeParseError& e) {
    std::cerr << "scheme parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal defect: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
