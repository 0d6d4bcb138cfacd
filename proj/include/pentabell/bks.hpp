#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pentabell/ray_atlas.hpp"

namespace pentabell {

// An adaptive measurement (pivot | plus_pair, minus_pair): measure the pivot
// first, then the plus_pair if it gave +1 or the minus_pair if it gave -1.
// The pivot lies on both branch edges; the edges coincide for the degenerate
// single-edge rows.
struct HybridMeasurement {
  ObsName pivot;
  EdgeId plus_edge;
  EdgeId minus_edge;
  std::array<ObsName, 2> plus_pair;
  std::array<ObsName, 2> minus_pair;

  bool is_degenerate() const { return plus_edge == minus_edge; }
  // Precise form, e.g. "(A|{B,C}{z1,z2})".
  std::string symbol() const;
  // Loose two-edge tag in index order, e.g. "E1-E5".
  std::string edge_pair() const;

  friend bool operator==(const HybridMeasurement&, const HybridMeasurement&) = default;
};

// Validating constructor.  When a pair is omitted it defaults to the first
// two members of the branch edge, in edge order, after removing the pivot.
HybridMeasurement make_hybrid(
    const Pentagram& p, ObsName pivot, EdgeId plus_edge, EdgeId minus_edge,
    std::optional<std::array<ObsName, 2>> plus_pair = std::nullopt,
    std::optional<std::array<ObsName, 2>> minus_pair = std::nullopt);

struct OutcomeCell {
  std::array<int, 3> signs;  // (pivot, pair first, pair second)
  int ray_id;
  int label = 0;  // assigned by generate_table
};

// The eight outcomes in column order +++, ++-, +-+, +--, -++, -+-, --+, ---.
// The fourth member's eigenvalue is implied by the branch edge's product
// constraint, which pins a unique atlas ray per cell.
std::array<OutcomeCell, 8> outcomes_of(const Atlas& atlas, const HybridMeasurement& m);

struct TableRow {
  HybridMeasurement measurement;
  std::array<OutcomeCell, 8> cells;
};

struct MeasurementTable {
  std::vector<TableRow> rows;
  int label_count = 0;
  std::map<int, int> label_of_ray;  // ray id -> outcome label (1-based)

  std::vector<std::array<int, 8>> label_grid() const;
  // Outcome labels shared by two rows (empty unless the rows share an edge).
  std::vector<int> common_labels(size_t row_a, size_t row_b) const;
};

// Labels are assigned by first occurrence in row-major order, starting at 1.
MeasurementTable generate_table(const Atlas& atlas,
                                const std::vector<HybridMeasurement>& scheme);

struct ParityVerdict {
  int row_count = 0;
  std::map<int, int> multiplicity_histogram;  // multiplicity -> #labels
  bool is_contradiction = false;
  // Left empty by parity_check; a satisfying assignment, when one is wanted,
  // comes from the independent backtracking search.
  std::optional<std::map<int, int>> witness;
};

// The counting argument: a contradiction iff the row count is odd while
// every outcome label occurs an even number of times.
ParityVerdict parity_check(const MeasurementTable& t);

struct AssignmentSearchResult {
  bool exhausted = false;
  std::optional<std::map<int, int>> witness;  // label -> 0/1
  uint64_t nodes_visited = 0;
};

// Independent oracle: backtracking over 0/1 values per outcome label,
// requiring exactly one 1 in each row.
AssignmentSearchResult search_assignment(const MeasurementTable& t);

struct ColoringSearchResult {
  bool exhausted = false;
  std::optional<std::array<int, 10>> witness;  // +-1 per kAllObservables entry
  int assignments_tried = 0;
  int satisfying_count = 0;          // all five edge constraints
  int satisfying_count_first_four = 0;  // E1..E4 only
  std::string algebraic_note;
};

// Brute force over all 2^10 +-1 assignments against the edge product
// constraints.
ColoringSearchResult mermin_coloring_search(const Pentagram& p);

struct SchemeEnumeration {
  int subset_size = 0;
  uint64_t subsets_scanned = 0;
  std::vector<std::vector<int>> schemes;  // basis indices, each sorted
};

// All size-k subsets of the bases whose combined ray coverage is even
// everywhere (XOR of 40-bit incidence masks is zero), by exhaustive scan.
SchemeEnumeration enumerate_parity_schemes(const std::vector<RayBasis>& bases,
                                           int subset_size);

// Index of the basis induced by a measurement within an enumerate_bases list.
int basis_index_of(const std::vector<RayBasis>& bases, const Atlas& atlas,
                   const HybridMeasurement& m);

class SchemeParseError : public std::runtime_error {
 public:
  SchemeParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Scheme file grammar, one measurement per line:
//   pivot | plus_edge ; minus_edge
//   pivot | plus_edge {o1,o2} ; minus_edge {o3,o4}
// '#' starts a comment; blank lines are skipped.
std::vector<HybridMeasurement> parse_scheme(const Pentagram& p, std::string_view text);
std::vector<HybridMeasurement> load_scheme_file(const Pentagram& p,
                                                const std::string& path);

// The reference scheme of 11 hybrid measurements and its expected label
// grid.
std::vector<HybridMeasurement> fig2_scheme(const Pentagram& p);
const std::array<std::array<int, 8>, 11>& fig2_reference_grid();

}  // namespace pentabell
