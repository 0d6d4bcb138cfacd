#include "pentabell/bks.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace pentabell {

std::string HybridMeasurement::symbol() const {
  return "(" + to_string(pivot) + "|{" + to_string(plus_pair[0]) + "," +
         to_string(plus_pair[1]) + "}{" + to_string(minus_pair[0]) + "," +
         to_string(minus_pair[1]) + "})";
}

std::string HybridMeasurement::edge_pair() const {
  const EdgeId lo = std::min(plus_edge, minus_edge);
  const EdgeId hi = std::max(plus_edge, minus_edge);
  return to_string(lo) + "-" + to_string(hi);
}

namespace {

std::array<ObsName, 2> default_pair(const Edge& edge, ObsName pivot) {
  std::array<ObsName, 2> out{};
  int n = 0;
  for (ObsName m : edge.members) {
    if (m == pivot) continue;
    if (n < 2) out[static_cast<size_t>(n)] = m;
    ++n;
  }
  return out;
}

void check_pair(const Edge& edge, ObsName pivot, const std::array<ObsName, 2>& pair,
                const char* which) {
  if (pair[0] == pair[1])
    throw std::invalid_argument(std::string(which) + " pair repeats " +
                                to_string(pair[0]));
  for (ObsName m : pair) {
    if (m == pivot)
      throw std::invalid_argument(std::string(which) + " pair contains the pivot " +
                                  to_string(pivot));
    if (!edge.contains(m))
      throw std::invalid_argument(std::string(which) + " pair member " + to_string(m) +
                                  " is not on edge " + to_string(edge.id));
  }
}

}  // namespace

HybridMeasurement make_hybrid(const Pentagram& p, ObsName pivot, EdgeId plus_edge,
                              EdgeId minus_edge,
                              std::optional<std::array<ObsName, 2>> plus_pair,
                              std::optional<std::array<ObsName, 2>> minus_pair) {
  const Edge& plus = p.edge(plus_edge);
  const Edge& minus = p.edge(minus_edge);
  if (!plus.contains(pivot) || !minus.contains(pivot))
    throw std::invalid_argument("pivot " + to_string(pivot) +
                                " must lie on both branch edges " +
                                to_string(plus_edge) + " and " + to_string(minus_edge));
  HybridMeasurement m;
  m.pivot = pivot;
  m.plus_edge = plus_edge;
  m.minus_edge = minus_edge;
  m.plus_pair = plus_pair.value_or(default_pair(plus, pivot));
  m.minus_pair = minus_pair.value_or(default_pair(minus, pivot));
  check_pair(plus, pivot, m.plus_pair, "plus");
  check_pair(minus, pivot, m.minus_pair, "minus");
  return m;
}

std::array<OutcomeCell, 8> outcomes_of(const Atlas& atlas, const HybridMeasurement& m) {
  const Pentagram& p = atlas.pentagram();
  std::array<OutcomeCell, 8> cells;
  for (int t = 0; t < 8; ++t) {
    const int s_pivot = (t & 4) ? -1 : +1;
    const int s_first = (t & 2) ? -1 : +1;
    const int s_second = (t & 1) ? -1 : +1;
    const EdgeId branch = (s_pivot == +1) ? m.plus_edge : m.minus_edge;
    const auto& pair = (s_pivot == +1) ? m.plus_pair : m.minus_pair;
    const Edge& edge = p.edge(branch);

    std::array<int, 4> signs{};
    std::array<bool, 4> known{};
    const auto put = [&](ObsName name, int s) {
      const int idx = edge.member_index(name);
      if (idx < 0)
        throw std::logic_error(to_string(name) + " missing from branch edge " +
                               to_string(branch));
      signs[static_cast<size_t>(idx)] = s;
      known[static_cast<size_t>(idx)] = true;
    };
    put(m.pivot, s_pivot);
    put(pair[0], s_first);
    put(pair[1], s_second);

    int rest = -1;
    int partial = edge.expected_product;
    for (int k = 0; k < 4; ++k) {
      if (known[static_cast<size_t>(k)])
        partial *= signs[static_cast<size_t>(k)];
      else
        rest = k;
    }
    if (rest < 0) throw std::logic_error("hybrid row determined fewer than 3 members");
    signs[static_cast<size_t>(rest)] = partial;

    const auto id = atlas.ray_id(branch, signs);
    if (!id)
      throw std::logic_error("no atlas ray for edge " + to_string(branch) +
                             " under a product-consistent sign pattern");
    cells[static_cast<size_t>(t)] = OutcomeCell{{s_pivot, s_first, s_second}, *id, 0};
  }

  std::set<int> distinct;
  for (const auto& c : cells) distinct.insert(c.ray_id);
  if (distinct.size() != 8)
    throw std::logic_error("hybrid outcomes of " + m.symbol() +
                           " are not eight distinct rays");
  return cells;
}

std::vector<std::array<int, 8>> MeasurementTable::label_grid() const {
  std::vector<std::array<int, 8>> grid;
  grid.reserve(rows.size());
  for (const TableRow& row : rows) {
    std::array<int, 8> r;
    for (int c = 0; c < 8; ++c) r[static_cast<size_t>(c)] = row.cells[static_cast<size_t>(c)].label;
    grid.push_back(r);
  }
  return grid;
}

std::vector<int> MeasurementTable::common_labels(size_t row_a, size_t row_b) const {
  std::set<int> a;
  for (const auto& c : rows.at(row_a).cells) a.insert(c.label);
  std::vector<int> out;
  for (const auto& c : rows.at(row_b).cells)
    if (a.count(c.label)) out.push_back(c.label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MeasurementTable generate_table(const Atlas& atlas,
                                const std::vector<HybridMeasurement>& scheme) {
  if (scheme.empty()) throw std::invalid_argument("scheme holds no measurements");
  MeasurementTable table;
  for (const HybridMeasurement& m : scheme)
    table.rows.push_back(TableRow{m, outcomes_of(atlas, m)});
  for (TableRow& row : table.rows) {
    for (OutcomeCell& cell : row.cells) {
      auto [it, inserted] =
          table.label_of_ray.emplace(cell.ray_id, table.label_count + 1);
      if (inserted) ++table.label_count;
      cell.label = it->second;
    }
  }
  return table;
}

ParityVerdict parity_check(const MeasurementTable& t) {
  ParityVerdict verdict;
  verdict.row_count = static_cast<int>(t.rows.size());
  std::map<int, int> occurrences;
  for (const TableRow& row : t.rows)
    for (const OutcomeCell& cell : row.cells) ++occurrences[cell.label];
  bool all_even = true;
  for (const auto& [label, count] : occurrences) {
    ++verdict.multiplicity_histogram[count];
    all_even = all_even && count % 2 == 0;
  }
  verdict.is_contradiction = (verdict.row_count % 2 == 1) && all_even;
  return verdict;
}

namespace {

struct AssignmentSearcher {
  const std::vector<std::array<int, 8>>& grid;
  std::map<int, int> assignment;
  uint64_t nodes = 0;

  bool solve(size_t row_index) {
    ++nodes;
    if (row_index == grid.size()) return true;
    const auto& row = grid[row_index];

    int ones = 0;
    for (int label : row) {
      const auto it = assignment.find(label);
      if (it != assignment.end() && it->second == 1) ++ones;
    }
    if (ones > 1) return false;
    if (ones == 1) {
      // The row is already satisfied; everything unfixed must be 0.
      std::vector<int> fixed;
      for (int label : row) {
        if (!assignment.count(label)) {
          assignment[label] = 0;
          fixed.push_back(label);
        }
      }
      if (solve(row_index + 1)) return true;
      for (int label : fixed) assignment.erase(label);
      return false;
    }

    // Choose which cell carries the single 1, left to right.
    for (int c = 0; c < 8; ++c) {
      const int chosen = row[static_cast<size_t>(c)];
      const auto it = assignment.find(chosen);
      if (it != assignment.end() && it->second == 0) continue;
      std::vector<int> fixed;
      bool consistent = true;
      if (it == assignment.end()) {
        assignment[chosen] = 1;
        fixed.push_back(chosen);
      }
      for (int label : row) {
        if (label == chosen) continue;
        const auto jt = assignment.find(label);
        if (jt != assignment.end()) {
          if (jt->second == 1) {
            consistent = false;
            break;
          }
        } else {
          assignment[label] = 0;
          fixed.push_back(label);
        }
      }
      if (consistent && solve(row_index + 1)) return true;
      for (int label : fixed) assignment.erase(label);
    }
    return false;
  }
};

}  // namespace

AssignmentSearchResult search_assignment(const MeasurementTable& t) {
  const auto grid = t.label_grid();
  AssignmentSearcher searcher{grid, {}, 0};
  AssignmentSearchResult result;
  if (searcher.solve(0)) {
    // Labels never reached stay 0.
    for (int label = 1; label <= t.label_count; ++label)
      searcher.assignment.emplace(label, 0);
    result.witness = std::move(searcher.assignment);
    result.exhausted = false;
  } else {
    result.exhausted = true;
  }
  result.nodes_visited = searcher.nodes;
  return result;
}

ColoringSearchResult mermin_coloring_search(const Pentagram& p) {
  ColoringSearchResult result;
  result.assignments_tried = 1 << 10;
  for (int mask = 0; mask < (1 << 10); ++mask) {
    std::array<int, 10> values;
    for (int i = 0; i < 10; ++i) values[static_cast<size_t>(i)] = (mask >> i) & 1 ? -1 : +1;

    bool first_four = true;
    bool all_five = true;
    for (const Edge& e : p.edges) {
      int prod = 1;
      for (ObsName m : e.members) prod *= values[static_cast<size_t>(obs_index(m))];
      const bool ok = prod == e.expected_product;
      all_five = all_five && ok;
      if (e.id != EdgeId::E5) first_four = first_four && ok;
    }
    if (first_four) ++result.satisfying_count_first_four;
    if (all_five) {
      ++result.satisfying_count;
      if (!result.witness) result.witness = values;
    }
  }
  result.exhausted = result.satisfying_count == 0;

  bool degree_ok = true;
  for (ObsName name : kAllObservables)
    degree_ok = degree_ok && p.edges_of(name).size() == 2;
  int product_of_expected = 1;
  for (const Edge& e : p.edges) product_of_expected *= e.expected_product;
  std::ostringstream note;
  note << "every observable lies on " << (degree_ok ? "exactly two" : "a varying number of")
       << " edges, so the product of all five edge constraints over any value "
          "assignment is +1; the constraints demand "
       << (product_of_expected == 1 ? "+1" : "-1");
  result.algebraic_note = note.str();
  return result;
}

SchemeEnumeration enumerate_parity_schemes(const std::vector<RayBasis>& bases,
                                           int subset_size) {
  if (subset_size < 0 || subset_size > static_cast<int>(bases.size()))
    throw std::invalid_argument("subset size out of range");
  std::vector<uint64_t> masks;
  masks.reserve(bases.size());
  for (const RayBasis& b : bases) {
    uint64_t m = 0;
    for (int id : b.ray_ids) m |= uint64_t{1} << id;
    masks.push_back(m);
  }

  SchemeEnumeration out;
  out.subset_size = subset_size;
  const int n = static_cast<int>(bases.size());
  std::vector<int> chosen;
  chosen.reserve(static_cast<size_t>(subset_size));
  auto rec = [&](auto&& self, int next, uint64_t acc) -> void {
    if (static_cast<int>(chosen.size()) == subset_size) {
      ++out.subsets_scanned;
      if (acc == 0) out.schemes.push_back(chosen);
      return;
    }
    const int needed = subset_size - static_cast<int>(chosen.size());
    for (int j = next; j + needed <= n; ++j) {
      chosen.push_back(j);
      self(self, j + 1, acc ^ masks[static_cast<size_t>(j)]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

int basis_index_of(const std::vector<RayBasis>& bases, const Atlas& atlas,
                   const HybridMeasurement& m) {
  const auto cells = outcomes_of(atlas, m);
  std::array<int, 8> ids;
  for (int c = 0; c < 8; ++c) ids[static_cast<size_t>(c)] = cells[static_cast<size_t>(c)].ray_id;
  std::sort(ids.begin(), ids.end());
  for (size_t i = 0; i < bases.size(); ++i)
    if (bases[i].ray_ids == ids) return static_cast<int>(i);
  throw std::logic_error("measurement " + m.symbol() +
                         " induces a basis missing from the enumeration");
}

namespace {

std::string strip(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

ObsName parse_obs(int line, std::string_view token) {
  const auto name = obs_name_from(strip(token));
  if (!name)
    throw SchemeParseError(line, "unknown observable '" + strip(token) + "'");
  return *name;
}

// Parses "E2" or "E2 {x2,x3}" into an edge and optional pair.
std::pair<EdgeId, std::optional<std::array<ObsName, 2>>> parse_branch(
    int line, std::string_view text) {
  const std::string t = strip(text);
  const size_t brace = t.find('{');
  std::string edge_token = brace == std::string::npos ? t : strip(t.substr(0, brace));
  const auto edge = edge_id_from(edge_token);
  if (!edge) throw SchemeParseError(line, "unknown edge id '" + edge_token + "'");
  if (brace == std::string::npos) return {*edge, std::nullopt};

  const size_t close = t.find('}', brace);
  if (close == std::string::npos || strip(t.substr(close + 1)) != "")
    throw SchemeParseError(line, "malformed pair braces in '" + t + "'");
  const std::string inner = t.substr(brace + 1, close - brace - 1);
  const size_t comma = inner.find(',');
  if (comma == std::string::npos)
    throw SchemeParseError(line, "pair needs two comma-separated observables");
  const ObsName first = parse_obs(line, inner.substr(0, comma));
  const ObsName second = parse_obs(line, inner.substr(comma + 1));
  return {*edge, std::array<ObsName, 2>{first, second}};
}

}  // namespace

std::vector<HybridMeasurement> parse_scheme(const Pentagram& p, std::string_view text) {
  std::vector<HybridMeasurement> scheme;
  std::istringstream stream{std::string(text)};
  std::string raw;
  int line_number = 0;
  while (std::getline(stream, raw)) {
    ++line_number;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = strip(raw);
    if (line.empty()) continue;

    const size_t bar = line.find('|');
    if (bar == std::string::npos)
      throw SchemeParseError(line_number, "expected 'pivot | plus ; minus'");
    const size_t semi = line.find(';', bar);
    if (semi == std::string::npos)
      throw SchemeParseError(line_number, "expected ';' between the branch edges");

    const ObsName pivot = parse_obs(line_number, line.substr(0, bar));
    const auto [plus_edge, plus_pair] =
        parse_branch(line_number, line.substr(bar + 1, semi - bar - 1));
    const auto [minus_edge, minus_pair] = parse_branch(line_number, line.substr(semi + 1));
    try {
      scheme.push_back(make_hybrid(p, pivot, plus_edge, minus_edge, plus_pair, minus_pair));
    } catch (const std::invalid_argument& err) {
      throw SchemeParseError(line_number, err.what());
    }
  }
  if (scheme.empty()) throw SchemeParseError(line_number, "scheme holds no measurements");
  return scheme;
}

std::vector<HybridMeasurement> load_scheme_file(const Pentagram& p,
                                                const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scheme file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scheme(p, buf.str());
}

std::vector<HybridMeasurement> fig2_scheme(const Pentagram& p) {
  using O = ObsName;
  using E = EdgeId;
  const auto pair = [](O a, O b) { return std::array<O, 2>{a, b}; };
  return {
      make_hybrid(p, O::A, E::E5, E::E1, pair(O::B, O::C), pair(O::z1, O::z2)),
      make_hybrid(p, O::z3, E::E4, E::E1, pair(O::x1, O::x2), pair(O::z1, O::z2)),
      make_hybrid(p, O::z2, E::E3, E::E1, pair(O::x1, O::x3), pair(O::z1, O::z3)),
      make_hybrid(p, O::z1, E::E2, E::E1, pair(O::x2, O::x3), pair(O::z2, O::z3)),
      make_hybrid(p, O::B, E::E2, E::E5, pair(O::x2, O::x3), pair(O::C, O::D)),
      make_hybrid(p, O::x2, E::E4, E::E2, pair(O::x1, O::z3), pair(O::z1, O::x3)),
      make_hybrid(p, O::x3, E::E3, E::E2, pair(O::x1, O::z2), pair(O::z1, O::x2)),
      make_hybrid(p, O::C, E::E5, E::E3, pair(O::A, O::B), pair(O::x1, O::z2)),
      make_hybrid(p, O::x1, E::E4, E::E3, pair(O::x2, O::z3), pair(O::z2, O::x3)),
      make_hybrid(p, O::D, E::E4, E::E5, pair(O::x1, O::x2), pair(O::A, O::B)),
      make_hybrid(p, O::A, E::E5, E::E5, pair(O::B, O::C), pair(O::B, O::C)),
  };
}

const std::array<std::array<int, 8>, 11>& fig2_reference_grid() {
  static const std::array<std::array<int, 8>, 11> kGrid = {{
      {1, 2, 3, 4, 5, 6, 7, 8},
      {9, 10, 11, 12, 5, 13, 14, 8},
      {15, 16, 17, 18, 6, 13, 19, 8},
      {20, 21, 22, 23, 7, 14, 19, 8},
      {20, 24, 25, 23, 3, 26, 27, 4},
      {9, 28, 11, 29, 22, 23, 25, 30},
      {15, 31, 17, 32, 21, 23, 24, 30},
      {1, 3, 33, 26, 16, 31, 17, 34},
      {9, 28, 10, 35, 17, 18, 32, 34},
      {9, 35, 29, 12, 1, 4, 36, 26},
      {1, 2, 3, 4, 33, 36, 26, 27},
  }};
  return kGrid;
}

}  // namespace pentabell
