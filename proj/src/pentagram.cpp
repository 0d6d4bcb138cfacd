#include "pentabell/pentagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace pentabell {

namespace {

constexpr const char* kObsNames[] = {"z1", "z2", "z3", "x1", "x2",
                                     "x3", "A",  "B",  "C",  "D"};
constexpr const char* kEdgeNames[] = {"E1", "E2", "E3", "E4", "E5"};

}  // namespace

std::string to_string(ObsName name) { return kObsNames[obs_index(name)]; }

std::optional<ObsName> obs_name_from(std::string_view text) {
  for (ObsName name : kAllObservables)
    if (text == kObsNames[obs_index(name)]) return name;
  return std::nullopt;
}

std::string to_string(EdgeId id) { return kEdgeNames[edge_index(id)]; }

std::optional<EdgeId> edge_id_from(std::string_view text) {
  for (EdgeId id : kAllEdges)
    if (text == kEdgeNames[edge_index(id)]) return id;
  return std::nullopt;
}

bool Edge::contains(ObsName name) const {
  return std::find(members.begin(), members.end(), name) != members.end();
}

int Edge::member_index(ObsName name) const {
  for (int i = 0; i < 4; ++i)
    if (members[i] == name) return i;
  return -1;
}

std::vector<EdgeId> Pentagram::edges_of(ObsName name) const {
  std::vector<EdgeId> out;
  for (const Edge& e : edges)
    if (e.contains(name)) out.push_back(e.id);
  return out;
}

Pentagram build_pentagram() {
  Pentagram p;
  const auto set = [&](ObsName name, std::string_view letters) {
    p.observables[static_cast<size_t>(obs_index(name))] = {
        name, PauliWord::from_letters(letters)};
  };
  set(ObsName::z1, "ZII");
  set(ObsName::z2, "IZI");
  set(ObsName::z3, "IIZ");
  set(ObsName::x1, "XII");
  set(ObsName::x2, "IXI");
  set(ObsName::x3, "IIX");
  set(ObsName::A, "ZZZ");
  set(ObsName::B, "ZXX");
  set(ObsName::C, "XZX");
  set(ObsName::D, "XXZ");

  p.edges = {{
      {EdgeId::E1, {ObsName::A, ObsName::z1, ObsName::z3, ObsName::z2}, +1},
      {EdgeId::E2, {ObsName::x3, ObsName::B, ObsName::z1, ObsName::x2}, +1},
      {EdgeId::E3, {ObsName::x3, ObsName::C, ObsName::x1, ObsName::z2}, +1},
      {EdgeId::E4, {ObsName::D, ObsName::x1, ObsName::z3, ObsName::x2}, +1},
      {EdgeId::E5, {ObsName::A, ObsName::B, ObsName::C, ObsName::D}, -1},
  }};
  return p;
}

bool ValidationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::vector<const ValidationCheck*> ValidationReport::failures() const {
  std::vector<const ValidationCheck*> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(&c);
  return out;
}

ValidationReport validate(const Pentagram& p) {
  ValidationReport report;
  const auto add = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
  };

  // (a) Hermitian with +-1 eigenvalues: phase +1, square = identity,
  // traceless matrix.
  for (const Observable& obs : p.observables) {
    const PauliWord& w = obs.word;
    bool ok = w.is_hermitian() && w.phase_exp() == 0;
    const PauliWord sq = multiply(w, w);
    ok = ok && sq.is_identity_letters() && sq.phase_exp() == 0;
    const GaussianMatrix m = w.to_matrix();
    ok = ok && m.is_hermitian() && m.trace().is_zero();
    add("hermitian:" + to_string(obs.name), ok,
        ok ? "phase +1, squares to identity, traceless"
           : "not an involution with +-1 spectrum");
  }

  // (b) Members of each edge pairwise commute.
  for (const Edge& e : p.edges) {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 4 && ok; ++i) {
      for (int j = i + 1; j < 4 && ok; ++j) {
        if (!commutes(p.word_of(e.members[i]), p.word_of(e.members[j]))) {
          ok = false;
          detail = to_string(e.members[i]) + " and " + to_string(e.members[j]) +
                   " anticommute";
        }
      }
    }
    add("edge-commuting:" + to_string(e.id), ok, ok ? "pairwise commuting" : detail);
  }

  // (c) Ordered edge products, once through the word algebra and once
  // through exact matrices.
  for (const Edge& e : p.edges) {
    PauliWord prod = PauliWord::identity(3);
    for (ObsName m : e.members) prod = multiply(prod, p.word_of(m));
    const uint8_t want = e.expected_product == 1 ? 0 : 2;
    const bool ok_word = prod.is_identity_letters() && prod.phase_exp() == want;
    add("edge-product:" + to_string(e.id), ok_word,
        "word product = " + prod.str() + ", expected " +
            (e.expected_product == 1 ? "+" : "-") + "III");

    GaussianMatrix mat = GaussianMatrix::identity(8);
    for (ObsName m : e.members) mat = mat * p.word_of(m).to_matrix();
    const bool ok_mat = mat == GaussianMatrix::identity(8, e.expected_product);
    add("edge-product-matrix:" + to_string(e.id), ok_mat,
        ok_mat ? "matrix product equals expected multiple of identity"
               : "matrix product disagrees with expected sign");
  }

  // (d) Incidence: ten observables, each on exactly two edges; every edge
  // pair meets in exactly one observable.
  {
    bool ok = true;
    std::string detail;
    for (ObsName name : kAllObservables) {
      const size_t degree = p.edges_of(name).size();
      if (degree != 2) {
        ok = false;
        detail += to_string(name) + " lies on " + std::to_string(degree) + " edges; ";
      }
    }
    add("incidence:vertex-degree", ok, ok ? "each observable on exactly 2 edges" : detail);
  }
  {
    bool ok = true;
    std::string detail;
    std::set<ObsName> seen;
    for (size_t a = 0; a < p.edges.size(); ++a) {
      for (size_t b = a + 1; b < p.edges.size(); ++b) {
        std::vector<ObsName> common;
        for (ObsName m : p.edges[a].members)
          if (p.edges[b].contains(m)) common.push_back(m);
        if (common.size() != 1) {
          ok = false;
          detail += to_string(p.edges[a].id) + "&" + to_string(p.edges[b].id) +
                    " share " + std::to_string(common.size()) + " members; ";
        } else {
          seen.insert(common[0]);
        }
      }
    }
    if (ok && seen.size() != 10) {
      ok = false;
      detail = "intersections cover only " + std::to_string(seen.size()) +
               " of 10 observables";
    }
    add("incidence:edge-intersections", ok,
        ok ? "10 edge pairs meet in 10 distinct observables" : detail);
  }

  return report;
}

ObsName intersection(const Pentagram& p, EdgeId a, EdgeId b) {
  if (a == b)
    throw std::invalid_argument("intersection requires two distinct edges, got " +
                                to_string(a) + " twice");
  std::vector<ObsName> common;
  for (ObsName m : p.edge(a).members)
    if (p.edge(b).contains(m)) common.push_back(m);
  if (common.size() != 1)
    throw std::logic_error("edges " + to_string(a) + " and " + to_string(b) +
                           " share " + std::to_string(common.size()) +
                           " members, expected exactly 1");
  return common[0];
}

}  // namespace pentabell
