#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pentabell/pauli.hpp"

namespace pentabell {

// The ten named observables of the three-qubit pentagram.  z_i/x_i are the
// single-qubit sigma_z/sigma_x of particle i; A..D are the triple products
// A = ZZZ, B = ZXX, C = XZX, D = XXZ.
enum class ObsName : int { z1, z2, z3, x1, x2, x3, A, B, C, D };

inline constexpr std::array<ObsName, 10> kAllObservables = {
    ObsName::z1, ObsName::z2, ObsName::z3, ObsName::x1, ObsName::x2,
    ObsName::x3, ObsName::A,  ObsName::B,  ObsName::C,  ObsName::D};

std::string to_string(ObsName name);
std::optional<ObsName> obs_name_from(std::string_view text);

enum class EdgeId : int { E1, E2, E3, E4, E5 };

inline constexpr std::array<EdgeId, 5> kAllEdges = {
    EdgeId::E1, EdgeId::E2, EdgeId::E3, EdgeId::E4, EdgeId::E5};

std::string to_string(EdgeId id);
std::optional<EdgeId> edge_id_from(std::string_view text);

inline int edge_index(EdgeId id) { return static_cast<int>(id); }
inline int obs_index(ObsName name) { return static_cast<int>(name); }

struct Observable {
  ObsName name;
  PauliWord word;
};

struct Edge {
  EdgeId id;
  std::array<ObsName, 4> members;  // in canonical order
  int expected_product;            // +1 or -1

  bool contains(ObsName name) const;
  // Index of a member within the edge; -1 when absent.
  int member_index(ObsName name) const;
};

struct Pentagram {
  std::array<Observable, 10> observables;  // indexed by obs_index
  std::array<Edge, 5> edges;               // indexed by edge_index

  const PauliWord& word_of(ObsName name) const {
    return observables[static_cast<size_t>(obs_index(name))].word;
  }
  const Edge& edge(EdgeId id) const {
    return edges[static_cast<size_t>(edge_index(id))];
  }
  // Edges containing the observable (two for the canonical pentagram).
  std::vector<EdgeId> edges_of(ObsName name) const;
};

// The canonical pentagram: edges E1: A,z1,z3,z2; E2: x3,B,z1,x2;
// E3: x3,C,x1,z2; E4: D,x1,z3,x2; E5: A,B,C,D with expected products
// (+1,+1,+1,+1,-1).  Deterministic.
Pentagram build_pentagram();

struct ValidationCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_passed() const;
  std::vector<const ValidationCheck*> failures() const;
};

// Per-check report: observables Hermitian and squaring to identity, edges
// pairwise commuting, ordered edge products (word algebra and exact matrix
// route), and vertex/edge incidence counts.  Failures are report entries,
// never exceptions.
ValidationReport validate(const Pentagram& p);

// Unique common member of two distinct edges.  Throws std::invalid_argument
// when a == b.
ObsName intersection(const Pentagram& p, EdgeId a, EdgeId b);

}  // namespace pentabell
