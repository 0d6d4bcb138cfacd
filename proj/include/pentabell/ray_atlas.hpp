#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pentabell/pentagram.hpp"

namespace pentabell {

// One of the 40 joint eigenstates, stored as an exact integer vector in the
// computational basis |000>..|111> (most significant qubit first).
// Canonical form: collective gcd 1, first nonzero component positive.
struct Ray {
  int id;
  EdgeId edge;
  std::array<int, 4> signs;  // eigenvalues aligned with the edge member order
  std::array<int64_t, 8> amplitudes;
  int64_t norm_sq;
};

// In-place gcd reduction and sign normalization.  Throws
// std::invalid_argument on the zero vector.
void canonicalize(std::array<int64_t, 8>& v);

// The unique canonical ray with M_k v = s_k v for the edge's four members,
// computed by iterated exact projector application.  Returns nullopt when
// the sign product contradicts the edge's expected product (8 of the 16
// patterns per edge).
std::optional<std::array<int64_t, 8>> compute_joint_eigenstate(
    const Pentagram& p, EdgeId edge, const std::array<int, 4>& signs);

// An orthogonal 8-element basis drawn from the atlas.  plus_edge == minus_edge
// marks a pure edge basis; otherwise the basis holds the plus_edge rays with
// pivot eigenvalue +1 and the minus_edge rays with pivot eigenvalue -1.
struct RayBasis {
  std::array<int, 8> ray_ids;  // sorted ascending
  ObsName pivot;
  EdgeId plus_edge;
  EdgeId minus_edge;

  bool is_pure() const { return plus_edge == minus_edge; }
};

// The 40 rays with stable ids: edges E1..E5, sign patterns in lexicographic
// order with + before -.
class Atlas {
 public:
  static Atlas build(const Pentagram& p);

  const Pentagram& pentagram() const { return pentagram_; }
  const std::vector<Ray>& rays() const { return rays_; }
  const Ray& ray(int id) const { return rays_.at(static_cast<size_t>(id)); }

  // Sign-pattern lookup; nullopt for the 8 unrealized patterns per edge.
  std::optional<int> ray_id(EdgeId edge, const std::array<int, 4>& signs) const;

  // Canonicalizes v and resolves it against the atlas.  Throws
  // std::invalid_argument on the zero vector.
  std::optional<int> identify(const std::array<int64_t, 8>& v) const;

  // Eigenvalue of an observable on a ray; the observable must belong to the
  // ray's edge.
  int sign_of(int ray_id, ObsName obs) const;

  int64_t dot(int a, int b) const;

 private:
  Pentagram pentagram_;
  std::vector<Ray> rays_;
  std::map<std::array<int64_t, 8>, int> by_amplitudes_;
  std::map<std::pair<int, int>, int> by_edge_pattern_;
};

inline Atlas build_atlas(const Pentagram& p) { return Atlas::build(p); }

// All orthogonal 8-subsets of the atlas, found twice: constructively (5 pure
// edge bases followed by the hybrid bases over ordered edge pairs in
// lexicographic order) and by exhaustive search over the orthogonality
// graph.  Throws std::logic_error if the two enumerations disagree.
std::vector<RayBasis> enumerate_bases(const Atlas& atlas);

}  // namespace pentabell
