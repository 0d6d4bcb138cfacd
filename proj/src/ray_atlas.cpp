#include "pentabell/ray_atlas.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pentabell {

namespace {

// Applies a real Pauli word to an integer vector.  The measurement-relevant
// words here contain no Y, so coefficients are +-1.
std::array<int64_t, 8> apply_real(const PauliWord& w, const std::array<int64_t, 8>& v) {
  if (!w.has_real_matrix())
    throw std::invalid_argument("word " + w.str() + " has a non-real matrix");
  std::array<int64_t, 8> out{};
  for (uint64_t b = 0; b < 8; ++b) {
    if (v[b] == 0) continue;
    auto [image, k] = w.act(b);
    out[image] += (k == 0) ? v[b] : -v[b];
  }
  return out;
}

// Sign pattern for index 0..15, lexicographic with + before -.
std::array<int, 4> sign_pattern(int index) {
  std::array<int, 4> s;
  for (int k = 0; k < 4; ++k) s[k] = ((index >> (3 - k)) & 1) ? -1 : +1;
  return s;
}

int pattern_index(const std::array<int, 4>& signs) {
  int idx = 0;
  for (int k = 0; k < 4; ++k)
    if (signs[k] < 0) idx |= 1 << (3 - k);
  return idx;
}

}  // namespace

void canonicalize(std::array<int64_t, 8>& v) {
  int64_t g = 0;
  for (int64_t a : v) g = std::gcd(g, a);
  if (g == 0) throw std::invalid_argument("cannot canonicalize the zero vector");
  for (int64_t& a : v) a /= g;
  for (int64_t a : v) {
    if (a != 0) {
      if (a < 0)
        for (int64_t& b : v) b = -b;
      break;
    }
  }
}

std::optional<std::array<int64_t, 8>> compute_joint_eigenstate(
    const Pentagram& p, EdgeId edge, const std::array<int, 4>& signs) {
  const Edge& e = p.edge(edge);
  int product = 1;
  for (int s : signs) product *= s;
  if (product != e.expected_product) return std::nullopt;

  // Apply prod_k (I + s_k M_k) to standard basis vectors until the image is
  // nonzero; the factors commute, and the product is 16x the rank-1 joint
  // projector, so any nonzero image spans the eigenspace.
  for (int j = 0; j < 8; ++j) {
    std::array<int64_t, 8> v{};
    v[j] = 1;
    for (int k = 0; k < 4; ++k) {
      const auto mv = apply_real(p.word_of(e.members[k]), v);
      for (int i = 0; i < 8; ++i) v[i] += signs[k] * mv[i];
    }
    bool nonzero = false;
    for (int64_t a : v) nonzero = nonzero || a != 0;
    if (!nonzero) continue;

    canonicalize(v);
    for (int k = 0; k < 4; ++k) {
      const auto mv = apply_real(p.word_of(e.members[k]), v);
      for (int i = 0; i < 8; ++i) {
        if (mv[i] != signs[k] * v[i])
          throw std::logic_error("eigen-equation violated for " +
                                 to_string(e.members[k]) + " on edge " +
                                 to_string(edge));
      }
    }
    return v;
  }
  throw std::logic_error("empty joint eigenspace on edge " + to_string(edge));
}

Atlas Atlas::build(const Pentagram& p) {
  Atlas atlas;
  atlas.pentagram_ = p;
  for (EdgeId edge : kAllEdges) {
    int realized = 0;
    for (int pat = 0; pat < 16; ++pat) {
      const auto signs = sign_pattern(pat);
      auto v = compute_joint_eigenstate(p, edge, signs);
      if (!v) continue;
      ++realized;
      Ray ray;
      ray.id = static_cast<int>(atlas.rays_.size());
      ray.edge = edge;
      ray.signs = signs;
      ray.amplitudes = *v;
      ray.norm_sq = 0;
      for (int64_t a : *v) ray.norm_sq += a * a;
      auto [it, inserted] = atlas.by_amplitudes_.emplace(ray.amplitudes, ray.id);
      if (!inserted)
        throw std::logic_error("duplicate canonical ray between ids " +
                               std::to_string(it->second) + " and " +
                               std::to_string(ray.id));
      atlas.by_edge_pattern_.emplace(std::make_pair(edge_index(edge), pat), ray.id);
      atlas.rays_.push_back(ray);
    }
    if (realized != 8)
      throw std::logic_error("edge " + to_string(edge) + " realized " +
                             std::to_string(realized) + " sign patterns, expected 8");
  }
  if (atlas.rays_.size() != 40)
    throw std::logic_error("atlas holds " + std::to_string(atlas.rays_.size()) +
                           " rays, expected 40");
  return atlas;
}

std::optional<int> Atlas::ray_id(EdgeId edge, const std::array<int, 4>& signs) const {
  const auto it =
      by_edge_pattern_.find(std::make_pair(edge_index(edge), pattern_index(signs)));
  if (it == by_edge_pattern_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Atlas::identify(const std::array<int64_t, 8>& v) const {
  std::array<int64_t, 8> c = v;
  canonicalize(c);
  const auto it = by_amplitudes_.find(c);
  if (it == by_amplitudes_.end()) return std::nullopt;
  return it->second;
}

int Atlas::sign_of(int ray_id, ObsName obs) const {
  const Ray& r = ray(ray_id);
  const int idx = pentagram_.edge(r.edge).member_index(obs);
  if (idx < 0)
    throw std::invalid_argument(to_string(obs) + " is not a member of edge " +
                                to_string(r.edge));
  return r.signs[static_cast<size_t>(idx)];
}

int64_t Atlas::dot(int a, int b) const {
  const auto& u = ray(a).amplitudes;
  const auto& v = ray(b).amplitudes;
  int64_t d = 0;
  for (int i = 0; i < 8; ++i) d += u[i] * v[i];
  return d;
}

namespace {

std::array<int, 8> sorted_ids(std::vector<int> ids) {
  if (ids.size() != 8) throw std::logic_error("basis must hold exactly 8 rays");
  std::sort(ids.begin(), ids.end());
  std::array<int, 8> out;
  std::copy(ids.begin(), ids.end(), out.begin());
  return out;
}

RayBasis pure_basis(const Atlas& atlas, EdgeId edge) {
  std::vector<int> ids;
  for (const Ray& r : atlas.rays())
    if (r.edge == edge) ids.push_back(r.id);
  return RayBasis{sorted_ids(std::move(ids)),
                  atlas.pentagram().edge(edge).members[0], edge, edge};
}

RayBasis hybrid_basis(const Atlas& atlas, EdgeId plus, EdgeId minus) {
  const ObsName pivot = intersection(atlas.pentagram(), plus, minus);
  std::vector<int> ids;
  for (const Ray& r : atlas.rays()) {
    if (r.edge == plus && atlas.sign_of(r.id, pivot) == +1) ids.push_back(r.id);
    if (r.edge == minus && atlas.sign_of(r.id, pivot) == -1) ids.push_back(r.id);
  }
  return RayBasis{sorted_ids(std::move(ids)), pivot, plus, minus};
}

// Exhaustive search for all pairwise-orthogonal 8-subsets, as 40-bit masks.
std::vector<uint64_t> exhaustive_orthogonal_bases(const Atlas& atlas) {
  std::array<uint64_t, 40> mates{};
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j)
      if (i != j && atlas.dot(i, j) == 0) mates[i] |= uint64_t{1} << j;

  std::vector<uint64_t> found;
  // Depth-first over rays in increasing id; candidates stay orthogonal to
  // every chosen ray, so any depth-8 path is a basis.
  auto dfs = [&](auto&& self, uint64_t chosen, int count, uint64_t candidates) -> void {
    if (count == 8) {
      found.push_back(chosen);
      return;
    }
    uint64_t m = candidates;
    while (m) {
      if (count + std::popcount(m) < 8) return;
      const int i = std::countr_zero(m);
      m &= m - 1;
      self(self, chosen | (uint64_t{1} << i), count + 1, m & mates[i]);
    }
  };
  dfs(dfs, 0, 0, (uint64_t{1} << 40) - 1);
  return found;
}

uint64_t basis_mask(const RayBasis& b) {
  uint64_t m = 0;
  for (int id : b.ray_ids) m |= uint64_t{1} << id;
  return m;
}

}  // namespace

std::vector<RayBasis> enumerate_bases(const Atlas& atlas) {
  std::vector<RayBasis> bases;
  for (EdgeId edge : kAllEdges) bases.push_back(pure_basis(atlas, edge));
  for (EdgeId plus : kAllEdges)
    for (EdgeId minus : kAllEdges)
      if (plus != minus) bases.push_back(hybrid_basis(atlas, plus, minus));

  std::set<uint64_t> constructive;
  for (const RayBasis& b : bases) constructive.insert(basis_mask(b));
  if (constructive.size() != bases.size())
    throw std::logic_error("constructive basis enumeration produced duplicates");

  const std::vector<uint64_t> exhaustive = exhaustive_orthogonal_bases(atlas);
  std::set<uint64_t> exhaustive_set(exhaustive.begin(), exhaustive.end());
  if (exhaustive_set != constructive)
    throw std::logic_error(
        "exhaustive orthogonality search and constructive enumeration disagree: " +
        std::to_string(exhaustive_set.size()) + " vs " +
        std::to_string(constructive.size()) + " bases");

  return bases;
}

}  // namespace pentabell
