#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "reglab/linalg.hpp"

namespace reglab {

/// An abstract simplicial complex on vertices {0, ..., n-1}, faces stored as
/// sorted bitmasks. Mask 0 is the empty face. The void complex (no faces at
/// all) is distinct from the irrelevant complex {∅}; both are valid values.
struct SimplicialComplex {
  int vertex_count = 0;
  std::vector<std::uint32_t> faces;  // sorted, unique

  bool is_void() const { return faces.empty(); }

  bool has_face(std::uint32_t mask) const {
    return std::binary_search(faces.begin(), faces.end(), mask);
  }

  bool is_downward_closed() const {
    for (std::uint32_t f : faces)
      for (std::uint32_t bit = f; bit; bit &= bit - 1) {
        std::uint32_t v = bit & ~(bit - 1);
        if (!has_face(f & ~v)) return false;
      }
    return true;
  }
};

inline SimplicialComplex make_complex(int vertex_count,
                                      std::vector<std::uint32_t> faces) {
  if (vertex_count < 0 || vertex_count > 31)
    throw std::invalid_argument("simplicial complex supports up to 31 vertices");
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  return SimplicialComplex{vertex_count, std::move(faces)};
}

/// Dimensions of reduced homology over a characteristic-zero field, keyed by
/// dimension d in [-1, n-1]; absent keys are zero. H̃_{-1}({∅}) = 1 and the
/// void complex has no homology at all. Requires downward closure.
inline std::map<int, int> reduced_homology_dims(const SimplicialComplex& c) {
  std::map<int, int> result;
  if (c.is_void()) return result;

  // Faces grouped by dimension: popcount k ↔ dimension k-1.
  int max_popcount = 0;
  for (std::uint32_t f : c.faces)
    max_popcount = std::max(max_popcount, std::popcount(f));
  std::vector<std::vector<std::uint32_t>> by_count(max_popcount + 1);
  for (std::uint32_t f : c.faces) by_count[std::popcount(f)].push_back(f);
  std::vector<std::map<std::uint32_t, std::size_t>> index(max_popcount + 1);
  for (int k = 0; k <= max_popcount; ++k)
    for (std::size_t i = 0; i < by_count[k].size(); ++i)
      index[k][by_count[k][i]] = i;

  // ranks[k] = rank of the boundary map from popcount-k faces to popcount-(k-1).
  std::vector<std::size_t> ranks(max_popcount + 2, 0);
  for (int k = 1; k <= max_popcount; ++k) {
    if (by_count[k].empty()) continue;
    if (by_count[k - 1].empty())
      throw std::invalid_argument("complex is not downward closed");
    IntMatrix boundary(by_count[k - 1].size(), by_count[k].size());
    for (std::size_t col = 0; col < by_count[k].size(); ++col) {
      std::uint32_t f = by_count[k][col];
      int sign = 1;
      for (std::uint32_t bit = f; bit; bit &= bit - 1) {
        std::uint32_t v = bit & ~(bit - 1);
        auto it = index[k - 1].find(f & ~v);
        if (it == index[k - 1].end())
          throw std::invalid_argument("complex is not downward closed");
        boundary.at(it->second, col) = sign;
        sign = -sign;
      }
    }
    ranks[k] = exact_rank(std::move(boundary));
  }

  for (int k = 0; k <= max_popcount; ++k) {
    long long dim = static_cast<long long>(by_count[k].size()) -
                    static_cast<long long>(ranks[k]) -
                    static_cast<long long>(ranks[k + 1]);
    if (dim != 0) result[k - 1] = static_cast<int>(dim);
  }
  return result;
}

}  // namespace reglab
