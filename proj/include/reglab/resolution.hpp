#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "reglab/monomial.hpp"
#include "reglab/simplicial.hpp"

namespace reglab {

/// Multigraded Betti numbers β_{j,b} of one ideal, with the derived data
/// t_j (largest total degree of a j-th syzygy generator), projective
/// dimension, and Castelnuovo-Mumford regularity.
struct BettiTable {
  // by_j[j][b] = β_{j,b} > 0; zero entries are never stored.
  std::map<int, std::map<std::vector<Exponent>, long long>> by_j;

  void add(int j, const std::vector<Exponent>& b, long long dim) {
    if (dim != 0) by_j[j][b] += dim;
  }

  bool empty() const { return by_j.empty(); }

  long long total(int j) const {
    auto it = by_j.find(j);
    if (it == by_j.end()) return 0;
    long long sum = 0;
    for (const auto& [b, dim] : it->second) sum += dim;
    return sum;
  }

  long long entry(int j, const std::vector<Exponent>& b) const {
    auto it = by_j.find(j);
    if (it == by_j.end()) return 0;
    auto jt = it->second.find(b);
    return jt == it->second.end() ? 0 : jt->second;
  }

  /// t_j: max |b| with β_{j,b} ≠ 0; nullopt encodes -infinity.
  std::optional<Exponent> t(int j) const {
    auto it = by_j.find(j);
    if (it == by_j.end() || it->second.empty()) return std::nullopt;
    Exponent best = 0;
    bool first = true;
    for (const auto& [b, dim] : it->second) {
      Exponent total_degree = 0;
      for (Exponent x : b) total_degree = checked_add(total_degree, x);
      if (first || total_degree > best) best = total_degree;
      first = false;
    }
    return best;
  }

  int pd() const {
    if (by_j.empty()) throw std::logic_error("pd of an empty Betti table");
    return by_j.rbegin()->first;
  }

  Exponent reg() const {
    if (by_j.empty()) throw std::logic_error("reg of an empty Betti table");
    bool first = true;
    Exponent best = 0;
    for (const auto& [j, row] : by_j)
      for (const auto& [b, dim] : row) {
        Exponent total_degree = 0;
        for (Exponent x : b) total_degree = checked_add(total_degree, x);
        Exponent v = total_degree - j;
        if (first || v > best) best = v;
        first = false;
      }
    return best;
  }

  /// Degree strand: u ↦ Σ_{|b|=u} β_{j,b}.
  std::map<Exponent, long long> degree_strand(int j) const {
    std::map<Exponent, long long> strand;
    auto it = by_j.find(j);
    if (it == by_j.end()) return strand;
    for (const auto& [b, dim] : it->second) {
      Exponent total_degree = 0;
      for (Exponent x : b) total_degree = checked_add(total_degree, x);
      strand[total_degree] += dim;
    }
    return strand;
  }

  long long alternating_sum() const {
    long long sum = 0;
    int sign = 1;
    for (const auto& [j, row] : by_j) {
      (void)row;
      sign = (j % 2 == 0) ? 1 : -1;
      sum += sign * total(j);
    }
    return sum;
  }

  friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

/// Upper-Koszul simplicial complex of I at multidegree b: the squarefree
/// subsets S of the variables with b - e_S ≥ 0 and x^{b - e_S} ∈ I. Reduced
/// homology in dimension j-1 has dimension β_{j,b}(I).
inline SimplicialComplex upper_koszul_complex(const MonomialIdeal& ideal,
                                              const Monomial& b) {
  const std::size_t n = ideal.ring().var_count();
  if (b.var_count() != n)
    throw std::invalid_argument("upper_koszul_complex: ring mismatch");
  if (n > 31)
    throw std::invalid_argument("upper_koszul_complex: too many variables");
  std::vector<std::uint32_t> faces;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Exponent> shifted = b.exponents;
    bool ok = true;
    for (std::size_t v = 0; v < n; ++v)
      if (mask & (1u << v)) {
        if (--shifted[v] < 0) {
          ok = false;
          break;
        }
      }
    if (ok && ideal.contains(Monomial(shifted))) faces.push_back(mask);
  }
  return make_complex(static_cast<int>(n), std::move(faces));
}

/// Join closure of the minimal generators under lcm: the only multidegrees
/// that can carry a nonzero Betti number.
inline std::vector<Monomial> lcm_closure(const std::vector<Monomial>& gens) {
  std::set<Monomial> closure(gens.begin(), gens.end());
  std::vector<Monomial> work(closure.begin(), closure.end());
  while (!work.empty()) {
    Monomial m = std::move(work.back());
    work.pop_back();
    for (const Monomial& g : gens) {
      Monomial joined = lcm(m, g);
      if (closure.insert(joined).second) work.push_back(std::move(joined));
    }
  }
  return std::vector<Monomial>(closure.begin(), closure.end());
}

/// β_{j,b}(I) for every candidate multidegree b in the lcm closure of the
/// generators, via reduced homology of the upper-Koszul complex.
inline BettiTable multigraded_betti(const MonomialIdeal& ideal) {
  BettiTable table;
  for (const Monomial& b : lcm_closure(ideal.gens())) {
    std::map<int, int> homology =
        reduced_homology_dims(upper_koszul_complex(ideal, b));
    for (const auto& [dim, count] : homology)
      table.add(dim + 1, b.exponents, count);
  }
  return table;
}

struct IdealInvariants {
  std::map<int, Exponent> t;  // finite values only, j = 0..pd
  int pd = 0;
  Exponent reg = 0;

  std::optional<Exponent> t_at(int j) const {
    auto it = t.find(j);
    if (it == t.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const IdealInvariants&, const IdealInvariants&) = default;
};

/// Projection of the Betti table onto (t_j, pd, reg); t_j = -infinity for
/// j > pd is encoded by absence from the map.
inline IdealInvariants invariants_of(const BettiTable& table) {
  IdealInvariants inv;
  inv.pd = table.pd();
  inv.reg = table.reg();
  for (const auto& [j, row] : table.by_j) {
    (void)row;
    if (auto tj = table.t(j)) inv.t[j] = *tj;
  }
  return inv;
}

inline IdealInvariants invariants(const MonomialIdeal& ideal) {
  return invariants_of(multigraded_betti(ideal));
}

}  // namespace reglab
