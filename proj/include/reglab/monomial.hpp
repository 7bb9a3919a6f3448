#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace reglab {

/// Exponents are signed 64-bit so that arithmetic can be overflow-checked;
/// all stored values are nonnegative.
using Exponent = std::int64_t;

/// Exponent vector a indexing a power product I_1^{a_1} ... I_m^{a_m}.
using MultiExponent = std::vector<Exponent>;

inline Exponent checked_add(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("exponent arithmetic overflow");
  return r;
}

inline Exponent checked_mul(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("exponent arithmetic overflow");
  return r;
}

/// The ambient polynomial ring: a count of variables with distinct names.
/// Coefficients never appear explicitly; every rank computation downstream
/// works over a field of characteristic zero.
struct RingContext {
  std::vector<std::string> names;

  RingContext() = default;
  explicit RingContext(std::vector<std::string> ns) : names(std::move(ns)) {
    if (names.empty())
      throw std::invalid_argument("ring needs at least one variable");
    std::set<std::string> distinct(names.begin(), names.end());
    if (distinct.size() != names.size())
      throw std::invalid_argument("ring variable names must be distinct");
  }

  std::size_t var_count() const { return names.size(); }

  friend bool operator==(const RingContext&, const RingContext&) = default;
};

/// A monomial is just its exponent vector; the ring travels separately.
struct Monomial {
  std::vector<Exponent> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<Exponent> e) : exponents(std::move(e)) {
    for (Exponent x : exponents)
      if (x < 0) throw std::invalid_argument("monomial exponent must be nonnegative");
  }

  std::size_t var_count() const { return exponents.size(); }

  Exponent total_degree() const {
    Exponent d = 0;
    for (Exponent x : exponents) d = checked_add(d, x);
    return d;
  }

  bool divides(const Monomial& other) const {
    if (exponents.size() != other.exponents.size()) return false;
    for (std::size_t i = 0; i < exponents.size(); ++i)
      if (exponents[i] > other.exponents[i]) return false;
    return true;
  }

  bool is_one() const {
    return std::all_of(exponents.begin(), exponents.end(),
                       [](Exponent x) { return x == 0; });
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.var_count() != b.var_count())
    throw std::invalid_argument("monomial product: variable count mismatch");
  std::vector<Exponent> e(a.exponents.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = checked_add(a.exponents[i], b.exponents[i]);
  return Monomial(std::move(e));
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  if (a.var_count() != b.var_count())
    throw std::invalid_argument("monomial lcm: variable count mismatch");
  std::vector<Exponent> e(a.exponents.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = std::max(a.exponents[i], b.exponents[i]);
  return Monomial(std::move(e));
}

/// Canonical generator order: total degree first, then lexicographic on the
/// exponent vector. Every generator list in the library is sorted by this.
inline bool graded_lex_less(const Monomial& a, const Monomial& b) {
  Exponent da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  return a.exponents < b.exponents;
}

/// A monomial ideal held by its minimal generating set: an antichain under
/// divisibility, sorted graded-lex ascending. The unit ideal is the single
/// all-zero generator, never an empty list.
class MonomialIdeal {
 public:
  MonomialIdeal(RingContext ring, const std::vector<Monomial>& generators)
      : ring_(std::move(ring)) {
    if (generators.empty())
      throw std::invalid_argument("empty generating set");
    for (const Monomial& g : generators)
      if (g.var_count() != ring_.var_count())
        throw std::invalid_argument("generator does not live in the given ring");
    std::vector<Monomial> sorted = generators;
    std::sort(sorted.begin(), sorted.end(), graded_lex_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    // A proper divisor has strictly smaller degree, so it precedes its
    // multiples in graded order; one forward pass suffices.
    for (const Monomial& g : sorted) {
      bool redundant = std::any_of(gens_.begin(), gens_.end(),
                                   [&](const Monomial& kept) { return kept.divides(g); });
      if (!redundant) gens_.push_back(g);
    }
  }

  const RingContext& ring() const { return ring_; }
  const std::vector<Monomial>& gens() const { return gens_; }

  /// Total degrees d_{ij} of the minimal generators, in generator order.
  std::vector<Exponent> degrees() const {
    std::vector<Exponent> d;
    d.reserve(gens_.size());
    for (const Monomial& g : gens_) d.push_back(g.total_degree());
    return d;
  }

  /// Ideal membership: divisibility by some minimal generator.
  bool contains(const Monomial& m) const {
    return std::any_of(gens_.begin(), gens_.end(),
                       [&](const Monomial& g) { return g.divides(m); });
  }

  bool is_unit() const { return gens_.size() == 1 && gens_.front().is_one(); }

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  RingContext ring_;
  std::vector<Monomial> gens_;
};

/// Inclusion-minimal antichain generating the same ideal.
inline MonomialIdeal minimalize(const RingContext& ring,
                                const std::vector<Monomial>& gens) {
  return MonomialIdeal(ring, gens);
}

inline MonomialIdeal unit_ideal(const RingContext& ring) {
  return MonomialIdeal(ring, {Monomial(std::vector<Exponent>(ring.var_count(), 0))});
}

inline MonomialIdeal multiply(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.ring() != b.ring())
    throw std::invalid_argument("ideal product: ring mismatch");
  std::vector<Monomial> products;
  products.reserve(a.gens().size() * b.gens().size());
  for (const Monomial& f : a.gens())
    for (const Monomial& g : b.gens()) products.push_back(f * g);
  return MonomialIdeal(a.ring(), products);
}

/// A family I_1, ..., I_m of nonzero monomial ideals in one shared ring.
struct IdealFamily {
  RingContext ring;
  std::vector<MonomialIdeal> ideals;

  IdealFamily(RingContext r, std::vector<MonomialIdeal> is)
      : ring(std::move(r)), ideals(std::move(is)) {
    if (ideals.empty())
      throw std::invalid_argument("ideal family must contain at least one ideal");
    for (const MonomialIdeal& ideal : ideals)
      if (ideal.ring() != ring)
        throw std::invalid_argument("ideal family: ring mismatch");
  }

  std::size_t size() const { return ideals.size(); }
};

/// I^a = I_1^{a_1} ... I_m^{a_m} by iterated products with intermediate
/// minimalization; a = 0 yields the unit ideal.
inline MonomialIdeal power_product(const IdealFamily& family,
                                   const MultiExponent& a) {
  if (a.size() != family.size())
    throw std::invalid_argument("power_product: exponent length mismatch");
  for (Exponent ai : a)
    if (ai < 0) throw std::invalid_argument("power_product: negative exponent");
  MonomialIdeal result = unit_ideal(family.ring);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (Exponent k = 0; k < a[i]; ++k)
      result = multiply(result, family.ideals[i]);
  return result;
}

/// Memoizes power products over a grid so that I^a is one product away from
/// I^{a - e_i}. Not thread-safe; fill before sharing.
class PowerProductCache {
 public:
  explicit PowerProductCache(const IdealFamily& family) : family_(&family) {}

  const MonomialIdeal& get(const MultiExponent& a) {
    auto it = memo_.find(a);
    if (it != memo_.end()) return it->second;
    std::size_t axis = a.size();
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] > 0) { axis = i; break; }
    MonomialIdeal value = unit_ideal(family_->ring);
    if (axis != a.size()) {
      MultiExponent prev = a;
      --prev[axis];
      value = multiply(get(prev), family_->ideals[axis]);
    }
    return memo_.emplace(a, std::move(value)).first->second;
  }

 private:
  const IdealFamily* family_;
  std::map<MultiExponent, MonomialIdeal> memo_;
};

/// Per-ideal sets {d_{i1}, ..., d_{ig_i}} of generator degrees; the slope
/// alphabet for the asymptotic linear forms.
inline std::vector<std::set<Exponent>> generator_degree_sets(const IdealFamily& family) {
  std::vector<std::set<Exponent>> sets;
  sets.reserve(family.size());
  for (const MonomialIdeal& ideal : family.ideals) {
    std::set<Exponent> s;
    for (const Monomial& g : ideal.gens()) s.insert(g.total_degree());
    sets.push_back(std::move(s));
  }
  return sets;
}

inline bool is_equigenerated(const IdealFamily& family, std::size_t i) {
  return generator_degree_sets(family)[i].size() == 1;
}

inline bool all_equigenerated(const IdealFamily& family) {
  for (const std::set<Exponent>& s : generator_degree_sets(family))
    if (s.size() != 1) return false;
  return true;
}

}  // namespace reglab
