#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "reglab/monomial.hpp"
#include "reglab/parallel.hpp"
#include "reglab/resolution.hpp"

namespace reglab {

/// L(u) = Σ λ_i u_i + λ_0 with nonnegative integer slopes.
struct LinearForm {
  std::vector<Exponent> slopes;
  Exponent intercept = 0;

  Exponent eval(const MultiExponent& a) const {
    if (a.size() != slopes.size())
      throw std::invalid_argument("linear form evaluated at wrong arity");
    Exponent v = intercept;
    for (std::size_t i = 0; i < slopes.size(); ++i)
      v = checked_add(v, checked_mul(slopes[i], a[i]));
    return v;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < slopes.size(); ++i)
      if (slopes[i] != 0) s.push_back(i);
    return s;
  }

  bool full_support() const { return support().size() == slopes.size(); }

  /// Renders in the a1..am alphabet, e.g. "2a1+a2+1".
  std::string pretty() const {
    std::ostringstream out;
    bool wrote = false;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      if (slopes[i] == 0) continue;
      if (wrote) out << "+";
      if (slopes[i] != 1) out << slopes[i];
      out << "a" << (i + 1);
      wrote = true;
    }
    if (intercept != 0 || !wrote) {
      if (wrote && intercept > 0) out << "+";
      out << intercept;
    }
    return out.str();
  }

  friend auto operator<=>(const LinearForm&, const LinearForm&) = default;
};

enum class InvariantKind { T, Reg, Pd };

/// Which invariant a grid or fit refers to; j is meaningful only for T.
struct Invariant {
  InvariantKind kind = InvariantKind::Reg;
  int j = 0;

  static Invariant t(int j) { return Invariant{InvariantKind::T, j}; }
  static Invariant reg() { return Invariant{InvariantKind::Reg, 0}; }
  static Invariant pd() { return Invariant{InvariantKind::Pd, 0}; }

  std::string name() const {
    switch (kind) {
      case InvariantKind::T: return "t_" + std::to_string(j);
      case InvariantKind::Reg: return "reg";
      case InvariantKind::Pd: return "pd";
    }
    return "?";
  }

  friend bool operator==(const Invariant&, const Invariant&) = default;
};

/// Sampled values of one invariant of I^a over the full grid [0, A]^m.
/// nullopt encodes -infinity (t_j for j beyond the projective dimension).
struct GridTable {
  Invariant kind;
  std::size_t m = 0;
  Exponent grid_max = 0;
  std::map<MultiExponent, std::optional<Exponent>> values;

  friend bool operator==(const GridTable&, const GridTable&) = default;
};

inline std::vector<MultiExponent> grid_points(std::size_t m, const MultiExponent& lo,
                                              Exponent hi) {
  std::vector<MultiExponent> points;
  for (Exponent l : lo)
    if (l > hi) return points;
  MultiExponent a = lo;
  for (;;) {
    points.push_back(a);
    std::size_t axis = m;
    while (axis-- > 0) {
      if (a[axis] < hi) {
        ++a[axis];
        for (std::size_t k = axis + 1; k < m; ++k) a[k] = lo[k];
        break;
      }
      if (axis == 0) return points;
    }
  }
}

/// Invariants of I^a for every a in [0, A]^m. Power products are extended
/// one axis step at a time from cached intermediates; the per-cell Betti
/// computations run in parallel.
inline std::map<MultiExponent, IdealInvariants> grid_invariants(
    const IdealFamily& family, Exponent grid_max, unsigned threads = 0) {
  if (grid_max < 0) throw std::invalid_argument("grid_max must be nonnegative");
  const std::size_t m = family.size();
  std::vector<MultiExponent> cells =
      grid_points(m, MultiExponent(m, 0), grid_max);
  PowerProductCache cache(family);
  std::vector<const MonomialIdeal*> ideals;
  ideals.reserve(cells.size());
  for (const MultiExponent& a : cells) ideals.push_back(&cache.get(a));
  std::vector<IdealInvariants> results(cells.size());
  parallel_for(cells.size(), threads,
               [&](std::size_t i) { results[i] = invariants(*ideals[i]); });
  std::map<MultiExponent, IdealInvariants> table;
  for (std::size_t i = 0; i < cells.size(); ++i)
    table.emplace(cells[i], std::move(results[i]));
  return table;
}

inline std::optional<Exponent> project_invariant(const IdealInvariants& inv,
                                                 const Invariant& kind) {
  switch (kind.kind) {
    case InvariantKind::T: return inv.t_at(kind.j);
    case InvariantKind::Reg: return inv.reg;
    case InvariantKind::Pd: return static_cast<Exponent>(inv.pd);
  }
  return std::nullopt;
}

inline GridTable project_table(const std::map<MultiExponent, IdealInvariants>& grid,
                               const Invariant& kind, std::size_t m,
                               Exponent grid_max) {
  GridTable table{kind, m, grid_max, {}};
  for (const auto& [a, inv] : grid) table.values[a] = project_invariant(inv, kind);
  return table;
}

/// values[a] = chosen invariant of I^a for every a in [0, grid_max]^m.
inline GridTable tabulate(const IdealFamily& family, const Invariant& kind,
                          Exponent grid_max, unsigned threads = 0) {
  if (grid_max < 1) throw std::invalid_argument("tabulate needs grid_max >= 1");
  return project_table(grid_invariants(family, grid_max, threads), kind,
                       family.size(), grid_max);
}

/// The full-support slope alphabet for envelope fitting: the Cartesian
/// product of the per-ideal generator degree sets.
inline std::set<std::vector<Exponent>> candidate_slopes(const IdealFamily& family) {
  std::vector<std::set<Exponent>> degree_sets = generator_degree_sets(family);
  std::set<std::vector<Exponent>> slopes;
  std::vector<Exponent> current;
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == degree_sets.size()) {
      slopes.insert(current);
      return;
    }
    for (Exponent d : degree_sets[i]) {
      current.push_back(d);
      self(self, i + 1);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
  return slopes;
}

struct FitFailedError : std::runtime_error {
  MultiExponent witness;
  explicit FitFailedError(MultiExponent a, const std::string& reason)
      : std::runtime_error(reason), witness(std::move(a)) {}
};

struct EmptyRegionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotStabilizedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A verified max-of-linear-forms description of a grid table on the region
/// [origin, verified_to]^m: max_k forms[k](a) equals the table at every
/// region point, and removing any form breaks equality somewhere.
struct EnvelopeFit {
  Invariant kind;
  std::vector<LinearForm> forms;  // sorted by decreasing (slopes, intercept)
  MultiExponent region_origin;
  Exponent verified_to = 0;

  std::string pretty() const {
    std::ostringstream out;
    out << "max{";
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (i) out << ", ";
      out << forms[i].pretty();
    }
    out << "}";
    return out.str();
  }

  friend bool operator==(const EnvelopeFit&, const EnvelopeFit&) = default;
};

/// Fits the table on [origin, grid_max]^m as the upper envelope of linear
/// forms drawn from the candidate slopes. For each candidate λ the intercept
/// is c_λ = min over the region of (value - λ·a), the greatest intercept
/// keeping λ·a + c_λ ≤ table; the fit succeeds iff at every region point
/// some candidate line attains the table value. Returned forms are the
/// canonical minimal sufficient subset: forms that are the unique attainer
/// somewhere are kept outright, the rest are added greedily in lexicographic
/// order until the envelope matches everywhere, then redundant forms are
/// pruned largest-first.
inline EnvelopeFit fit_envelope(const GridTable& table,
                                const std::set<std::vector<Exponent>>& candidates,
                                const MultiExponent& origin) {
  const std::size_t m = table.m;
  if (origin.size() != m)
    throw std::invalid_argument("fit_envelope: origin arity mismatch");
  for (Exponent o : origin)
    if (o < 0) throw std::invalid_argument("fit_envelope: origin must be nonnegative");
  for (Exponent o : origin)
    if (o > table.grid_max - 1)
      throw EmptyRegionError("fit region needs at least 2 points per axis");
  if (candidates.empty())
    throw std::invalid_argument("fit_envelope: no candidate slopes");
  for (const std::vector<Exponent>& s : candidates)
    if (s.size() != m)
      throw std::invalid_argument("fit_envelope: candidate slope arity mismatch");

  const std::vector<MultiExponent> region = grid_points(m, origin, table.grid_max);
  std::vector<Exponent> value(region.size());
  std::size_t finite = 0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    auto it = table.values.find(region[i]);
    if (it == table.values.end())
      throw std::invalid_argument("fit_envelope: table is incomplete on the region");
    if (it->second) {
      value[i] = *it->second;
      ++finite;
    }
  }
  EnvelopeFit fit{table.kind, {}, origin, table.grid_max};
  if (finite == 0) return fit;  // table is identically -infinity: empty envelope
  if (finite < region.size()) {
    for (std::size_t i = 0; i < region.size(); ++i)
      if (!table.values.at(region[i]))
        throw FitFailedError(region[i],
                             "table is -infinity at a region point; no finite envelope exists");
  }

  struct Candidate {
    std::vector<Exponent> slopes;
    Exponent intercept;
    std::vector<std::size_t> covers;  // region indices where the line attains the table
  };
  std::vector<Candidate> lines;
  lines.reserve(candidates.size());
  for (const std::vector<Exponent>& s : candidates) {
    LinearForm probe{s, 0};
    Exponent c = 0;
    for (std::size_t i = 0; i < region.size(); ++i) {
      Exponent gap = value[i] - probe.eval(region[i]);
      if (i == 0 || gap < c) c = gap;
    }
    Candidate cand{s, c, {}};
    for (std::size_t i = 0; i < region.size(); ++i)
      if (probe.eval(region[i]) + c == value[i]) cand.covers.push_back(i);
    lines.push_back(std::move(cand));
  }

  std::vector<int> attainers(region.size(), 0);
  for (const Candidate& cand : lines)
    for (std::size_t i : cand.covers) ++attainers[i];
  for (std::size_t i = 0; i < region.size(); ++i)
    if (attainers[i] == 0)
      throw FitFailedError(region[i],
                           "no candidate line attains the table value; the region may start "
                           "before stabilization or the slope alphabet is wrong");

  // Phase 1: unique attainers are forced.
  std::vector<bool> selected(lines.size(), false);
  std::vector<bool> covered(region.size(), false);
  auto select = [&](std::size_t k) {
    selected[k] = true;
    for (std::size_t i : lines[k].covers) covered[i] = true;
  };
  for (std::size_t k = 0; k < lines.size(); ++k)
    for (std::size_t i : lines[k].covers)
      if (attainers[i] == 1) {
        select(k);
        break;
      }
  // Phase 2: greedy completion in lexicographic (slopes, intercept) order.
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (selected[k]) continue;
    bool useful = std::any_of(lines[k].covers.begin(), lines[k].covers.end(),
                              [&](std::size_t i) { return !covered[i]; });
    if (useful) select(k);
  }
  // Phase 3: drop redundant forms, scanning largest-first so the kept set is
  // biased toward lexicographically small slopes.
  for (std::size_t k = lines.size(); k-- > 0;) {
    if (!selected[k]) continue;
    std::vector<int> cover_count(region.size(), 0);
    for (std::size_t t = 0; t < lines.size(); ++t)
      if (selected[t])
        for (std::size_t i : lines[t].covers) ++cover_count[i];
    bool removable = true;
    for (std::size_t i : lines[k].covers)
      if (cover_count[i] == 1) {
        removable = false;
        break;
      }
    if (removable) selected[k] = false;
  }

  for (std::size_t k = 0; k < lines.size(); ++k)
    if (selected[k]) fit.forms.push_back(LinearForm{lines[k].slopes, lines[k].intercept});
  std::sort(fit.forms.begin(), fit.forms.end(),
            [](const LinearForm& a, const LinearForm& b) { return b < a; });
  return fit;
}

/// Certifies that a fitted form cannot be dropped: some verified region point
/// is attained by it and by no other returned form.
inline bool form_is_necessary(const GridTable& table, const EnvelopeFit& fit,
                              std::size_t form_index) {
  const std::vector<MultiExponent> region =
      grid_points(table.m, fit.region_origin, fit.verified_to);
  for (const MultiExponent& a : region) {
    auto it = table.values.find(a);
    if (it == table.values.end() || !it->second) continue;
    Exponent v = *it->second;
    if (fit.forms[form_index].eval(a) != v) continue;
    bool alone = true;
    for (std::size_t k = 0; k < fit.forms.size(); ++k)
      if (k != form_index && fit.forms[k].eval(a) == v) {
        alone = false;
        break;
      }
    if (alone) return true;
  }
  return false;
}

/// When every ideal in the family is generated in a single degree d_i, a
/// successful fit must consist of exactly one form with slopes (d_1,...,d_m);
/// vacuously true otherwise.
inline bool check_corollary2(const IdealFamily& family, const EnvelopeFit& fit) {
  if (!all_equigenerated(family)) return true;
  if (fit.forms.size() != 1) return false;
  std::vector<Exponent> expected;
  for (const std::set<Exponent>& s : generator_degree_sets(family))
    expected.push_back(*s.begin());
  return fit.forms.front().slopes == expected;
}

struct PdStability {
  int pd = 0;
  MultiExponent origin;
};

/// The constant value of a pd table on the largest upper sub-box [o, A]^m of
/// the grid (ties broken toward lexicographically small origins); boxes must
/// have at least 2 points per axis.
inline PdStability pd_stability_of(const std::map<MultiExponent, int>& pd_values,
                                   std::size_t m, Exponent grid_max) {
  if (grid_max < 2)
    throw std::invalid_argument("pd_stability needs grid_max >= 2");
  std::vector<MultiExponent> origins =
      grid_points(m, MultiExponent(m, 0), grid_max - 1);
  std::stable_sort(origins.begin(), origins.end(),
                   [&](const MultiExponent& a, const MultiExponent& b) {
                     long long va = 1, vb = 1;
                     for (std::size_t i = 0; i < m; ++i) {
                       va *= grid_max - a[i] + 1;
                       vb *= grid_max - b[i] + 1;
                     }
                     if (va != vb) return va > vb;
                     return a < b;
                   });
  for (const MultiExponent& o : origins) {
    std::optional<int> constant;
    bool ok = true;
    for (const MultiExponent& a : grid_points(m, o, grid_max)) {
      int p = pd_values.at(a);
      if (!constant) constant = p;
      else if (*constant != p) {
        ok = false;
        break;
      }
    }
    if (ok) return PdStability{*constant, o};
  }
  throw NotStabilizedError("pd is not constant on any upper sub-box; grid too small");
}

inline PdStability pd_stability(const IdealFamily& family, Exponent grid_max,
                                unsigned threads = 0) {
  if (grid_max < 2)
    throw std::invalid_argument("pd_stability needs grid_max >= 2");
  std::map<MultiExponent, int> pd_values;
  for (const auto& [a, inv] : grid_invariants(family, grid_max, threads))
    pd_values.emplace(a, inv.pd);
  return pd_stability_of(pd_values, family.size(), grid_max);
}

}  // namespace reglab
