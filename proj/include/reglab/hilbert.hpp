#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "reglab/asymptotics.hpp"
#include "reglab/monomial.hpp"
#include "reglab/resolution.hpp"

namespace reglab {

/// One denominator factor 1/(1 - x^degree s_axis). Axes are 0-based in
/// memory; the text format writes them 1-based.
struct SeriesFactor {
  Exponent x_degree = 1;
  std::size_t axis = 0;

  friend auto operator<=>(const SeriesFactor&, const SeriesFactor&) = default;
};

/// x^shift_x s^shift_s / prod factors. An empty factor list is a plain
/// monomial term.
struct RationalTerm {
  Exponent shift_x = 0;
  MultiExponent shift_s;
  std::vector<SeriesFactor> factors;

  friend bool operator==(const RationalTerm&, const RationalTerm&) = default;
};

struct RationalSeriesSum {
  std::size_t m = 0;
  std::vector<RationalTerm> terms;

  friend bool operator==(const RationalSeriesSum&, const RationalSeriesSum&) = default;
};

inline void validate_series(const RationalSeriesSum& series) {
  for (const RationalTerm& term : series.terms) {
    if (term.shift_s.size() != series.m)
      throw std::invalid_argument("series term: s-shift arity mismatch");
    for (const SeriesFactor& f : term.factors) {
      if (f.x_degree < 1) throw std::invalid_argument("series factor degree must be >= 1");
      if (f.axis >= series.m) throw std::invalid_argument("series factor axis out of range");
    }
  }
}

/// Per-axis maximal factor degree of a term: lambda_i = max{d : (d,i) among
/// factors}, absent when the axis carries no factor.
inline std::vector<std::optional<Exponent>> term_slopes(const RationalTerm& term,
                                                        std::size_t m) {
  std::vector<std::optional<Exponent>> lambda(m);
  for (const SeriesFactor& f : term.factors) {
    if (f.axis >= m) throw std::invalid_argument("series factor axis out of range");
    if (!lambda[f.axis] || *lambda[f.axis] < f.x_degree) lambda[f.axis] = f.x_degree;
  }
  return lambda;
}

/// Largest x-degree with a nonzero coefficient on the s^a slice of one term:
/// with a' = a - w, the value is v + sum lambda_i a'_i when a' is nonnegative
/// and supported on the factor axes, nullopt (-infinity) otherwise.
inline std::optional<Exponent> rho_of_term(const RationalTerm& term,
                                           const MultiExponent& a, std::size_t m) {
  if (a.size() != m || term.shift_s.size() != m)
    throw std::invalid_argument("rho_of_term: arity mismatch");
  std::vector<std::optional<Exponent>> lambda = term_slopes(term, m);
  Exponent value = term.shift_x;
  for (std::size_t i = 0; i < m; ++i) {
    Exponent rest = a[i] - term.shift_s[i];
    if (rest < 0) return std::nullopt;
    if (!lambda[i]) {
      if (rest != 0) return std::nullopt;
      continue;
    }
    value = checked_add(value, checked_mul(*lambda[i], rest));
  }
  return value;
}

inline std::optional<Exponent> rho_of_sum(const RationalSeriesSum& series,
                                          const MultiExponent& a) {
  std::optional<Exponent> best;
  for (const RationalTerm& term : series.terms) {
    std::optional<Exponent> v = rho_of_term(term, a, series.m);
    if (v && (!best || *v > *best)) best = v;
  }
  return best;
}

/// The linear forms governing rho for a >> 0: one per full-support term,
/// slopes lambda_i, intercept v - sum lambda_i w_i; duplicate slope vectors
/// merged keeping the largest intercept. Sorted by decreasing (slopes,
/// intercept), the same canonical order fit_envelope returns.
inline std::vector<LinearForm> asymptotic_forms(const RationalSeriesSum& series) {
  std::map<std::vector<Exponent>, Exponent> best;
  for (const RationalTerm& term : series.terms) {
    std::vector<std::optional<Exponent>> lambda = term_slopes(term, series.m);
    bool full = std::all_of(lambda.begin(), lambda.end(),
                            [](const std::optional<Exponent>& l) { return l.has_value(); });
    if (!full) continue;
    std::vector<Exponent> slopes(series.m);
    Exponent intercept = term.shift_x;
    for (std::size_t i = 0; i < series.m; ++i) {
      slopes[i] = *lambda[i];
      intercept = checked_add(intercept, checked_mul(-slopes[i], term.shift_s[i]));
    }
    auto [it, inserted] = best.emplace(slopes, intercept);
    if (!inserted && it->second < intercept) it->second = intercept;
  }
  std::vector<LinearForm> forms;
  forms.reserve(best.size());
  for (auto it = best.rbegin(); it != best.rend(); ++it)
    forms.push_back(LinearForm{it->first, it->second});
  return forms;
}

namespace detail {

constexpr Exponent kExpansionCap = 10000;

/// x-degree polynomial of the s_i^e slice of prod_j 1/(1 - x^{d_j} s_i),
/// as a map x-degree -> count. Unbounded-knapsack recurrence per factor:
/// dp_new[e] = dp_old[e] + x^d dp_new[e-1].
inline std::map<Exponent, long long> axis_slice(const std::vector<Exponent>& degrees,
                                                Exponent e) {
  std::vector<std::map<Exponent, long long>> dp(static_cast<std::size_t>(e) + 1);
  dp[0][0] = 1;
  for (Exponent d : degrees) {
    for (Exponent s = 1; s <= e; ++s) {
      for (const auto& [x, count] : dp[static_cast<std::size_t>(s - 1)]) {
        long long& slot = dp[static_cast<std::size_t>(s)][checked_add(x, d)];
        slot = checked_add(slot, count);
      }
    }
  }
  return dp[static_cast<std::size_t>(e)];
}

inline std::map<Exponent, long long> convolve(const std::map<Exponent, long long>& p,
                                              const std::map<Exponent, long long>& q) {
  std::map<Exponent, long long> out;
  for (const auto& [xa, ca] : p)
    for (const auto& [xb, cb] : q) {
      long long& slot = out[checked_add(xa, xb)];
      slot = checked_add(slot, checked_mul(ca, cb));
    }
  return out;
}

}  // namespace detail

/// Coefficient of x^u s^a in the series for every u, as a finite map of
/// nonzero entries. Expansion is exact; per-axis exponents above 10^4 are
/// rejected to bound the dynamic program.
inline std::map<Exponent, long long> coefficients_at(const RationalSeriesSum& series,
                                                     const MultiExponent& a) {
  if (a.size() != series.m)
    throw std::invalid_argument("coefficients_at: arity mismatch");
  std::map<Exponent, long long> total;
  for (const RationalTerm& term : series.terms) {
    MultiExponent rest(series.m);
    bool live = true;
    for (std::size_t i = 0; i < series.m; ++i) {
      rest[i] = a[i] - term.shift_s[i];
      if (rest[i] < 0) {
        live = false;
        break;
      }
      if (rest[i] > detail::kExpansionCap)
        throw std::invalid_argument("coefficients_at: exponent exceeds expansion cap");
    }
    if (!live) continue;
    std::vector<std::vector<Exponent>> axis_degrees(series.m);
    for (const SeriesFactor& f : term.factors) {
      if (f.axis >= series.m) throw std::invalid_argument("series factor axis out of range");
      axis_degrees[f.axis].push_back(f.x_degree);
    }
    std::map<Exponent, long long> poly{{term.shift_x, 1}};
    for (std::size_t i = 0; i < series.m && live; ++i) {
      if (axis_degrees[i].empty()) {
        if (rest[i] != 0) live = false;
        continue;
      }
      poly = detail::convolve(poly, detail::axis_slice(axis_degrees[i], rest[i]));
    }
    if (!live) continue;
    for (const auto& [x, count] : poly) {
      long long& slot = total[x];
      slot = checked_add(slot, count);
    }
  }
  std::erase_if(total, [](const auto& kv) { return kv.second == 0; });
  return total;
}

/// One disagreement between a series expansion and the Betti strand it
/// should reproduce.
struct StrandMismatch {
  MultiExponent a;
  std::map<Exponent, long long> from_series;
  std::map<Exponent, long long> from_betti;

  friend bool operator==(const StrandMismatch&, const StrandMismatch&) = default;
};

struct ComparisonReport {
  int j = 0;
  Exponent grid_max = 0;
  std::size_t cells_checked = 0;
  std::vector<StrandMismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Checks that the s^a slice of the series equals the total-degree strand of
/// beta_j(I^a) for every a in [0, grid_max]^m. Mismatches are collected, not
/// thrown.
inline ComparisonReport compare_series_to_betti(const RationalSeriesSum& series,
                                                const IdealFamily& family, int j,
                                                Exponent grid_max,
                                                unsigned threads = 0) {
  if (series.m != family.size())
    throw std::invalid_argument("compare_series_to_betti: family/series arity mismatch");
  validate_series(series);
  ComparisonReport report{j, grid_max, 0, {}};
  std::vector<MultiExponent> cells =
      grid_points(series.m, MultiExponent(series.m, 0), grid_max);
  PowerProductCache cache(family);
  std::vector<const MonomialIdeal*> ideals;
  ideals.reserve(cells.size());
  for (const MultiExponent& a : cells) ideals.push_back(&cache.get(a));
  std::vector<std::map<Exponent, long long>> strands(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    strands[i] = multigraded_betti(*ideals[i]).degree_strand(j);
  });
  for (std::size_t i = 0; i < cells.size(); ++i) {
    ++report.cells_checked;
    std::map<Exponent, long long> expanded = coefficients_at(series, cells[i]);
    if (expanded != strands[i])
      report.mismatches.push_back(StrandMismatch{cells[i], expanded, strands[i]});
  }
  return report;
}

}  // namespace reglab
