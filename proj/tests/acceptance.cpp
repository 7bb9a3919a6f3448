// Acceptance suite: end-to-end checks of the worked families, the envelope
// fitting pipeline, and the randomized oracle cross-checks. One line per
// criterion; exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "reglab/reglab.hpp"

namespace {

using namespace reglab;
using Clock = std::chrono::steady_clock;

const std::string kDataDir = REGLAB_DATA_DIR;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

IdealFamily example1() {
  return parse_family(detail::read_file(kDataDir + "/example1.family"));
}

IdealFamily example2() {
  return parse_family(detail::read_file(kDataDir + "/example2.family"));
}

Exponent max3(Exponent a, Exponent b, Exponent c) {
  return std::max(a, std::max(b, c));
}

bool check(bool& ok, bool condition, const std::string& label) {
  if (!condition) {
    std::cerr << "  check failed: " << label << "\n";
    ok = false;
  }
  return condition;
}

std::map<std::pair<int, std::vector<Exponent>>, long long> flatten(
    const BettiTable& table) {
  std::map<std::pair<int, std::vector<Exponent>>, long long> flat;
  for (const auto& [j, row] : table.by_j)
    for (const auto& [b, dim] : row) flat[{j, b}] = dim;
  return flat;
}

// Criterion 1: on [0,6]^2 the first family has t_0 = max{2a1+a2, a1+2a2},
// t_1 = t_0 + 1 away from the origin, and reg equal to the same maximum
// everywhere. Budget: 10 seconds.
bool criterion1() {
  auto start = Clock::now();
  bool ok = true;
  std::map<MultiExponent, IdealInvariants> grid = grid_invariants(example1(), 6);
  check(ok, grid.size() == 49, "grid covers [0,6]^2");
  for (const auto& [a, inv] : grid) {
    Exponent envelope = std::max(2 * a[0] + a[1], a[0] + 2 * a[1]);
    check(ok, inv.reg == envelope, "reg at a");
    if (a[0] == 0 && a[1] == 0) {
      check(ok, inv.t_at(0) == Exponent{0}, "t_0 of the unit ideal");
      check(ok, !inv.t_at(1), "t_1 of the unit ideal");
    } else {
      check(ok, inv.t_at(0) == envelope, "t_0 at a");
      check(ok, inv.t_at(1) == envelope + 1, "t_1 at a");
      check(ok, !inv.t_at(2), "t_2 absent");
    }
  }
  double elapsed = seconds_since(start);
  check(ok, elapsed < 10.0, "criterion 1 finished within 10s");
  return ok;
}

// Criterion 2: the first family has beta_0(I^a) = 1 + a1 + a2 and
// beta_1(I^a) = a1 + a2 for a != 0 on the same grid.
bool criterion2() {
  bool ok = true;
  IdealFamily family = example1();
  PowerProductCache cache(family);
  for (const MultiExponent& a : grid_points(2, {0, 0}, 6)) {
    BettiTable table = multigraded_betti(cache.get(a));
    long long total = a[0] + a[1];
    if (total == 0) continue;
    check(ok, table.total(0) == 1 + total, "beta_0 = 1 + a1 + a2");
    check(ok, table.total(1) == total, "beta_1 = a1 + a2");
  }
  return ok;
}

// Criterion 3: on (1,1) <= a <= (4,4) the second family matches the
// three-piece rows for t_0, t_1, t_2 and reg, with pd constant 2.
// Budget: 5 minutes.
bool criterion3() {
  auto start = Clock::now();
  bool ok = true;
  std::map<MultiExponent, IdealInvariants> grid = grid_invariants(example2(), 4);
  for (const auto& [a, inv] : grid) {
    if (a[0] < 1 || a[1] < 1) continue;
    Exponent p = a[0] + 4 * a[1];
    Exponent q = 2 * a[0] + 3 * a[1];
    Exponent r = 3 * a[0] + a[1];
    check(ok, inv.t_at(0) == max3(p + 1, q, r), "t_0 row");
    check(ok, inv.t_at(1) == max3(p + 2, q + 1, r + 2), "t_1 row");
    check(ok, inv.t_at(2) == max3(p + 3, q + 2, r + 3), "t_2 row");
    check(ok, !inv.t_at(3), "t_3 absent");
    check(ok, inv.reg == max3(p + 1, q, r + 1), "reg row");
    check(ok, inv.pd == 2, "pd = 2");
  }
  double elapsed = seconds_since(start);
  check(ok, elapsed < 300.0, "criterion 3 finished within 5min");
  return ok;
}

// Criterion 4: envelope fits from origin (1,1) recover the exact linear
// forms, and every returned form carries a necessity certificate.
bool criterion4() {
  bool ok = true;
  IdealFamily one = example1();
  IdealFamily two = example2();

  std::vector<LinearForm> two_piece{{{2, 1}, 0}, {{1, 2}, 0}};
  std::vector<LinearForm> three_piece{{{3, 1}, 0}, {{2, 3}, 0}, {{1, 4}, 1}};

  auto fitted = [&](const IdealFamily& family, const GridTable& table) {
    return fit_envelope(table, candidate_slopes(family), MultiExponent(table.m, 1));
  };
  auto all_necessary = [&](const GridTable& table, const EnvelopeFit& fit) {
    for (std::size_t i = 0; i < fit.forms.size(); ++i)
      if (!form_is_necessary(table, fit, i)) return false;
    return true;
  };

  GridTable one_reg = tabulate(one, Invariant::reg(), 5);
  EnvelopeFit fit_one_reg = fitted(one, one_reg);
  check(ok, fit_one_reg.forms == two_piece, "reg envelope of the first family");
  check(ok, all_necessary(one_reg, fit_one_reg), "necessity for the first reg fit");
  check(ok, fit_one_reg.pretty() == "max{2a1+a2, a1+2a2}", "pretty form");

  GridTable one_t0 = tabulate(one, Invariant::t(0), 5);
  EnvelopeFit fit_one_t0 = fitted(one, one_t0);
  check(ok, fit_one_t0.forms == two_piece, "t_0 envelope of the first family");
  check(ok, all_necessary(one_t0, fit_one_t0), "necessity for the first t_0 fit");

  GridTable two_t0 = tabulate(two, Invariant::t(0), 5);
  EnvelopeFit fit_two_t0 = fitted(two, two_t0);
  check(ok, fit_two_t0.forms == three_piece, "t_0 envelope of the second family");
  check(ok, all_necessary(two_t0, fit_two_t0), "necessity for the second t_0 fit");

  // The middle reg form is dominated out to grid 5 and reappears at grid 6.
  GridTable two_reg = tabulate(two, Invariant::reg(), 6);
  EnvelopeFit fit_two_reg = fitted(two, two_reg);
  std::vector<LinearForm> reg_piece{{{3, 1}, 1}, {{2, 3}, 0}, {{1, 4}, 1}};
  check(ok, fit_two_reg.forms == reg_piece, "reg envelope of the second family");
  check(ok, all_necessary(two_reg, fit_two_reg), "necessity for the second reg fit");
  return ok;
}

// Criterion 5: the closed-form Hilbert series slices reproduce the j = 0 and
// j = 1 Betti strands of the first family on [0,4]^2, and swapping strands
// is detected.
bool criterion5() {
  bool ok = true;
  IdealFamily family = example1();
  RationalSeriesSum eq1 = parse_series(detail::read_file(kDataDir + "/eq1.series"));
  RationalSeriesSum eq2 = parse_series(detail::read_file(kDataDir + "/eq2.series"));

  ComparisonReport gens = compare_series_to_betti(eq1, family, 0, 4);
  check(ok, gens.ok() && gens.cells_checked == 25, "generator series matches j=0");
  ComparisonReport syz = compare_series_to_betti(eq2, family, 1, 4);
  check(ok, syz.ok() && syz.cells_checked == 25, "syzygy series matches j=1");

  ComparisonReport crossed = compare_series_to_betti(eq1, family, 1, 2);
  check(ok, !crossed.mismatches.empty(), "crossed strands are flagged");
  return ok;
}

// Criterion 6: random equigenerated families fit a single linear form with
// slope vector (d_1,...,d_m), retrying from origins (1,1), (2,2), (3,3).
bool criterion6() {
  bool ok = true;
  std::mt19937 rng(20260817);
  const std::vector<std::string> names{"x", "y", "z"};
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t m = 1 + trial % 2;
    std::size_t n = 1 + rng() % 3;
    RingContext ring(std::vector<std::string>(names.begin(), names.begin() + n));
    std::vector<MonomialIdeal> ideals;
    std::vector<Exponent> degrees;
    for (std::size_t i = 0; i < m; ++i) {
      Exponent d = 1 + static_cast<Exponent>(rng() % 3);
      ideals.push_back(oracle::random_equigenerated_ideal(rng, ring, 3, d));
      degrees.push_back(d);
    }
    IdealFamily family(ring, ideals);
    GridTable table = tabulate(family, Invariant::reg(), 5);
    bool fitted = false;
    for (Exponent o = 1; o <= 3 && !fitted; ++o) {
      try {
        EnvelopeFit fit =
            fit_envelope(table, candidate_slopes(family), MultiExponent(m, o));
        check(ok, check_corollary2(family, fit), "single-degree slope check");
        check(ok, fit.forms.size() == 1, "exactly one linear form");
        check(ok, fit.forms.front().slopes == degrees, "slopes are the degrees");
        fitted = true;
      } catch (const FitFailedError&) {
      }
    }
    if (!check(ok, fitted, "fit succeeded by origin (3,...,3)"))
      std::cerr << "  trial " << trial << " never stabilized\n";
  }
  return ok;
}

// Criterion 7: Koszul Betti numbers agree with the Taylor complex oracle on
// 50 random ideals in up to three variables.
bool criterion7() {
  bool ok = true;
  std::mt19937 rng(424242);
  const std::vector<std::string> names{"x", "y", "z"};
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 3;
    RingContext ring(std::vector<std::string>(names.begin(), names.begin() + n));
    MonomialIdeal ideal = oracle::random_ideal(rng, ring, 6, 4);
    if (!check(ok, flatten(multigraded_betti(ideal)) == oracle::taylor_betti(ideal.gens()),
               "multigraded Betti table matches the Taylor oracle"))
      std::cerr << "  trial " << trial << " diverged\n";
  }
  return ok;
}

// Criterion 8: structural identities, rho consistency, and serialization
// round-trips across the random corpus and the worked series.
bool criterion8() {
  bool ok = true;

  std::mt19937 rng(910007);
  const std::vector<std::string> names{"x", "y", "z"};
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 3;
    RingContext ring(std::vector<std::string>(names.begin(), names.begin() + n));
    MonomialIdeal ideal = oracle::random_ideal(rng, ring, 6, 4);
    BettiTable table = multigraded_betti(ideal);
    check(ok, table.alternating_sum() == 1, "alternating Betti sum is 1");
    // Minimality forces the bottom degree of each step up by at least one;
    // the top degrees t_j can stall from j = 1 on (e.g. t = (7,8,8) for
    // (x^2yz^2, xyz^4, xy^2z^3, x^4z^3)), so only t_1 > t_0 is asserted.
    auto min_degree = [&table](int j) {
      Exponent best = 0;
      bool first = true;
      for (const auto& [b, dim] : table.by_j.at(j)) {
        Exponent d = 0;
        for (Exponent x : b) d += x;
        if (first || d < best) best = d;
        first = false;
      }
      return best;
    };
    for (int j = 0; j < table.pd(); ++j) {
      check(ok, table.t(j).has_value() && table.t(j + 1).has_value(),
            "no gaps below pd");
      check(ok, min_degree(j + 1) >= min_degree(j) + 1,
            "minimal syzygy degrees strictly increase");
    }
    if (table.pd() >= 1)
      check(ok, *table.t(1) >= *table.t(0) + 1, "t_1 >= t_0 + 1");
    check(ok, betti_from_json(betti_to_json(table)) == table, "betti json round-trip");
  }

  IdealFamily one = example1();
  GridTable reg_table = tabulate(one, Invariant::reg(), 4);
  EnvelopeFit fit = fit_envelope(reg_table, candidate_slopes(one), {1, 1});
  std::set<std::vector<Exponent>> alphabet = candidate_slopes(one);
  for (const LinearForm& form : fit.forms)
    check(ok, alphabet.count(form.slopes) == 1, "fitted slopes are candidates");
  for (std::size_t i = 0; i < fit.forms.size(); ++i)
    check(ok, form_is_necessary(reg_table, fit, i), "each fitted form is necessary");
  for (const MultiExponent& a : grid_points(2, fit.region_origin, fit.verified_to)) {
    Exponent best = fit.forms.front().eval(a);
    for (const LinearForm& form : fit.forms) best = std::max(best, form.eval(a));
    check(ok, reg_table.values.at(a) == best, "envelope is tight on the region");
  }
  check(ok, fit_from_json(fit_to_json(fit)) == fit, "fit json round-trip");

  for (const std::string& name : {std::string("/eq1.series"), std::string("/eq2.series")}) {
    RationalSeriesSum series = parse_series(detail::read_file(kDataDir + name));
    for (const MultiExponent& a : grid_points(2, {0, 0}, 3)) {
      std::map<Exponent, long long> coeffs = coefficients_at(series, a);
      std::optional<Exponent> rho = rho_of_sum(series, a);
      if (coeffs.empty())
        check(ok, !rho.has_value(), "rho is -infinity on vanishing strands");
      else
        check(ok, rho == coeffs.rbegin()->first, "rho is the top nonzero degree");
    }
  }

  GridTable sparse = tabulate(one, Invariant::t(1), 2);
  check(ok, grid_from_json(grid_to_json(sparse)) == sparse, "grid json round-trip");
  for (const Invariant& kind : {Invariant::t(2), Invariant::reg(), Invariant::pd()})
    check(ok, invariant_from_json(invariant_to_json(kind)) == kind,
          "invariant json round-trip");
  return ok;
}

struct Criterion {
  std::string name;
  bool (*body)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"example1: t_0, t_1, reg follow max{2a1+a2, a1+2a2} on [0,6]^2", criterion1},
      {"example1: beta_0 = 1+a1+a2 and beta_1 = a1+a2 for a != 0", criterion2},
      {"example2: t_0, t_1, t_2, reg follow the three-piece rows on [1,4]^2", criterion3},
      {"envelope fits recover the exact forms with necessity certificates", criterion4},
      {"series strands match Betti strands on [0,4]^2 with crossed control", criterion5},
      {"equigenerated families fit one form with slopes (d_1,...,d_m)", criterion6},
      {"Koszul Betti tables equal the Taylor complex oracle on 50 ideals", criterion7},
      {"structural identities, rho consistency, json round-trips", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    bool pass = false;
    try {
      pass = criteria[i].body();
    } catch (const std::exception& e) {
      std::cerr << "  exception: " << e.what() << "\n";
    }
    std::cout << (pass ? "PASS" : "FAIL") << " [" << (i + 1) << "/8] "
              << criteria[i].name << "\n";
    if (!pass) ++failures;
  }
  if (failures) std::cout << failures << " criteria failed\n";
  else std::cout << "all criteria passed\n";
  return failures == 0 ? 0 : 1;
}
