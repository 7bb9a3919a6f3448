#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "reglab/asymptotics.hpp"
#include "reglab/hilbert.hpp"
#include "reglab/io.hpp"
#include "reglab/monomial.hpp"
#include "reglab/resolution.hpp"

namespace reglab {

/// One CLI invocation. origin/exp are resolved to all-ones of the family's
/// arity when left unset.
struct RunConfig {
  std::string command;
  std::string input_path;
  std::string series_path;
  Exponent grid_max = 6;
  std::optional<MultiExponent> origin;
  std::optional<MultiExponent> exp;
  std::optional<int> j;
  std::string kind = "reg";
  std::string output = "text";
  unsigned threads = 0;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string join_exponent(const MultiExponent& a, const char* sep = ",") {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out << sep;
    out << a[i];
  }
  return out.str();
}

inline std::string bracketed(const MultiExponent& a) {
  return "[" + join_exponent(a) + "]";
}

inline nlohmann::json config_to_json(const RunConfig& config) {
  nlohmann::json j;
  j["command"] = config.command;
  j["input"] = config.input_path;
  j["series"] = config.series_path.empty() ? nlohmann::json(nullptr)
                                           : nlohmann::json(config.series_path);
  j["grid_max"] = config.grid_max;
  j["origin"] = config.origin ? nlohmann::json(*config.origin) : nlohmann::json(nullptr);
  j["exp"] = config.exp ? nlohmann::json(*config.exp) : nlohmann::json(nullptr);
  j["j"] = config.j ? nlohmann::json(*config.j) : nlohmann::json(nullptr);
  j["kind"] = config.kind;
  j["output"] = config.output;
  j["threads"] = config.threads;
  return j;
}

inline void emit_json(std::ostream& out, const RunConfig& config,
                      nlohmann::json result) {
  nlohmann::json envelope;
  envelope["config"] = config_to_json(config);
  envelope["result"] = std::move(result);
  out << envelope.dump(2) << "\n";
}

inline void emit_json_error(std::ostream& out, const RunConfig& config,
                            nlohmann::json error) {
  nlohmann::json envelope;
  envelope["config"] = config_to_json(config);
  envelope["error"] = std::move(error);
  out << envelope.dump(2) << "\n";
}

inline MultiExponent resolved_or_ones(const std::optional<MultiExponent>& given,
                                      std::size_t m, const char* what) {
  if (!given) return MultiExponent(m, 1);
  if (given->size() != m)
    throw std::invalid_argument(std::string(what) + " has wrong arity for this family");
  for (Exponent v : *given)
    if (v < 0) throw std::invalid_argument(std::string(what) + " must be nonnegative");
  return *given;
}

inline Invariant resolve_kind(const RunConfig& config) {
  if (config.kind == "reg") return Invariant::reg();
  if (config.kind == "t") return Invariant::t(config.j.value_or(0));
  throw std::invalid_argument("unknown kind: " + config.kind + " (expected t or reg)");
}

inline nlohmann::json strand_to_json(const std::map<Exponent, long long>& strand) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [u, count] : strand) rows.push_back({u, count});
  return rows;
}

inline int run_gens(const RunConfig& config, const IdealFamily& family,
                    std::ostream& out) {
  MultiExponent a = resolved_or_ones(config.exp, family.size(), "--exp");
  MonomialIdeal ideal = power_product(family, a);
  if (config.output == "json") {
    nlohmann::json gens = nlohmann::json::array();
    nlohmann::json degrees = nlohmann::json::array();
    for (const Monomial& g : ideal.gens()) {
      gens.push_back(monomial_to_string(g, ideal.ring()));
      degrees.push_back(g.total_degree());
    }
    emit_json(out, config,
              {{"exponent", a}, {"generators", gens}, {"degrees", degrees}});
  } else {
    out << "I^(" << join_exponent(a) << "): " << ideal.gens().size()
        << " minimal generators\n";
    for (const Monomial& g : ideal.gens())
      out << monomial_to_string(g, ideal.ring()) << "\n";
  }
  return 0;
}

inline int run_betti(const RunConfig& config, const IdealFamily& family,
                     std::ostream& out) {
  MultiExponent a = resolved_or_ones(config.exp, family.size(), "--exp");
  BettiTable table = multigraded_betti(power_product(family, a));
  if (config.output == "json") {
    emit_json(out, config, betti_to_json(table));
    return 0;
  }
  for (const auto& [j, strand] : table.by_j) {
    out << "j=" << j << ":";
    for (const auto& [b, dim] : strand)
      out << " b=(" << join_exponent(b) << ") dim=" << dim;
    out << "\n";
  }
  out << "t:";
  for (int j = 0; j <= table.pd(); ++j) out << " " << *table.t(j);
  out << "\npd=" << table.pd() << " reg=" << table.reg() << "\n";
  return 0;
}

inline int run_table(const RunConfig& config, const IdealFamily& family,
                     std::ostream& out) {
  Invariant kind = resolve_kind(config);
  GridTable table = tabulate(family, kind, config.grid_max, config.threads);
  if (config.output == "json") {
    emit_json(out, config, grid_to_json(table));
  } else if (config.output == "csv") {
    out << grid_to_csv(table);
  } else {
    out << kind.name() << " over [0," << table.grid_max << "]^" << table.m << "\n";
    for (const auto& [a, value] : table.values) {
      out << "(" << join_exponent(a) << ") -> ";
      if (value) out << *value;
      else out << "-inf";
      out << "\n";
    }
  }
  return 0;
}

inline int run_fit(const RunConfig& config, const IdealFamily& family,
                   std::ostream& out, std::ostream& err) {
  Invariant kind = resolve_kind(config);
  MultiExponent origin = resolved_or_ones(config.origin, family.size(), "--origin");
  GridTable table = tabulate(family, kind, config.grid_max, config.threads);
  try {
    EnvelopeFit fit = fit_envelope(table, candidate_slopes(family), origin);
    MultiExponent corner(family.size(), config.grid_max);
    if (config.output == "json") {
      nlohmann::json result = fit_to_json(fit);
      result["pretty"] = fit.pretty();
      emit_json(out, config, result);
    } else {
      out << kind.name() << "(I^a) = " << fit.pretty() << " verified on "
          << bracketed(origin) << ".." << bracketed(corner) << "\n";
    }
    return 0;
  } catch (const FitFailedError& failure) {
    MultiExponent retry = origin;
    for (Exponent& v : retry) ++v;
    if (config.output == "json") {
      emit_json_error(out, config,
                      {{"type", "fit_failed"},
                       {"witness", failure.witness},
                       {"message", failure.what()},
                       {"suggest_origin", retry}});
    }
    err << "fit failed for " << kind.name() << " at a=(" << join_exponent(failure.witness)
        << "): " << failure.what() << "\n";
    err << "retry with --origin " << join_exponent(retry) << "\n";
    return 1;
  }
}

inline int run_pd(const RunConfig& config, const IdealFamily& family,
                  std::ostream& out, std::ostream& err) {
  try {
    PdStability stable = pd_stability(family, config.grid_max, config.threads);
    MultiExponent corner(family.size(), config.grid_max);
    if (config.output == "json") {
      emit_json(out, config,
                {{"pd", stable.pd},
                 {"origin", stable.origin},
                 {"verified_to", config.grid_max}});
    } else {
      out << "pd(I^a) = " << stable.pd << " stable on " << bracketed(stable.origin)
          << ".." << bracketed(corner) << "\n";
    }
    return 0;
  } catch (const NotStabilizedError& failure) {
    if (config.output == "json")
      emit_json_error(out, config,
                      {{"type", "not_stabilized"}, {"message", failure.what()}});
    err << "pd did not stabilize: " << failure.what() << "\n";
    err << "retry with a larger --grid\n";
    return 1;
  }
}

inline int run_hilbert_check(const RunConfig& config, const IdealFamily& family,
                             std::ostream& out, std::ostream& err) {
  if (config.series_path.empty())
    throw std::invalid_argument("hilbert-check requires --series");
  if (!config.j) throw std::invalid_argument("hilbert-check requires --j");
  RationalSeriesSum series = parse_series(read_file(config.series_path));
  ComparisonReport report = compare_series_to_betti(series, family, *config.j,
                                                    config.grid_max, config.threads);
  if (config.output == "json") {
    nlohmann::json mismatches = nlohmann::json::array();
    for (const StrandMismatch& miss : report.mismatches)
      mismatches.push_back({{"a", miss.a},
                            {"series", strand_to_json(miss.from_series)},
                            {"betti", strand_to_json(miss.from_betti)}});
    emit_json(out, config,
              {{"j", report.j},
               {"grid_max", report.grid_max},
               {"cells_checked", report.cells_checked},
               {"mismatches", mismatches}});
  } else {
    out << report.mismatches.size() << " mismatches\n";
    for (const StrandMismatch& miss : report.mismatches) {
      out << "a=(" << join_exponent(miss.a) << ") series strand {";
      bool first = true;
      for (const auto& [u, count] : miss.from_series) {
        if (!first) out << ", ";
        out << u << ":" << count;
        first = false;
      }
      out << "} betti strand {";
      first = true;
      for (const auto& [u, count] : miss.from_betti) {
        if (!first) out << ", ";
        out << u << ":" << count;
        first = false;
      }
      out << "}\n";
    }
  }
  if (!report.ok()) err << "series does not match Betti strands\n";
  return report.ok() ? 0 : 1;
}

}  // namespace detail

/// Executes one configured command. Returns 0 on success, 1 when a fit,
/// stability, or series check fails, 2 on invalid input.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.grid_max < 1) throw std::invalid_argument("--grid must be >= 1");
    if (config.output != "text" && config.output != "json" && config.output != "csv")
      throw std::invalid_argument("unknown output format: " + config.output);
    if (config.output == "csv" && config.command != "table")
      throw std::invalid_argument("csv output is only available for table");
    IdealFamily family = parse_family(detail::read_file(config.input_path));
    if (config.command == "gens") return detail::run_gens(config, family, out);
    if (config.command == "betti") return detail::run_betti(config, family, out);
    if (config.command == "table") return detail::run_table(config, family, out);
    if (config.command == "fit") return detail::run_fit(config, family, out, err);
    if (config.command == "pd") return detail::run_pd(config, family, out, err);
    if (config.command == "hilbert-check")
      return detail::run_hilbert_check(config, family, out, err);
    throw std::invalid_argument("unknown command: " + config.command);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const EmptyRegionError& e) {
    err << "invalid region: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    err << "arithmetic overflow: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace reglab
