#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "reglab/asymptotics.hpp"
#include "reglab/hilbert.hpp"
#include "reglab/monomial.hpp"
#include "reglab/resolution.hpp"

namespace reglab {

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(int line_, int column_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ", col " +
                           std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_) {}
};

namespace detail {

/// Scanner over one logical line; columns are 1-based for error messages.
struct LineCursor {
  const std::string& text;
  int line = 1;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  int col() const { return static_cast<int>(pos) + 1; }

  void skip_space() {
    while (!done() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  void expect(char c, const std::string& what) {
    if (done() || text[pos] != c) throw ParseError(line, col(), what);
    ++pos;
  }

  bool try_consume(char c) {
    if (!done() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect_keyword(const std::string& kw) {
    if (text.compare(pos, kw.size(), kw) != 0)
      throw ParseError(line, col(), "expected '" + kw + "'");
    pos += kw.size();
  }

  Exponent integer(bool allow_negative, const std::string& what) {
    skip_space();
    std::size_t start = pos;
    if (allow_negative) try_consume('-');
    std::size_t digits = pos;
    while (!done() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) throw ParseError(line, static_cast<int>(start) + 1, what);
    try {
      return static_cast<Exponent>(std::stoll(text.substr(start, pos - start)));
    } catch (const std::out_of_range&) {
      throw ParseError(line, static_cast<int>(start) + 1, "integer out of range");
    }
  }
};

inline std::string strip_comment(const std::string& raw) {
  std::size_t hash = raw.find('#');
  std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline bool blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// Matches the longest ring-variable name starting at the cursor; nullopt
/// when no name is a prefix here.
inline std::optional<std::size_t> match_variable(const LineCursor& cur,
                                                 const std::vector<std::string>& names) {
  std::optional<std::size_t> best;
  std::size_t best_len = 0;
  for (std::size_t v = 0; v < names.size(); ++v)
    if (names[v].size() > best_len &&
        cur.text.compare(cur.pos, names[v].size(), names[v]) == 0) {
      best = v;
      best_len = names[v].size();
    }
  return best;
}

inline Monomial parse_monomial(LineCursor& cur, const RingContext& ring,
                               char stop_at) {
  std::vector<Exponent> exps(ring.var_count(), 0);
  bool saw_factor = false;
  for (;;) {
    cur.skip_space();
    while (cur.try_consume('*')) cur.skip_space();
    if (cur.done() || cur.peek() == stop_at) break;
    if (cur.peek() == '1') {
      ++cur.pos;
      saw_factor = true;
      continue;
    }
    std::optional<std::size_t> var = match_variable(cur, ring.names);
    if (!var) {
      int at = cur.col();
      if (ident_char(cur.peek()) && !std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        std::size_t start = cur.pos;
        while (!cur.done() && ident_char(cur.peek())) ++cur.pos;
        throw ParseError(cur.line, at,
                         "unknown variable " + cur.text.substr(start, cur.pos - start));
      }
      throw ParseError(cur.line, at,
                       std::string("unexpected character '") + cur.peek() + "'");
    }
    cur.pos += ring.names[*var].size();
    Exponent e = 1;
    cur.skip_space();
    if (cur.try_consume('^')) {
      cur.skip_space();
      e = cur.integer(false, "expected exponent after '^'");
    }
    exps[*var] = checked_add(exps[*var], e);
    saw_factor = true;
  }
  if (!saw_factor) throw ParseError(cur.line, cur.col(), "empty generator");
  return Monomial(exps);
}

}  // namespace detail

/// Parses the ideal-family text format: a `ring` line naming the variables,
/// then one `Ik = m1, m2, ...` line per ideal with k counting from 1.
/// `#` starts a comment; generators are *-free products of name^exp factors.
inline IdealFamily parse_family(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::optional<RingContext> ring;
  std::vector<MonomialIdeal> ideals;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_comment(raw);
    if (detail::blank(line)) continue;
    detail::LineCursor cur{line, lineno, 0};
    cur.skip_space();
    if (!ring) {
      cur.expect_keyword("ring");
      std::vector<std::string> names;
      for (;;) {
        cur.skip_space();
        if (cur.done()) break;
        if (!detail::ident_char(cur.peek()) ||
            std::isdigit(static_cast<unsigned char>(cur.peek())))
          throw ParseError(lineno, cur.col(), "expected variable name");
        std::size_t start = cur.pos;
        while (!cur.done() && detail::ident_char(cur.peek())) ++cur.pos;
        std::string name = line.substr(start, cur.pos - start);
        for (const std::string& seen : names)
          if (seen == name)
            throw ParseError(lineno, static_cast<int>(start) + 1,
                             "duplicate variable " + name);
        names.push_back(std::move(name));
      }
      if (names.empty())
        throw ParseError(lineno, cur.col(), "ring line needs at least one variable");
      ring.emplace(names);
      continue;
    }
    std::string label = "I" + std::to_string(ideals.size() + 1);
    int label_col = cur.col();
    if (line.compare(cur.pos, label.size(), label) != 0 ||
        (cur.pos + label.size() < line.size() &&
         detail::ident_char(line[cur.pos + label.size()])))
      throw ParseError(lineno, label_col, "expected ideal line " + label + " = ...");
    cur.pos += label.size();
    cur.skip_space();
    cur.expect('=', "expected '=' after " + label);
    cur.skip_space();
    if (cur.done())
      throw ParseError(lineno, cur.col(), "zero ideal " + label + ": no generators");
    std::vector<Monomial> gens;
    for (;;) {
      gens.push_back(detail::parse_monomial(cur, *ring, ','));
      cur.skip_space();
      if (cur.done()) break;
      cur.expect(',', "expected ',' between generators");
    }
    ideals.emplace_back(*ring, gens);
  }
  if (!ring) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing ring line");
  if (ideals.empty()) throw ParseError(lineno, 1, "no ideals declared");
  return IdealFamily(*ring, ideals);
}

/// Parses the series text format, one term per line:
///   shift: x^v s^(w1,...,wm) ; factors: (d,i) (d,i) ...
/// Factor axes are written 1-based.
inline RationalSeriesSum parse_series(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  RationalSeriesSum series;
  bool have_m = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_comment(raw);
    if (detail::blank(line)) continue;
    detail::LineCursor cur{line, lineno, 0};
    cur.skip_space();
    cur.expect_keyword("shift");
    cur.skip_space();
    cur.expect(':', "expected ':' after shift");
    cur.skip_space();
    cur.expect('x', "expected x^v");
    cur.expect('^', "expected '^' after x");
    RationalTerm term;
    term.shift_x = cur.integer(true, "expected integer x-shift");
    cur.skip_space();
    cur.expect('s', "expected s^(w1,...,wm)");
    cur.expect('^', "expected '^' after s");
    cur.skip_space();
    cur.expect('(', "expected '(' in s-shift");
    for (;;) {
      term.shift_s.push_back(cur.integer(true, "expected integer s-shift entry"));
      cur.skip_space();
      if (cur.try_consume(')')) break;
      cur.expect(',', "expected ',' or ')' in s-shift");
    }
    if (!have_m) {
      series.m = term.shift_s.size();
      have_m = true;
    } else if (term.shift_s.size() != series.m) {
      throw ParseError(lineno, 1, "inconsistent s-shift arity across terms");
    }
    cur.skip_space();
    cur.expect(';', "expected ';' before factors");
    cur.skip_space();
    cur.expect_keyword("factors");
    cur.skip_space();
    cur.expect(':', "expected ':' after factors");
    for (;;) {
      cur.skip_space();
      if (cur.done()) break;
      int group_col = cur.col();
      cur.expect('(', "expected '(d,i)' factor");
      Exponent d = cur.integer(false, "expected factor degree");
      cur.skip_space();
      cur.expect(',', "expected ',' in factor");
      Exponent axis = cur.integer(false, "expected factor axis");
      cur.skip_space();
      cur.expect(')', "expected ')' after factor");
      if (d < 1) throw ParseError(lineno, group_col, "factor degree must be positive");
      if (axis < 1 || static_cast<std::size_t>(axis) > series.m)
        throw ParseError(lineno, group_col, "factor axis out of range");
      term.factors.push_back(SeriesFactor{d, static_cast<std::size_t>(axis - 1)});
    }
    series.terms.push_back(std::move(term));
  }
  if (series.terms.empty())
    throw ParseError(lineno == 0 ? 1 : lineno, 1, "series has no terms");
  return series;
}

inline std::string monomial_to_string(const Monomial& mono, const RingContext& ring) {
  if (mono.is_one()) return "1";
  std::ostringstream out;
  bool wrote = false;
  for (std::size_t i = 0; i < ring.var_count(); ++i) {
    if (mono.exponents[i] == 0) continue;
    if (wrote) out << " ";
    out << ring.names[i];
    if (mono.exponents[i] != 1) out << "^" << mono.exponents[i];
    wrote = true;
  }
  return out.str();
}

// JSON wire formats. Every emitter has a matching parser and the pair
// round-trips exactly.

inline nlohmann::json betti_to_json(const BettiTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [j, strand] : table.by_j)
    for (const auto& [b, dim] : strand)
      entries.push_back({{"j", j}, {"b", b}, {"dim", dim}});
  nlohmann::json t = nlohmann::json::array();
  for (int j = 0; j <= table.pd(); ++j) {
    std::optional<Exponent> tj = table.t(j);
    if (tj) t.push_back(*tj);
    else t.push_back(nullptr);
  }
  return {{"entries", entries},
          {"t", t},
          {"pd", table.pd()},
          {"reg", table.reg()}};
}

inline BettiTable betti_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw std::invalid_argument("betti json: missing entries array");
  BettiTable table;
  for (const nlohmann::json& e : j["entries"]) {
    std::vector<Exponent> b = e.at("b").get<std::vector<Exponent>>();
    table.add(e.at("j").get<int>(), b, e.at("dim").get<long long>());
  }
  if (j.contains("pd") && j["pd"].get<int>() != table.pd())
    throw std::invalid_argument("betti json: pd inconsistent with entries");
  if (j.contains("reg") && j["reg"].get<Exponent>() != table.reg())
    throw std::invalid_argument("betti json: reg inconsistent with entries");
  return table;
}

inline nlohmann::json invariant_to_json(const Invariant& kind) {
  switch (kind.kind) {
    case InvariantKind::T: return {{"kind", "t"}, {"j", kind.j}};
    case InvariantKind::Reg: return {{"kind", "reg"}};
    case InvariantKind::Pd: return {{"kind", "pd"}};
  }
  throw std::logic_error("unreachable invariant kind");
}

inline Invariant invariant_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "t") return Invariant::t(j.at("j").get<int>());
  if (kind == "reg") return Invariant::reg();
  if (kind == "pd") return Invariant::pd();
  throw std::invalid_argument("invariant json: unknown kind " + kind);
}

inline nlohmann::json grid_to_json(const GridTable& table) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& [a, value] : table.values) {
    nlohmann::json row = {{"a", a}};
    if (value) row["value"] = *value;
    else row["value"] = nullptr;
    values.push_back(std::move(row));
  }
  nlohmann::json out = invariant_to_json(table.kind);
  out["m"] = table.m;
  out["grid_max"] = table.grid_max;
  out["values"] = std::move(values);
  return out;
}

inline GridTable grid_from_json(const nlohmann::json& j) {
  GridTable table;
  table.kind = invariant_from_json(j);
  table.m = j.at("m").get<std::size_t>();
  table.grid_max = j.at("grid_max").get<Exponent>();
  for (const nlohmann::json& row : j.at("values")) {
    MultiExponent a = row.at("a").get<MultiExponent>();
    if (a.size() != table.m)
      throw std::invalid_argument("grid json: exponent arity mismatch");
    if (row.at("value").is_null())
      table.values[a] = std::nullopt;
    else
      table.values[a] = row.at("value").get<Exponent>();
  }
  return table;
}

/// One row per a, columns a1..am then the value; -infinity prints as -inf.
inline std::string grid_to_csv(const GridTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.m; ++i) out << "a" << (i + 1) << ",";
  out << "value\n";
  for (const auto& [a, value] : table.values) {
    for (Exponent ai : a) out << ai << ",";
    if (value) out << *value;
    else out << "-inf";
    out << "\n";
  }
  return out.str();
}

inline nlohmann::json form_to_json(const LinearForm& form) {
  return {{"slopes", form.slopes}, {"intercept", form.intercept}};
}

inline LinearForm form_from_json(const nlohmann::json& j) {
  return LinearForm{j.at("slopes").get<std::vector<Exponent>>(),
                    j.at("intercept").get<Exponent>()};
}

inline nlohmann::json fit_to_json(const EnvelopeFit& fit) {
  nlohmann::json forms = nlohmann::json::array();
  for (const LinearForm& f : fit.forms) forms.push_back(form_to_json(f));
  nlohmann::json out = invariant_to_json(fit.kind);
  out["forms"] = std::move(forms);
  out["region_origin"] = fit.region_origin;
  out["verified_to"] = fit.verified_to;
  return out;
}

inline EnvelopeFit fit_from_json(const nlohmann::json& j) {
  EnvelopeFit fit;
  fit.kind = invariant_from_json(j);
  for (const nlohmann::json& f : j.at("forms")) fit.forms.push_back(form_from_json(f));
  fit.region_origin = j.at("region_origin").get<MultiExponent>();
  fit.verified_to = j.at("verified_to").get<Exponent>();
  return fit;
}

}  // namespace reglab
