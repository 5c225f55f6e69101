#pragma once

// Mixed-integer linear models of the three variants, written in CPLEX LP
// format, plus a parser for the same dialect and a checker that substitutes a
// concrete solution (and its canonical auxiliary values) into every row.
//
// Variables
//   y_i      hub i is on the ring                          binary
//   x_u_v    ring edge {u,v}, u < v                        binary
//   z_t_h    terminal t is served by hub h                 binary
//   f_u_v    commodity flow on arc (u,v)                   >= 0
// resilient variant (uncertain h only)
//   e_h      backup edge rate if h fails                   >= 0
//   a_t_h    reconnection rate of t if its hub h fails     >= 0
//   rho_h    repair rate of h                              >= 0
//   eta      worst repair rate                             >= 0
// survivable variant
//   b_u_w    pre-built backup edge {u,w}, u < w            binary
//   g_t_h    pre-built backup arc t -> h                   binary
//
// The ring is a 2-regular subgraph on the hubs kept connected by a single
// commodity shipped from the depot, one unit to every other hub.

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ringstar/evaluate.hpp"
#include "ringstar/model.hpp"

namespace ringstar {

enum class VarType { Continuous, Binary };

struct Variable {
  std::string name;
  VarType type = VarType::Continuous;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();

  bool operator==(const Variable&) const = default;
};

struct Term {
  double coef;
  std::string var;

  bool operator==(const Term&) const = default;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Row {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;

  bool operator==(const Row&) const = default;
};

struct ModelDocument {
  std::string title;
  std::vector<Variable> variables;
  std::vector<Term> objective;
  std::vector<Row> rows;

  bool operator==(const ModelDocument&) const = default;

  std::size_t count_prefix(std::string_view prefix) const {
    return static_cast<std::size_t>(std::count_if(variables.begin(), variables.end(), [&](const Variable& v) {
      return v.name.size() > prefix.size() && v.name.compare(0, prefix.size(), prefix) == 0;
    }));
  }
};

// Names of variables referenced in the objective or a row but never declared.
inline std::vector<std::string> undeclared_references(const ModelDocument& doc) {
  std::set<std::string> declared;
  for (const auto& v : doc.variables) declared.insert(v.name);
  std::set<std::string> missing;
  for (const auto& t : doc.objective)
    if (!declared.count(t.var)) missing.insert(t.var);
  for (const auto& r : doc.rows)
    for (const auto& t : r.terms)
      if (!declared.count(t.var)) missing.insert(t.var);
  return {missing.begin(), missing.end()};
}

namespace milp {

inline std::string y(NodeId i) { return "y_" + std::to_string(i); }
inline std::string x(NodeId u, NodeId v) {
  auto [a, b] = std::minmax(u, v);
  return "x_" + std::to_string(a) + "_" + std::to_string(b);
}
inline std::string z(NodeId t, NodeId h) { return "z_" + std::to_string(t) + "_" + std::to_string(h); }
inline std::string f(NodeId u, NodeId v) { return "f_" + std::to_string(u) + "_" + std::to_string(v); }
inline std::string e(NodeId h) { return "e_" + std::to_string(h); }
inline std::string a(NodeId t, NodeId h) { return "a_" + std::to_string(t) + "_" + std::to_string(h); }
inline std::string rho(NodeId h) { return "rho_" + std::to_string(h); }
inline std::string eta() { return "eta"; }
inline std::string b(NodeId u, NodeId w) {
  auto [p, q] = std::minmax(u, w);
  return "b_" + std::to_string(p) + "_" + std::to_string(q);
}
inline std::string g(NodeId t, NodeId h) { return "g_" + std::to_string(t) + "_" + std::to_string(h); }

class Builder {
 public:
  explicit Builder(std::string title) { doc_.title = std::move(title); }

  void binary(std::string name) { doc_.variables.push_back({std::move(name), VarType::Binary, 0.0, 1.0}); }
  void continuous(std::string name) { doc_.variables.push_back({std::move(name), VarType::Continuous}); }

  void cost(double coef, std::string var) {
    if (coef != 0.0) doc_.objective.push_back({coef, std::move(var)});
  }

  void row(std::vector<Term> terms, Sense sense, double rhs) {
    std::erase_if(terms, [](const Term& t) { return t.coef == 0.0; });
    doc_.rows.push_back({"c" + std::to_string(doc_.rows.size() + 1), std::move(terms), sense, rhs});
  }

  ModelDocument take() { return std::move(doc_); }

 private:
  ModelDocument doc_;
};

}  // namespace milp

inline ModelDocument export_model(const Instance& inst, Problem problem) {
  auto violations = validate_instance(inst);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  using namespace milp;
  const int n = inst.n;
  const NodeId depot = inst.depot;
  Builder m(std::string(to_string(problem)));

  for (NodeId i = 0; i < n; ++i) m.binary(y(i));
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) m.binary(x(u, v));
  for (NodeId t = 0; t < n; ++t)
    for (NodeId h = 0; h < n; ++h)
      if (t != h) m.binary(z(t, h));
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v) m.continuous(f(u, v));

  for (NodeId i = 0; i < n; ++i) m.cost(inst.open_cost[i], y(i));
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) m.cost(inst.ring_cost(u, v), x(u, v));
  for (NodeId t = 0; t < n; ++t)
    for (NodeId h = 0; h < n; ++h)
      if (t != h) m.cost(inst.arc_cost(t, h), z(t, h));

  // Ring degree.
  for (NodeId u = 0; u < n; ++u) {
    std::vector<Term> terms;
    for (NodeId v = 0; v < n; ++v)
      if (v != u) terms.push_back({1.0, x(u, v)});
    terms.push_back({-2.0, y(u)});
    m.row(std::move(terms), Sense::Equal, 0.0);
  }
  // Every node is a hub or served by exactly one hub.
  for (NodeId t = 0; t < n; ++t) {
    std::vector<Term> terms;
    for (NodeId h = 0; h < n; ++h)
      if (h != t) terms.push_back({1.0, z(t, h)});
    terms.push_back({1.0, y(t)});
    m.row(std::move(terms), Sense::Equal, 1.0);
  }
  for (NodeId t = 0; t < n; ++t)
    for (NodeId h = 0; h < n; ++h)
      if (t != h) m.row({{1.0, z(t, h)}, {-1.0, y(h)}}, Sense::LessEqual, 0.0);
  m.row({{1.0, y(depot)}}, Sense::Equal, 1.0);
  {
    std::vector<Term> terms;
    for (NodeId i = 0; i < n; ++i) terms.push_back({1.0, y(i)});
    m.row(std::move(terms), Sense::GreaterEqual, 3.0);
  }
  // Connectivity: the depot ships one unit to every other hub along ring edges.
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v) m.row({{1.0, f(u, v)}, {-(n - 1.0), x(u, v)}}, Sense::LessEqual, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    std::vector<Term> terms;
    for (NodeId u = 0; u < n; ++u) {
      if (u == v) continue;
      terms.push_back({1.0, f(u, v)});
      terms.push_back({-1.0, f(v, u)});
    }
    if (v == depot) {
      for (NodeId w = 0; w < n; ++w)
        if (w != depot) terms.push_back({1.0, y(w)});
    } else {
      terms.push_back({-1.0, y(v)});
    }
    m.row(std::move(terms), Sense::Equal, 0.0);
  }

  if (problem == Problem::Rrsp) {
    std::vector<NodeId> uncertain;
    for (NodeId h = 0; h < n; ++h)
      if (!inst.is_certain(h)) uncertain.push_back(h);
    for (NodeId h : uncertain) {
      m.continuous(e(h));
      for (NodeId t = 0; t < n; ++t)
        if (t != h) m.continuous(a(t, h));
      m.continuous(rho(h));
    }
    m.continuous(eta());
    m.cost(inst.failure_budget, eta());

    for (NodeId h : uncertain) {
      // e_h >= c'_uw when u-h-w is a ring path.
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId w = u + 1; w < n; ++w) {
          if (u == h || w == h) continue;
          const double rate = inst.backup_edge_rate(u, w);
          if (rate == 0.0) continue;
          m.row({{1.0, e(h)}, {-rate, x(u, h)}, {-rate, x(h, w)}}, Sense::GreaterEqual, -rate);
        }
      }
      // a_t_h >= d'_tv (z_t_h - sum of hubs ranked before v for t).
      for (NodeId t = 0; t < n; ++t) {
        if (t == h) continue;
        std::vector<NodeId> ranked;
        for (NodeId v = 0; v < n; ++v)
          if (v != t && v != h) ranked.push_back(v);
        std::stable_sort(ranked.begin(), ranked.end(), [&](NodeId p, NodeId q) {
          return inst.backup_arc_rate(t, p) < inst.backup_arc_rate(t, q);
        });
        for (std::size_t k = 0; k < ranked.size(); ++k) {
          const double rate = inst.backup_arc_rate(t, ranked[k]);
          if (rate == 0.0) continue;
          std::vector<Term> terms{{1.0, a(t, h)}, {-rate, z(t, h)}};
          for (std::size_t j = 0; j < k; ++j) terms.push_back({rate, y(ranked[j])});
          m.row(std::move(terms), Sense::GreaterEqual, 0.0);
        }
      }
      std::vector<Term> terms{{1.0, rho(h)}, {-1.0, e(h)}};
      for (NodeId t = 0; t < n; ++t)
        if (t != h) terms.push_back({-1.0, a(t, h)});
      m.row(std::move(terms), Sense::GreaterEqual, 0.0);
      m.row({{1.0, eta()}, {-1.0, rho(h)}}, Sense::GreaterEqual, 0.0);
    }
  }

  if (problem == Problem::Srsp) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId w = u + 1; w < n; ++w) m.binary(b(u, w));
    for (NodeId t = 0; t < n; ++t)
      for (NodeId h = 0; h < n; ++h)
        if (t != h) m.binary(g(t, h));
    for (NodeId u = 0; u < n; ++u)
      for (NodeId w = u + 1; w < n; ++w) m.cost(inst.ring_cost(u, w), b(u, w));
    for (NodeId t = 0; t < n; ++t)
      for (NodeId h = 0; h < n; ++h)
        if (t != h) m.cost(inst.arc_cost(t, h), g(t, h));

    for (NodeId h = 0; h < n; ++h) {
      if (inst.is_certain(h)) continue;
      for (NodeId u = 0; u < n; ++u)
        for (NodeId w = u + 1; w < n; ++w)
          if (u != h && w != h)
            m.row({{1.0, b(u, w)}, {-1.0, x(u, h)}, {-1.0, x(h, w)}}, Sense::GreaterEqual, -1.0);
      for (NodeId t = 0; t < n; ++t) {
        if (t == h) continue;
        std::vector<Term> terms;
        for (NodeId v = 0; v < n; ++v)
          if (v != h && v != t) terms.push_back({1.0, g(t, v)});
        terms.push_back({-1.0, z(t, h)});
        m.row(std::move(terms), Sense::GreaterEqual, 0.0);
      }
    }
    for (NodeId t = 0; t < n; ++t)
      for (NodeId h = 0; h < n; ++h)
        if (t != h) m.row({{1.0, g(t, h)}, {-1.0, y(h)}}, Sense::LessEqual, 0.0);
  }
  return m.take();
}

// ---------------------------------------------------------------------------
// LP text
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline constexpr std::size_t kMaxLine = 255;

// Appends " + 3 x" style terms, wrapping before kMaxLine.
inline void write_terms(std::string& out, std::string& line, const std::vector<Term>& terms) {
  auto push = [&](const std::string& piece) {
    if (line.size() + piece.size() > kMaxLine - 1) {
      out += line;
      out += '\n';
      line = "  ";
    }
    line += piece;
  };
  if (terms.empty()) {
    push(" 0");
    return;
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    std::string piece;
    double c = t.coef;
    if (c < 0) {
      piece = " - ";
      c = -c;
    } else if (i > 0) {
      piece = " + ";
    } else {
      piece = " ";
    }
    if (c != 1.0) piece += format_number(c) + " ";
    piece += t.var;
    push(piece);
  }
}

}  // namespace detail

inline std::string write_lp(const ModelDocument& doc) {
  std::string out = "\\ Problem: " + doc.title + "\n";
  out += "Minimize\n";
  std::string line = " obj:";
  detail::write_terms(out, line, doc.objective);
  out += line + "\n";
  out += "Subject To\n";
  for (const auto& r : doc.rows) {
    line = " " + r.name + ":";
    detail::write_terms(out, line, r.terms);
    const char* sense = r.sense == Sense::LessEqual ? " <= " : r.sense == Sense::GreaterEqual ? " >= " : " = ";
    std::string tail = sense + detail::format_number(r.rhs);
    if (line.size() + tail.size() > detail::kMaxLine - 1) {
      out += line + "\n";
      line = " ";
    }
    out += line + tail + "\n";
  }
  out += "Bounds\n";
  for (const auto& v : doc.variables) {
    if (v.type == VarType::Binary) continue;
    if (std::isinf(v.upper)) out += " " + v.name + " >= " + detail::format_number(v.lower) + "\n";
    else
      out += " " + detail::format_number(v.lower) + " <= " + v.name + " <= " + detail::format_number(v.upper) + "\n";
  }
  out += "Binary\n";
  line.clear();
  for (const auto& v : doc.variables) {
    if (v.type != VarType::Binary) continue;
    if (line.size() + v.name.size() + 1 > detail::kMaxLine - 1) {
      out += line + "\n";
      line.clear();
    }
    line += " " + v.name;
  }
  if (!line.empty()) out += line + "\n";
  out += "End\n";
  return out;
}

class LpParseError : public ParseError {
 public:
  using ParseError::ParseError;
};

namespace detail {

class LpLexer {
 public:
  explicit LpLexer(std::string_view text) {
    // Strip comments, keep everything else as one token stream with line
    // breaks preserved for section detection.
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      std::string_view ln = text.substr(pos, nl - pos);
      if (auto c = ln.find('\\'); c != std::string_view::npos) ln = ln.substr(0, c);
      lines_.emplace_back(ln);
      pos = nl + 1;
    }
  }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  std::vector<std::string> lines_;
};

inline std::string lower_case(std::string_view s) {
  std::string r(s);
  for (auto& ch : r) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return r;
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> toks;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '<' || ch == '>' || ch == '=') {
      std::string op(1, ch);
      if (i + 1 < s.size() && (s[i + 1] == '=' || s[i + 1] == '<' || s[i + 1] == '>')) op += s[++i];
      toks.push_back(op);
      ++i;
    } else if (ch == '+' || ch == '-' || ch == ':') {
      toks.emplace_back(1, ch);
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
             std::string_view("<>=+-:").find(s[j]) == std::string_view::npos) {
        // Keep exponents such as 1e-05 inside one token.
        ++j;
        if (j < s.size() && (s[j] == '-' || s[j] == '+') && (s[j - 1] == 'e' || s[j - 1] == 'E') &&
            std::isdigit(static_cast<unsigned char>(s[i])))
          ++j;
      }
      toks.emplace_back(s.substr(i, j - i));
      i = j;
    }
  }
  return toks;
}

inline bool parse_number(std::string_view tok, double& out) {
  if (tok == "inf" || tok == "+inf" || tok == "infinity") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

inline Sense parse_sense(const std::string& op) {
  if (op == "<=" || op == "=<" || op == "<") return Sense::LessEqual;
  if (op == ">=" || op == "=>" || op == ">") return Sense::GreaterEqual;
  if (op == "=") return Sense::Equal;
  throw LpParseError("unknown comparison '" + op + "'");
}

// Parses "[name:] terms" into terms; returns the name (possibly empty).
inline std::string parse_expression(std::vector<std::string>& toks, std::size_t& i, std::vector<Term>& terms) {
  std::string name;
  if (toks.size() > i + 1 && toks[i + 1] == ":") {
    name = toks[i];
    i += 2;
  }
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;
  while (i < toks.size()) {
    const std::string& tk = toks[i];
    if (tk == "<=" || tk == ">=" || tk == "=" || tk == "=<" || tk == "=>" || tk == "<" || tk == ">") break;
    if (tk == "+") {
      ++i;
      continue;
    }
    if (tk == "-") {
      sign = -sign;
      ++i;
      continue;
    }
    double num;
    if (parse_number(tk, num)) {
      coef = num;
      have_coef = true;
      ++i;
      // A bare constant followed by nothing or an operator is a zero expression.
      if (i >= toks.size() || toks[i] == "+" || toks[i] == "-" || toks[i].find_first_of("<>=") == 0) {
        if (num != 0.0) throw LpParseError("constant terms are not supported");
        sign = 1.0;
        coef = 1.0;
        have_coef = false;
      }
      continue;
    }
    terms.push_back({sign * coef, tk});
    sign = 1.0;
    coef = 1.0;
    have_coef = false;
    ++i;
  }
  if (have_coef) throw LpParseError("dangling coefficient");
  return name;
}

}  // namespace detail

inline ModelDocument parse_lp(std::string_view text) {
  enum class Section { None, Objective, Constraints, Bounds, Binary, General, End };
  ModelDocument doc;
  detail::LpLexer lexer(text);
  if (text.rfind("\\ Problem: ", 0) == 0) {
    auto nl = text.find('\n');
    doc.title = detail::trim(text.substr(11, nl - 11));
  }

  // Gather section bodies as token streams.
  Section section = Section::None;
  std::vector<std::string> objective_toks, constraint_toks;
  std::vector<std::string> bound_lines, binary_toks;
  for (const std::string& raw : lexer.lines()) {
    std::string ln = detail::trim(raw);
    if (ln.empty()) continue;
    std::string key = detail::lower_case(ln);
    if (key == "minimize" || key == "minimise" || key == "min") {
      section = Section::Objective;
      continue;
    }
    if (key == "maximize" || key == "maximise" || key == "max")
      throw LpParseError("only minimisation models are supported");
    if (key == "subject to" || key == "such that" || key == "st" || key == "s.t.") {
      section = Section::Constraints;
      continue;
    }
    if (key == "bounds") {
      section = Section::Bounds;
      continue;
    }
    if (key == "binary" || key == "binaries" || key == "bin") {
      section = Section::Binary;
      continue;
    }
    if (key == "general" || key == "generals" || key == "gen") {
      section = Section::General;
      continue;
    }
    if (key == "end") {
      section = Section::End;
      continue;
    }
    auto toks = detail::tokenize(ln);
    switch (section) {
      case Section::Objective:
        objective_toks.insert(objective_toks.end(), toks.begin(), toks.end());
        break;
      case Section::Constraints:
        constraint_toks.insert(constraint_toks.end(), toks.begin(), toks.end());
        break;
      case Section::Bounds:
        bound_lines.push_back(ln);
        break;
      case Section::Binary:
        binary_toks.insert(binary_toks.end(), toks.begin(), toks.end());
        break;
      case Section::General:
        throw LpParseError("general integer variables are not supported");
      case Section::None:
      case Section::End:
        throw LpParseError("text outside any section: " + ln);
    }
  }

  std::size_t i = 0;
  detail::parse_expression(objective_toks, i, doc.objective);
  if (i != objective_toks.size()) throw LpParseError("objective contains a comparison");

  i = 0;
  while (i < constraint_toks.size()) {
    Row row;
    row.name = detail::parse_expression(constraint_toks, i, row.terms);
    if (i >= constraint_toks.size()) throw LpParseError("constraint without comparison");
    row.sense = detail::parse_sense(constraint_toks[i++]);
    double sign = 1.0;
    while (i < constraint_toks.size() && (constraint_toks[i] == "-" || constraint_toks[i] == "+")) {
      if (constraint_toks[i] == "-") sign = -sign;
      ++i;
    }
    if (i >= constraint_toks.size() || !detail::parse_number(constraint_toks[i], row.rhs))
      throw LpParseError("constraint " + row.name + " lacks a numeric right-hand side");
    row.rhs *= sign;
    ++i;
    doc.rows.push_back(std::move(row));
  }

  // Variables: declared in bounds or binary sections, in order of first
  // appearance in those sections.
  std::map<std::string, std::size_t> index;
  auto declare = [&](const std::string& name) -> Variable& {
    auto it = index.find(name);
    if (it != index.end()) return doc.variables[it->second];
    index[name] = doc.variables.size();
    doc.variables.push_back({name});
    return doc.variables.back();
  };
  for (const std::string& ln : bound_lines) {
    auto toks = detail::tokenize(ln);
    // Merge unary minus into numbers.
    std::vector<std::string> merged;
    for (std::size_t k = 0; k < toks.size(); ++k) {
      if ((toks[k] == "-" || toks[k] == "+") && k + 1 < toks.size()) {
        merged.push_back((toks[k] == "-" ? "-" : "") + toks[k + 1]);
        ++k;
      } else {
        merged.push_back(toks[k]);
      }
    }
    double lo, hi;
    if (merged.size() == 2 && detail::lower_case(merged[1]) == "free") {
      auto& v = declare(merged[0]);
      v.lower = -std::numeric_limits<double>::infinity();
    } else if (merged.size() == 3 && detail::parse_number(merged[2], lo)) {
      auto& v = declare(merged[0]);
      Sense s = detail::parse_sense(merged[1]);
      if (s == Sense::GreaterEqual) v.lower = lo;
      else if (s == Sense::LessEqual) v.upper = lo;
      else v.lower = v.upper = lo;
    } else if (merged.size() == 5 && detail::parse_number(merged[0], lo) && detail::parse_number(merged[4], hi)) {
      auto& v = declare(merged[2]);
      v.lower = lo;
      v.upper = hi;
    } else {
      throw LpParseError("cannot read bound: " + ln);
    }
  }
  for (const std::string& name : binary_toks) {
    auto& v = declare(name);
    v.type = VarType::Binary;
    v.lower = 0.0;
    v.upper = 1.0;
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

using Point = std::map<std::string, double>;

// Values of every model variable at a feasible solution: design indicators,
// a depot-rooted flow along the ring, and the auxiliaries at the smallest
// values the rows allow.
inline Point canonical_point(const Instance& inst, const Solution& sol, Problem problem) {
  require_feasible(inst, sol);
  using namespace milp;
  const int n = inst.n;
  Point p;
  std::vector<char> hub(n, 0);
  for (NodeId h : sol.hubs) hub[h] = 1;
  for (NodeId i = 0; i < n; ++i) p[y(i)] = hub[i];
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) p[x(u, v)] = 0.0;
  for (NodeId t = 0; t < n; ++t)
    for (NodeId h = 0; h < n; ++h)
      if (t != h) p[z(t, h)] = sol.assignment[t] == h ? 1.0 : 0.0;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v) p[f(u, v)] = 0.0;

  // Rotate so the depot leads, then send k-1-i units out of position i.
  std::vector<NodeId> ring = sol.hubs;
  std::rotate(ring.begin(), std::find(ring.begin(), ring.end(), inst.depot), ring.end());
  const std::size_t k = ring.size();
  for (std::size_t i = 0; i < k; ++i) p[x(ring[i], ring[(i + 1) % k])] = 1.0;
  for (std::size_t i = 0; i + 1 < k; ++i) p[f(ring[i], ring[i + 1])] = static_cast<double>(k - 1 - i);

  if (problem == Problem::Rrsp) {
    auto pos = ring_positions(n, sol.hubs);
    double worst = 0.0;
    for (NodeId h = 0; h < n; ++h) {
      if (inst.is_certain(h)) continue;
      double edge = 0.0;
      if (hub[h]) {
        auto [u, w] = ring_neighbors(sol.hubs, static_cast<std::size_t>(pos[h]));
        edge = inst.backup_edge_rate(u, w);
      }
      p[e(h)] = edge;
      double total = edge;
      for (NodeId t = 0; t < n; ++t) {
        if (t == h) continue;
        double r = sol.assignment[t] == h
                       ? detail::cheapest_other_hub(inst.backup_arc_rate, sol.hubs, t, h).second
                       : 0.0;
        p[a(t, h)] = r;
        total += r;
      }
      p[rho(h)] = total;
      worst = std::max(worst, total);
    }
    p[eta()] = worst;
  }
  if (problem == Problem::Srsp) {
    BackupPlan plan = detail::srsp_plan(inst, sol);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId w = u + 1; w < n; ++w) p[b(u, w)] = plan.backup_edges.count({u, w}) ? 1.0 : 0.0;
    for (NodeId t = 0; t < n; ++t)
      for (NodeId h = 0; h < n; ++h)
        if (t != h) p[g(t, h)] = plan.backup_arcs.count({t, h}) ? 1.0 : 0.0;
  }
  return p;
}

struct SubstitutionResult {
  bool feasible = true;
  double objective = 0.0;
  std::vector<std::string> violated;  // row names, then variable names
};

// Evaluates every row, bound and integrality condition at the point.
// The point must assign exactly the declared variables.
inline SubstitutionResult check_substitution(const ModelDocument& doc, const Point& point,
                                             double tol = kTolerance) {
  if (point.size() != doc.variables.size())
    throw std::invalid_argument("point has " + std::to_string(point.size()) + " values, model declares " +
                                std::to_string(doc.variables.size()) + " variables");
  std::unordered_map<std::string, double> value;
  for (const auto& v : doc.variables) {
    auto it = point.find(v.name);
    if (it == point.end()) throw std::invalid_argument("point lacks a value for " + v.name);
    value.emplace(v.name, it->second);
  }
  SubstitutionResult r;
  auto eval = [&](const std::vector<Term>& terms) {
    double s = 0.0;
    for (const auto& t : terms) s += t.coef * value.at(t.var);
    return s;
  };
  r.objective = eval(doc.objective);
  for (const auto& row : doc.rows) {
    const double lhs = eval(row.terms);
    bool ok = row.sense == Sense::LessEqual      ? lhs <= row.rhs + tol
              : row.sense == Sense::GreaterEqual ? lhs >= row.rhs - tol
                                                 : std::abs(lhs - row.rhs) <= tol;
    if (!ok) r.violated.push_back(row.name);
  }
  for (const auto& v : doc.variables) {
    double val = value.at(v.name);
    bool ok = val >= v.lower - tol && val <= v.upper + tol;
    if (v.type == VarType::Binary) ok = ok && std::abs(val - std::round(val)) <= tol;
    if (!ok) r.violated.push_back(v.name);
  }
  r.feasible = r.violated.empty();
  return r;
}

// Convenience: substitutes a solution of `inst` with its canonical
// auxiliaries.
inline SubstitutionResult check_substitution(const ModelDocument& doc, const Instance& inst,
                                             const Solution& sol, Problem problem) {
  return check_substitution(doc, canonical_point(inst, sol, problem));
}

// Row with the given name, or nullptr.
inline const Row* find_row(const ModelDocument& doc, std::string_view name) {
  for (const auto& r : doc.rows)
    if (r.name == name) return &r;
  return nullptr;
}

}  // namespace ringstar
