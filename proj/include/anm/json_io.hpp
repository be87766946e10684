#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "anm/problem.hpp"

namespace anm {

// ---------------------------------------------------------------------------
// Deterministic emission. Keys are written in sorted order and numbers with
// at most 12 significant digits so equal inputs always produce equal bytes.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt_number(double v) {
  if (v == 0.0) return "0";  // normalizes -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline void emit_pair_list(std::ostringstream& out, const std::vector<std::pair<int, int>>& pairs) {
  out << '[';
  for (size_t k = 0; k < pairs.size(); ++k) {
    if (k) out << ',';
    out << '[' << pairs[k].first << ',' << pairs[k].second << ']';
  }
  out << ']';
}

inline void emit_altruism(std::ostringstream& out, const AltruismNetwork& alt) {
  if (alt.is_uniform()) {
    const auto& g = alt.uniform();
    out << "{\"a\":" << fmt_number(g.strength) << ",\"directed\":" << (g.directed ? "true" : "false")
        << ",\"edges\":";
    emit_pair_list(out, g.edges);
    out << ",\"type\":\"graph\"}";
    return;
  }
  const int n = alt.n();
  out << "{\"entries\":[";
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double w = alt.alpha(i, j);
      if (w == 0.0) continue;
      if (!first) out << ',';
      first = false;
      out << '[' << i << ',' << j << ',' << fmt_number(w) << ']';
    }
  out << "],\"type\":\"matrix\"}";
}

}  // namespace detail

inline std::string emit_problem(const AnmProblem& p) {
  using detail::fmt_number;
  std::ostringstream out;
  const int n = p.inst().n();

  out << "{\"actions\":[";
  for (int k = 0; k < p.num_actions(); ++k) {
    const Action& a = p.menu()[k];
    if (k) out << ',';
    out << "{\"cost\":" << fmt_number(a.cost) << ",\"edges\":";
    detail::emit_pair_list(out, a.edges);
    out << ",\"sign\":" << a.sign << '}';
  }
  out << "],\"altruism\":";
  detail::emit_altruism(out, p.alt_in());

  out << ",\"benefits\":[";
  for (int i = 0; i < n; ++i) {
    if (i) out << ',';
    const auto& g = p.inst().benefit(i);
    if (auto* u = g.as_usl()) {
      out << "{\"b\":" << fmt_number(u->b) << ",\"h0\":" << fmt_number(u->h0) << ",\"h1\":" << fmt_number(u->h1)
          << ",\"type\":\"usl\"}";
    } else {
      const auto* t = g.as_table();
      auto emit_row = [&](const std::vector<double>& r) {
        out << '[';
        for (size_t c = 0; c < r.size(); ++c) {
          if (c) out << ',';
          out << fmt_number(r[c]);
        }
        out << ']';
      };
      out << "{\"rows\":[";
      emit_row(t->row0);
      out << ',';
      emit_row(t->row1);
      out << "],\"type\":\"table\"}";
    }
  }
  out << ']';

  if (p.budget()) out << ",\"budget\":" << fmt_number(*p.budget());

  out << ",\"costs\":[";
  for (int i = 0; i < n; ++i) {
    if (i) out << ',';
    out << fmt_number(p.inst().cost(i));
  }
  out << "],\"mode\":\"" << (p.mode() == Mode::Fractional ? "fractional" : "binary") << "\"";
  out << ",\"n\":" << n;
  out << ",\"strategic_edges\":";
  detail::emit_pair_list(out, p.inst().graph().edges());
  out << ",\"target\":[";
  for (int i = 0; i < n; ++i) {
    if (i) out << ',';
    out << int(p.target()[i]);
  }
  out << "]}";
  return out.str();
}

inline std::string emit_solution(const Solution& s) {
  using detail::fmt_number;
  std::ostringstream out;
  if (s.status == SolutionStatus::Infeasible) return "{\"status\":\"infeasible\"}";
  out << '{';
  if (s.alt_out) {
    out << "\"alt_out\":";
    detail::emit_altruism(out, *s.alt_out);
    out << ',';
  }
  if (s.status == SolutionStatus::Approximate) out << "\"ratio_bound\":" << fmt_number(s.ratio_bound) << ',';
  out << "\"spend\":[";
  for (size_t k = 0; k < s.spend.size(); ++k) {
    if (k) out << ',';
    out << fmt_number(s.spend[k]);
  }
  out << "],\"status\":\"" << (s.status == SolutionStatus::Optimal ? "optimal" : "approximate") << "\"";
  out << ",\"total_cost\":" << fmt_number(s.total_cost) << '}';
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

using nlohmann::json;

inline const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline int as_int(const json& v, const char* what) {
  if (!v.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  return v.get<int>();
}

inline double as_num(const json& v, const char* what) {
  if (!v.is_number()) throw SchemaError(std::string(what) + " must be a number");
  return v.get<double>();
}

inline std::vector<std::pair<int, int>> parse_pairs(const json& v, const char* what) {
  if (!v.is_array()) throw SchemaError(std::string(what) + " must be an array of pairs");
  std::vector<std::pair<int, int>> out;
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 2) throw SchemaError(std::string(what) + " entries must be [i,j] pairs");
    out.emplace_back(as_int(e[0], what), as_int(e[1], what));
  }
  return out;
}

inline AltruismNetwork parse_altruism(const json& v, int n, bool lenient) {
  if (!v.is_object()) throw SchemaError("altruism must be an object");
  const std::string type = field(v, "type").get<std::string>();
  if (type == "matrix") {
    const json& ent = field(v, "entries");
    if (!ent.is_array()) throw SchemaError("altruism entries must be an array");
    if (lenient) {
      // Solution outputs may carry arbitrary (even negative) weights.
      std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
      for (const auto& e : ent) {
        if (!e.is_array() || e.size() != 3) throw SchemaError("altruism entry must be [i,j,w]");
        int i = as_int(e[0], "altruism entry"), j = as_int(e[1], "altruism entry");
        if (i < 0 || i >= n || j < 0 || j >= n || i == j) throw ValidationError("altruism entry index out of range");
        w[static_cast<size_t>(i) * n + j] = as_num(e[2], "altruism weight");
      }
      return AltruismNetwork::matrix_dense(n, std::move(w));
    }
    std::vector<std::tuple<int, int, double>> entries;
    for (const auto& e : ent) {
      if (!e.is_array() || e.size() != 3) throw SchemaError("altruism entry must be [i,j,w]");
      entries.emplace_back(as_int(e[0], "altruism entry"), as_int(e[1], "altruism entry"),
                           as_num(e[2], "altruism weight"));
    }
    return AltruismNetwork::matrix(n, entries);
  }
  if (type == "graph") {
    const json& jdir = field(v, "directed");
    if (!jdir.is_boolean()) throw SchemaError("altruism \"directed\" must be a boolean");
    const bool directed = jdir.get<bool>();
    const double a = as_num(field(v, "a"), "altruism strength");
    auto edges = parse_pairs(field(v, "edges"), "altruism edges");
    if (!directed)
      for (auto [i, j] : edges)
        if (i >= j)
          throw ValidationError("undirected altruism edge (" + std::to_string(i) + "," + std::to_string(j) +
                                ") must be listed with i < j");
    return AltruismNetwork::graph(n, directed, a, edges);
  }
  throw SchemaError("altruism type must be \"matrix\" or \"graph\"");
}

}  // namespace detail

inline AnmProblem parse_problem(const std::string& text) {
  using detail::as_int;
  using detail::as_num;
  using detail::field;
  using nlohmann::json;

  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("top-level value must be an object");

  const int n = as_int(field(j, "n"), "n");
  if (n < 1) throw ValidationError("n must be at least 1");

  auto strategic = detail::parse_pairs(field(j, "strategic_edges"), "strategic_edges");
  for (auto [a, b] : strategic)
    if (a >= b)
      throw ValidationError("strategic edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") must be listed with i < j");
  StrategicGraph graph(n, strategic);

  const json& jben = field(j, "benefits");
  if (!jben.is_array() || static_cast<int>(jben.size()) != n)
    throw SchemaError("benefits must be an array of n entries");
  std::vector<BenefitFunction> benefits;
  for (const auto& b : jben) {
    if (!b.is_object()) throw SchemaError("benefit must be an object");
    const std::string type = field(b, "type").get<std::string>();
    if (type == "usl") {
      benefits.push_back(BenefitFunction::usl(as_num(field(b, "h0"), "h0"), as_num(field(b, "h1"), "h1"),
                                              as_num(field(b, "b"), "b")));
    } else if (type == "table") {
      const json& rows = field(b, "rows");
      if (!rows.is_array() || rows.size() != 2) throw SchemaError("benefit table needs exactly two rows");
      auto read_row = [&](const json& r) {
        if (!r.is_array()) throw SchemaError("benefit row must be an array");
        std::vector<double> out;
        for (const auto& v : r) out.push_back(as_num(v, "benefit value"));
        return out;
      };
      benefits.push_back(BenefitFunction::table(read_row(rows[0]), read_row(rows[1])));
    } else {
      throw SchemaError("benefit type must be \"table\" or \"usl\"");
    }
  }

  const json& jcosts = field(j, "costs");
  if (!jcosts.is_array() || static_cast<int>(jcosts.size()) != n)
    throw SchemaError("costs must be an array of n numbers");
  std::vector<double> costs;
  for (const auto& c : jcosts) costs.push_back(as_num(c, "cost"));

  BnpgInstance inst(std::move(graph), std::move(benefits), std::move(costs));
  AltruismNetwork alt = detail::parse_altruism(field(j, "altruism"), n, /*lenient=*/false);

  const json& jtarget = field(j, "target");
  if (!jtarget.is_array() || static_cast<int>(jtarget.size()) != n)
    throw SchemaError("target must be an array of n bits");
  std::vector<uint8_t> bits;
  for (const auto& v : jtarget) bits.push_back(static_cast<uint8_t>(as_int(v, "target entry")));
  Profile target(bits);

  const json& jact = field(j, "actions");
  if (!jact.is_array()) throw SchemaError("actions must be an array");
  ActionMenu menu;
  const bool undirected_alt = alt.is_uniform() && !alt.uniform().directed;
  for (const auto& a : jact) {
    if (!a.is_object()) throw SchemaError("action must be an object");
    Action act;
    act.edges = detail::parse_pairs(field(a, "edges"), "action edges");
    act.sign = as_int(field(a, "sign"), "action sign");
    act.cost = as_num(field(a, "cost"), "action cost");
    if (undirected_alt)
      for (auto [x, y] : act.edges)
        if (x >= y)
          throw ValidationError("undirected action pair (" + std::to_string(x) + "," + std::to_string(y) +
                                ") must be listed with i < j");
    menu.push_back(std::move(act));
  }

  const std::string mode_str = field(j, "mode").get<std::string>();
  Mode mode;
  if (mode_str == "fractional")
    mode = Mode::Fractional;
  else if (mode_str == "binary")
    mode = Mode::Binary;
  else
    throw SchemaError("mode must be \"fractional\" or \"binary\"");

  std::optional<double> budget;
  if (auto it = j.find("budget"); it != j.end()) budget = as_num(*it, "budget");

  return AnmProblem(std::move(inst), std::move(alt), std::move(target), std::move(menu), mode, budget);
}

inline Solution parse_solution(const std::string& text, int n) {
  using detail::field;
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  const std::string status = field(j, "status").get<std::string>();
  if (status == "infeasible") return Solution::infeasible();

  Solution s;
  s.status = status == "optimal" ? SolutionStatus::Optimal : SolutionStatus::Approximate;
  if (status != "optimal" && status != "approximate") throw SchemaError("unknown solution status");
  for (const auto& v : field(j, "spend")) s.spend.push_back(detail::as_num(v, "spend entry"));
  s.total_cost = detail::as_num(field(j, "total_cost"), "total_cost");
  if (auto it = j.find("alt_out"); it != j.end()) s.alt_out = detail::parse_altruism(*it, n, /*lenient=*/true);
  if (s.status == SolutionStatus::Approximate)
    s.ratio_bound = detail::as_num(field(j, "ratio_bound"), "ratio_bound");
  return s;
}

}  // namespace anm
