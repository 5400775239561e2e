#pragma once

// Problem descriptions: the JSON wire format, conversion to algebra data, and
// the random problem generator used by the fuzz battery.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "widerec/algebra.hpp"
#include "widerec/catalog.hpp"
#include "widerec/wide.hpp"

namespace widerec {

using nlohmann::json;

struct ProblemSpec {
  std::string name;
  int p = 2;
  Quiver quiver;
  std::vector<Relation> relations;
  std::vector<std::string> idempotent;
  CatalogBounds catalog;
  WideBounds wide;
};

namespace detail {

inline const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::InvalidInput, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline int int_field(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) fail(ErrorKind::InvalidInput, std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

inline std::string string_item(const json& v, const char* what) {
  if (!v.is_string()) fail(ErrorKind::InvalidInput, std::string(what) + " must be a string");
  return v.get<std::string>();
}

}  // namespace detail

/// Parses a problem; omitted bounds take their defaults and the
/// WIDEREC_BUDGET environment variable overrides the hom budget.
inline ProblemSpec parse_problem(const json& j) {
  using detail::member;
  ProblemSpec s;
  if (!j.is_object()) fail(ErrorKind::InvalidInput, "problem must be a JSON object");
  if (j.contains("name")) s.name = detail::string_item(j.at("name"), "name");
  if (j.contains("field")) s.p = detail::int_field(j.at("field"), "p", 2);
  Field f(s.p);

  const json& q = member(j, "quiver");
  const json& verts = member(q, "vertices");
  if (!verts.is_array() || verts.empty()) fail(ErrorKind::InvalidInput, "quiver needs a nonempty vertex list");
  for (const auto& v : verts) {
    std::string nm = detail::string_item(v, "vertex name");
    if (std::find(s.quiver.vertices.begin(), s.quiver.vertices.end(), nm) != s.quiver.vertices.end())
      fail(ErrorKind::InvalidInput, "duplicate vertex " + nm);
    s.quiver.vertices.push_back(nm);
  }
  if (q.contains("arrows")) {
    if (!q.at("arrows").is_array()) fail(ErrorKind::InvalidInput, "arrows must be a list");
    for (const auto& a : q.at("arrows")) {
      Arrow ar;
      ar.name = detail::string_item(member(a, "name"), "arrow name");
      for (const auto& other : s.quiver.arrows)
        if (other.name == ar.name) fail(ErrorKind::InvalidInput, "duplicate arrow " + ar.name);
      ar.source = s.quiver.vertex_index(detail::string_item(member(a, "from"), "arrow source"));
      ar.target = s.quiver.vertex_index(detail::string_item(member(a, "to"), "arrow target"));
      s.quiver.arrows.push_back(std::move(ar));
    }
  }
  s.quiver.validate();

  if (j.contains("relations")) {
    if (!j.at("relations").is_array()) fail(ErrorKind::InvalidInput, "relations must be a list");
    for (const auto& r : j.at("relations")) {
      if (!r.is_array() || r.empty()) fail(ErrorKind::InvalidInput, "a relation is a nonempty list of terms");
      Relation rel;
      for (const auto& t : r) {
        Term term;
        term.coeff = f.reduce(detail::int_field(t, "coeff", 1));
        const json& path = member(t, "path");
        if (!path.is_array() || path.empty()) fail(ErrorKind::InvalidInput, "relation path must list arrows");
        for (const auto& a : path) term.path.arrows.push_back(s.quiver.arrow_index(detail::string_item(a, "arrow name")));
        term.path.source = s.quiver.arrows[term.path.arrows.front()].source;
        term.path.target = s.quiver.arrows[term.path.arrows.back()].target;
        rel.push_back(std::move(term));
      }
      s.relations.push_back(std::move(rel));
    }
  }

  const json& idem = member(j, "idempotent");
  if (!idem.is_array()) fail(ErrorKind::InvalidInput, "idempotent must be a list of vertex names");
  for (const auto& v : idem) s.idempotent.push_back(detail::string_item(v, "idempotent vertex"));

  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    if (!b.is_object()) fail(ErrorKind::InvalidInput, "bounds must be an object");
    s.catalog.vertex_dim = detail::int_field(b, "vertex_dim", s.catalog.vertex_dim);
    s.catalog.total_dim = detail::int_field(b, "total_dim", s.catalog.total_dim);
    s.wide.multiplicity = detail::int_field(b, "multiplicity", s.wide.multiplicity);
    s.wide.ext_dim_cap = detail::int_field(b, "ext_dim_cap", s.wide.ext_dim_cap);
    s.wide.max_catalog = detail::int_field(b, "max_catalog", s.wide.max_catalog);
    if (b.contains("hom_budget")) {
      const auto& hb = b.at("hom_budget");
      if (!hb.is_number_unsigned() || hb.get<std::uint64_t>() == 0) fail(ErrorKind::InvalidInput, "hom_budget must be a positive integer");
      s.wide.budget.max_combinations = hb.get<std::uint64_t>();
    }
  }
  if (std::getenv("WIDEREC_BUDGET")) s.wide.budget = SearchBudget::from_env();
  if (s.catalog.vertex_dim < 1 || s.catalog.total_dim < 1 || s.wide.multiplicity < 1 || s.wide.ext_dim_cap < 1 ||
      s.wide.max_catalog < 1)
    fail(ErrorKind::InvalidInput, "bounds must be positive");
  return s;
}

inline ProblemSpec parse_problem_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  return parse_problem(j);
}

inline ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

inline json to_json(const ProblemSpec& s) {
  json j;
  if (!s.name.empty()) j["name"] = s.name;
  j["field"] = {{"p", s.p}};
  json arrows = json::array();
  for (const auto& a : s.quiver.arrows)
    arrows.push_back({{"name", a.name}, {"from", s.quiver.vertices[a.source]}, {"to", s.quiver.vertices[a.target]}});
  j["quiver"] = {{"vertices", s.quiver.vertices}, {"arrows", arrows}};
  json rels = json::array();
  for (const auto& r : s.relations) {
    json terms = json::array();
    for (const auto& t : r) {
      json path = json::array();
      for (int a : t.path.arrows) path.push_back(s.quiver.arrows[a].name);
      terms.push_back({{"coeff", t.coeff}, {"path", path}});
    }
    rels.push_back(terms);
  }
  j["relations"] = rels;
  j["idempotent"] = s.idempotent;
  j["bounds"] = {{"vertex_dim", s.catalog.vertex_dim},
                 {"total_dim", s.catalog.total_dim},
                 {"multiplicity", s.wide.multiplicity},
                 {"ext_dim_cap", s.wide.ext_dim_cap},
                 {"max_catalog", s.wide.max_catalog},
                 {"hom_budget", s.wide.budget.max_combinations}};
  return j;
}

inline AlgebraPtr build_algebra(const ProblemSpec& s, std::optional<int> p_override = std::nullopt) {
  return path_algebra(s.quiver, s.relations, Field(p_override.value_or(s.p)));
}

inline Idem build_idem(const ProblemSpec& s) { return Idem::from_names(s.quiver, s.idempotent); }

/// The A3 quiver 1 <- 2 -> 3 with e = e2 + e3 over GF(2).
inline ProblemSpec sink_source_problem() {
  return parse_problem_text(R"({
    "name": "A3 1<-2->3, e = e2+e3",
    "field": {"p": 2},
    "quiver": {"vertices": ["1", "2", "3"],
               "arrows": [{"name": "a", "from": "2", "to": "1"}, {"name": "b", "from": "2", "to": "3"}]},
    "relations": [],
    "idempotent": ["2", "3"],
    "bounds": {"vertex_dim": 1, "total_dim": 4}
  })");
}

// --- random problems -------------------------------------------------------

namespace detail {

inline int pick(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

/// Pairs (x, y) of arrows with x ending where y starts.
inline std::vector<std::pair<int, int>> composable_pairs(const Quiver& q) {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < q.arrow_count(); ++x)
    for (int y = 0; y < q.arrow_count(); ++y)
      if (q.arrows[x].target == q.arrows[y].source) out.emplace_back(x, y);
  return out;
}

inline Relation zero_relation(const Quiver& q, int x, int y) {
  return {Term{1, Path{q.arrows[x].source, q.arrows[y].target, {x, y}}}};
}

}  // namespace detail

/// A random representation-finite problem: up to 4 vertices and 4 arrows,
/// p in {2, 3}, and a random nonempty proper idempotent. The quiver is either
/// a forest (Dynkin type A or D4) with optional zero relations of length 2,
/// or a single non-oriented cycle of length 3 or 4 whose bands are broken by
/// zero relations (or a commutativity relation on a square). Every
/// indecomposable then fits in the default catalog bounds.
inline ProblemSpec random_problem(std::mt19937_64& rng) {
  using detail::pick;
  static const char* names[] = {"a", "b", "c", "d"};
  while (true) {
    ProblemSpec s;
    s.p = pick(rng, 2) ? 3 : 2;
    const int n = 2 + pick(rng, 3);
    for (int v = 0; v < n; ++v) s.quiver.vertices.push_back(std::to_string(v + 1));
    const bool cycle = n >= 3 && pick(rng, 3) == 0;
    auto add_arrow = [&](int u, int v) {
      if (pick(rng, 2)) std::swap(u, v);
      s.quiver.arrows.push_back(Arrow{names[s.quiver.arrow_count()], u, v});
    };
    if (cycle) {
      for (int v = 0; v < n; ++v) add_arrow(v, (v + 1) % n);
    } else {
      for (int v = 1; v < n; ++v)
        if (pick(rng, 5) != 0) add_arrow(pick(rng, v), v);
    }
    try {
      s.quiver.topological_order();
    } catch (const Error&) {
      continue;  // oriented cycle
    }
    const auto pairs = detail::composable_pairs(s.quiver);
    if (cycle) {
      if (pairs.empty()) continue;  // alternating orientation admits bands
      bool square = false;
      if (pairs.size() == 2) {
        const auto& [x1, y1] = pairs[0];
        const auto& [x2, y2] = pairs[1];
        square = s.quiver.arrows[x1].source == s.quiver.arrows[x2].source &&
                 s.quiver.arrows[y1].target == s.quiver.arrows[y2].target;
      }
      if (square && pick(rng, 2)) {
        Relation rel = detail::zero_relation(s.quiver, pairs[0].first, pairs[0].second);
        Relation other = detail::zero_relation(s.quiver, pairs[1].first, pairs[1].second);
        other[0].coeff = s.p - 1;
        rel.push_back(other[0]);
        s.relations.push_back(std::move(rel));
      } else {
        std::uint64_t chosen = 0;
        while (chosen == 0) chosen = rng() % (std::uint64_t{1} << pairs.size());
        for (std::size_t k = 0; k < pairs.size(); ++k)
          if (chosen >> k & 1) s.relations.push_back(detail::zero_relation(s.quiver, pairs[k].first, pairs[k].second));
      }
    } else {
      for (const auto& [x, y] : pairs)
        if (pick(rng, 3) == 0) s.relations.push_back(detail::zero_relation(s.quiver, x, y));
    }
    const int subset = 1 + pick(rng, (1 << n) - 2);
    for (int v = 0; v < n; ++v)
      if (subset >> v & 1) s.idempotent.push_back(s.quiver.vertices[v]);
    s.name = std::string(cycle ? "cycle" : "forest") + " on " + std::to_string(n) + " vertices";
    return s;
  }
}

}  // namespace widerec
