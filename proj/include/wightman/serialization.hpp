#pragma once

#include <json.hpp>

#include "wightman/diagram.hpp"
#include "wightman/states.hpp"

// JSON wire formats.  Complex numbers are always {"re":..,"im":..}; CSV
// emission uses paired re,im columns.

namespace wightman {

using Json = nlohmann::json;

inline Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("complex values must be {\"re\":..,\"im\":..}");
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

// {"arity": n, "terms": [{"signs": "+-+", "re": x, "im": y}]}
inline Json to_json(const ExpSum& e) {
  Json terms = Json::array();
  for (const auto& [sv, c] : e.terms())
    terms.push_back(Json{{"signs", sv.packed()}, {"re", c.real()}, {"im", c.imag()}});
  return Json{{"arity", e.arity()}, {"terms", std::move(terms)}};
}

inline ExpSum expsum_from_json(const Json& j) {
  ExpSum e(j.at("arity").get<std::size_t>());
  for (const auto& t : j.at("terms"))
    e.add_term(SignVector(t.at("signs").get<std::string>()),
               Complex(t.at("re").get<double>(), t.at("im").get<double>()));
  return e;
}

// {"max_order": N, "entries": [{"m":..,"n":..,"re":..,"im":..}]}
template <class Table>
Json table_to_json(const Table& t) {
  Json entries = Json::array();
  for (const auto& [mn, v] : t.entries())
    entries.push_back(Json{{"m", mn.first}, {"n", mn.second}, {"re", v.real()}, {"im", v.imag()}});
  return Json{{"max_order", t.max_order()}, {"entries", std::move(entries)}};
}

template <class Table>
Table table_from_json(const Json& j) {
  Table t(j.at("max_order").get<int>());
  for (const auto& e : j.at("entries"))
    t.set(e.at("m").get<int>(), e.at("n").get<int>(),
          Complex(e.at("re").get<double>(), e.at("im").get<double>()));
  return t;
}

inline Json to_json(const StateSpec& s) {
  switch (s.kind) {
    case StateSpec::Kind::Vacuum:
      return Json{{"type", "vacuum"}};
    case StateSpec::Kind::Coherent:
      return Json{{"type", "coherent"}, {"phi", to_json(s.phi)}};
    case StateSpec::Kind::Thermal:
      return Json{{"type", "thermal"}, {"beta", s.beta}};
    case StateSpec::Kind::Number:
      return Json{{"type", "number"}, {"n", s.level}};
    case StateSpec::Kind::Mixture: {
      Json parts = Json::array();
      for (const auto& [w, sub] : s.parts) parts.push_back(Json{{"w", w}, {"state", to_json(sub)}});
      return Json{{"type", "mixture"}, {"parts", std::move(parts)}};
    }
    case StateSpec::Kind::CustomXi:
      return Json{{"type", "custom_xi"}, {"max_order", s.xi->max_order()},
                  {"entries", table_to_json(*s.xi).at("entries")}};
    case StateSpec::Kind::CustomDensity:
      throw std::invalid_argument("custom density states have no JSON representation");
  }
  throw std::logic_error("unreachable");
}

inline StateSpec state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw std::invalid_argument("state JSON needs a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "vacuum") return StateSpec::vacuum();
  if (type == "coherent") return StateSpec::coherent(complex_from_json(j.at("phi")));
  if (type == "thermal") return StateSpec::thermal(j.at("beta").get<double>());
  if (type == "number") return StateSpec::number(j.at("n").get<int>());
  if (type == "mixture") {
    std::vector<std::pair<double, StateSpec>> parts;
    for (const auto& p : j.at("parts"))
      parts.emplace_back(p.at("w").get<double>(), state_from_json(p.at("state")));
    auto s = StateSpec::mixture(std::move(parts));
    s.validate();
    return s;
  }
  if (type == "custom_xi") {
    XiTable t(j.at("max_order").get<int>());
    for (const auto& e : j.at("entries"))
      t.set(e.at("m").get<int>(), e.at("n").get<int>(),
            Complex(e.at("re").get<double>(), e.at("im").get<double>()));
    return StateSpec::custom_xi(std::move(t));
  }
  throw std::invalid_argument("unknown state type: " + type);
}

// {"base_nodes":32,"tol":1e-9,"max_doublings":6}
inline QuadratureSpec quadrature_from_json(const Json& j) {
  QuadratureSpec q;
  if (j.contains("base_nodes")) q.base_nodes = j.at("base_nodes").get<int>();
  if (j.contains("tol")) q.tol = j.at("tol").get<double>();
  if (j.contains("max_doublings")) q.max_doublings = j.at("max_doublings").get<int>();
  return q;
}

inline Json to_json(const QuadratureSpec& q) {
  return Json{{"base_nodes", q.base_nodes}, {"tol", q.tol}, {"max_doublings", q.max_doublings}};
}

namespace diag {

inline std::string node_name(const NodeRef& n) {
  return (n.is_vertex() ? std::string("v") : std::string("e")) + std::to_string(n.index);
}

inline Json to_json(const Diagram& d) {
  Json edges = Json::array();
  for (const auto& e : d.edges) edges.push_back(Json{{"src", node_name(e.src)}, {"tgt", node_name(e.tgt)}});
  Json blobs = Json::array();
  for (const auto& b : d.blobs) {
    Json legs = Json::array();
    for (const auto& l : b.legs) legs.push_back(node_name(l));
    blobs.push_back(Json{{"legs", std::move(legs)}});
  }
  return Json{{"n_external", d.n_external},
              {"n_vertices", d.n_vertices},
              {"edges", std::move(edges)},
              {"blobs", std::move(blobs)}};
}

}  // namespace diag
}  // namespace wightman
