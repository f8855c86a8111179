#pragma once

#include "blowup.hpp"
#include "bounds.hpp"
#include "curves.hpp"
#include "families.hpp"

#include <json.hpp>

namespace foliage {

using json = nlohmann::json;

// Schema violation at a JSON path.
struct SchemaError : InputError {
  std::string path;
  SchemaError(std::string p, const std::string& msg) : InputError(p + ": " + msg), path(std::move(p)) {}
};

// Parses text, reporting syntax errors with their byte offset.
inline json parse_json(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

namespace detail {

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "/" + key, "missing");
  return *it;
}

inline Rational rational_from(const json& j, const std::string& path) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  } catch (const InputError& e) {
    throw SchemaError(path, e.what());
  }
  throw SchemaError(path, "expected a rational string such as \"3/2\" or an integer");
}

inline long long integer_from(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    Rational q = rational_from(j, path);
    if (!q.is_integer() || !q.num().fits_slong_p()) throw SchemaError(path, "expected an integer");
    return q.num().get_si();
  }
  throw SchemaError(path, "expected an integer");
}

}  // namespace detail

// ---------------------------------------------------------------- polynomials

inline json to_json(const QPoly& p) {
  json terms = json::array();
  for (auto& t : p.terms()) terms.push_back({{"exp", t.e}, {"coef", t.c.str()}});
  return {{"vars", p.vars()}, {"terms", terms}};
}

// Accepts {"vars": [...], "terms": [{"exp": [...], "coef": "p/q"}]} or a polynomial string.
inline QPoly poly_from_json(const json& j, const std::string& path = "", std::vector<std::string> default_vars = {}) {
  if (j.is_string()) {
    try {
      return parse_poly(j.get<std::string>(), default_vars.empty() ? xy_vars() : default_vars);
    } catch (const InputError& e) {
      throw SchemaError(path, e.what());
    }
  }
  const json& vars = detail::require(j, "vars", path);
  if (!vars.is_array()) throw SchemaError(path + "/vars", "expected an array of names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!vars[i].is_string()) throw SchemaError(path + "/vars/" + std::to_string(i), "expected a string");
    names.push_back(vars[i].get<std::string>());
  }
  const json& terms = detail::require(j, "terms", path);
  if (!terms.is_array()) throw SchemaError(path + "/terms", "expected an array");
  QPoly out(names);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string tp = path + "/terms/" + std::to_string(i);
    const json& e = detail::require(terms[i], "exp", tp);
    if (!e.is_array() || e.size() != names.size())
      throw SchemaError(tp + "/exp", "expected " + std::to_string(names.size()) + " exponents");
    Exponent ex;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (!e[k].is_number_integer() || e[k].get<long long>() < 0 || e[k].get<long long>() > 100000)
        throw SchemaError(tp + "/exp/" + std::to_string(k), "expected a nonnegative integer");
      ex.push_back(e[k].get<int>());
    }
    Rational c = detail::rational_from(detail::require(terms[i], "coef", tp), tp + "/coef");
    out = out + QPoly::monomial(names, ex, c);
  }
  return out;
}

// ---------------------------------------------------------------- foliations and curves

inline json to_json(const Foliation& F) {
  return {{"P", to_json(F.P)}, {"Q", to_json(F.Q)}, {"degree", F.degree}};
}

inline Foliation foliation_from_json(const json& j0, const std::string& path = "") {
  const json* j = &j0;
  std::string p = path;
  if (j->is_object() && j->contains("foliation")) {
    j = &(*j)["foliation"];
    p += "/foliation";
  }
  QPoly P = poly_from_json(detail::require(*j, "P", p), p + "/P");
  QPoly Q = poly_from_json(detail::require(*j, "Q", p), p + "/Q");
  for (auto* q : {&P, &Q})
    for (auto& v : q->vars())
      if (v != "x" && v != "y" && q->degree(*q->index_of(v)) > 0)
        throw SchemaError(p, "field components may only involve x and y, found " + v);
  try {
    return make_foliation(P, Q);
  } catch (const InputError& e) {
    throw SchemaError(p, e.what());
  }
}

inline json to_json(const PlaneCurve& C) {
  json j = to_json(C.f);
  j["degree"] = C.degree;
  if (C.genus) j["genus"] = *C.genus;
  if (C.smooth) j["smooth"] = *C.smooth;
  if (C.delta) j["delta"] = *C.delta;
  return j;
}

inline PlaneCurve curve_from_json(const json& j0, const std::string& path = "") {
  const json* j = &j0;
  std::string p = path;
  if (j->is_object() && j->contains("curve")) {
    j = &(*j)["curve"];
    p += "/curve";
  }
  const json* body = j;
  if (j->is_object() && j->contains("f")) body = &(*j)["f"];
  QPoly f = poly_from_json(*body, body == j ? p : p + "/f");
  PlaneCurve C;
  try {
    C = make_curve(f);
  } catch (const InputError& e) {
    throw SchemaError(p, e.what());
  }
  if (j->is_object() && j->contains("genus")) C.genus = int(detail::integer_from((*j)["genus"], p + "/genus"));
  if (j->is_object() && j->contains("delta")) {
    const json& d = (*j)["delta"];
    if (!d.is_array()) throw SchemaError(p + "/delta", "expected an array of integers");
    std::vector<int> ds;
    for (std::size_t i = 0; i < d.size(); ++i)
      ds.push_back(int(detail::integer_from(d[i], p + "/delta/" + std::to_string(i))));
    C.delta = ds;
  }
  return C;
}

// ---------------------------------------------------------------- oracles and bound reports

inline PlurigeneraOracle oracle_from_json(const json& j, const std::string& path = "") {
  if (!j.is_object()) throw SchemaError(path, "expected an object with \"P\" and/or \"height\"");
  PlurigeneraOracle o;
  if (j.contains("P")) {
    const json& P = j["P"];
    if (!P.is_array()) throw SchemaError(path + "/P", "expected an array");
    for (std::size_t i = 0; i < P.size(); ++i) {
      long long v = detail::integer_from(P[i], path + "/P/" + std::to_string(i));
      if (v < 0) throw SchemaError(path + "/P/" + std::to_string(i), "plurigenera are nonnegative");
      o.P.push_back(v);
    }
  }
  if (j.contains("height")) {
    long long h = detail::integer_from(j["height"], path + "/height");
    if (h < 1) throw SchemaError(path + "/height", "height must be at least 1");
    o.height = h;
  }
  if (o.P.empty() && !o.height) throw SchemaError(path, "oracle needs \"P\" or \"height\"");
  try {
    validate(o);
  } catch (const InputError& e) {
    throw SchemaError(path, e.what());
  }
  return o;
}

inline json to_json(const PlurigeneraOracle& o) {
  json j = json::object();
  if (!o.P.empty()) {
    json P = json::array();
    for (auto v : o.P) P.push_back(std::to_string(v));
    j["P"] = P;
  }
  if (o.height) j["height"] = *o.height;
  return j;
}

inline json to_json(const BoundReport& r) {
  json trace = json::array();
  for (auto& row : r.trace) {
    json t = {{"n", row.n}, {"rhs", row.rhs}, {"fired", row.fired}};
    t["lhs"] = row.lhs ? json(*row.lhs) : json(nullptr);
    trace.push_back(t);
  }
  json j = {{"kind", r.kind}, {"d", r.d}, {"g", r.g}, {"oracle", r.oracle},
            {"n0", r.n0}, {"bound", r.bound}, {"trace", trace}, {"warnings", r.warnings}};
  j["Z"] = r.Z ? json(*r.Z) : json(nullptr);
  if (r.h) j["h"] = *r.h;
  if (!r.hypothesis.empty()) j["hypothesis"] = r.hypothesis;
  return j;
}

inline BoundReport bound_report_from_json(const json& j, const std::string& path = "") {
  BoundReport r;
  r.kind = detail::require(j, "kind", path).get<std::string>();
  r.d = detail::integer_from(detail::require(j, "d", path), path + "/d");
  r.g = detail::integer_from(detail::require(j, "g", path), path + "/g");
  if (j.contains("Z") && !j["Z"].is_null()) r.Z = detail::integer_from(j["Z"], path + "/Z");
  if (j.contains("h")) r.h = detail::integer_from(j["h"], path + "/h");
  r.oracle = detail::require(j, "oracle", path).get<std::string>();
  r.n0 = detail::integer_from(detail::require(j, "n0", path), path + "/n0");
  r.bound = detail::integer_from(detail::require(j, "bound", path), path + "/bound");
  const json& tr = detail::require(j, "trace", path);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    std::string tp = path + "/trace/" + std::to_string(i);
    GateRow row;
    row.n = detail::integer_from(detail::require(tr[i], "n", tp), tp + "/n");
    row.rhs = detail::integer_from(detail::require(tr[i], "rhs", tp), tp + "/rhs");
    const json& l = detail::require(tr[i], "lhs", tp);
    if (!l.is_null()) row.lhs = detail::integer_from(l, tp + "/lhs");
    row.fired = detail::require(tr[i], "fired", tp).get<bool>();
    r.trace.push_back(row);
  }
  if (j.contains("warnings"))
    for (auto& w : j["warnings"]) r.warnings.push_back(w.get<std::string>());
  if (j.contains("hypothesis")) r.hypothesis = j["hypothesis"].get<std::string>();
  return r;
}

// ---------------------------------------------------------------- points and trees

// Defining equations of the tower levels, one per level, in t0, t1, ...
inline std::vector<std::string> tower_equations(const TowerPtr& t) {
  std::vector<std::string> out;
  if (!t) return out;
  for (const Tower* lvl : t->chain()) {
    int L = lvl->level();
    std::vector<std::string> vars;
    for (int i = 0; i <= L; ++i) vars.push_back("t" + std::to_string(i));
    QPoly m(vars), pw(vars, Rational(1)), tv = QPoly::var(vars, std::size_t(L));
    for (auto& c : lvl->modulus()) {
      m = m + to_poly(c, L + 1).with_vars(vars) * pw;
      pw = pw * tv;
    }
    out.push_back(m.str());
  }
  return out;
}

inline json to_json(const ComplexBox& b) {
  return {{"re", {b.re_lo.str(), b.re_hi.str()}}, {"im", {b.im_lo.str(), b.im_hi.str()}}};
}

inline json location_json(int chart, const TowerPtr& t, const Alg& x, const Alg& y, std::size_t count,
                          const Rational& width) {
  json j = {{"chart", chart}, {"count", count}, {"x", x.str()}, {"y", y.str()}};
  j["exact"] = t == nullptr;
  if (t) {
    j["tower"] = tower_equations(t);
    json boxes = json::array();
    for (auto& [bx, by] : point_boxes(t, x, y, width)) boxes.push_back({{"x", to_json(bx)}, {"y", to_json(by)}});
    j["boxes"] = boxes;
  }
  return j;
}

inline json to_json(const SingularityClass& c) {
  json j = {{"classification", to_string(c.kind)}, {"certainty", to_string(c.certainty)}};
  j["certified"] = c.certainty == Certainty::exact || c.certainty == Certainty::numeric;
  j["ratio"] = c.ratio ? json(c.ratio->str()) : json(nullptr);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline json to_json(const SingularPoint& s, const Rational& width) {
  json j = location_json(s.chart, s.tower, s.x, s.y, s.count, width);
  j["milnor_number"] = s.milnor >= 0 ? json(s.milnor) : json("unknown");
  j.update(to_json(s.cls));
  return j;
}

inline json to_json(const CurveSingularity& s, const Rational& width) {
  json j = location_json(s.chart, s.tower, s.x, s.y, s.count, width);
  j["node"] = s.node;
  return j;
}

inline json to_json(const ResolutionNode& n) {
  json j = {{"chart", n.chart}, {"count", n.count}, {"depth", n.depth},
            {"x", n.x.str()}, {"y", n.y.str()}, {"blown_up", n.blown_up}};
  if (n.tower) j["tower"] = tower_equations(n.tower);
  j.update(to_json(n.cls));
  if (n.milnor >= 0) j["milnor_number"] = n.milnor;
  if (n.blown_up) {
    j["ell"] = n.ell;
    j["order"] = n.order;
    j["dicritical"] = n.dicritical;
    j["safe_extra"] = n.safe_extra;
    json ch = json::array();
    for (auto& c : n.children) ch.push_back(to_json(c));
    j["children"] = ch;
  }
  if (!n.curves.empty()) {
    json cs = json::array();
    for (auto& g : n.curves) cs.push_back({{"passes", g.passes}, {"multiplicity", g.multiplicity}});
    j["curves"] = cs;
  }
  return j;
}

inline json to_json(const ResolutionTree& t) {
  auto s = summarize(t);
  json roots = json::array();
  for (auto& r : t.roots) roots.push_back(to_json(r));
  return {{"foliation", to_json(t.F)},
          {"mode", t.mode == ResolutionMode::safe ? "safe" : "minimal"},
          {"nodes", roots},
          {"summary",
           {{"blowups", s.blowups},
            {"extra_blowups", s.extra_blowups},
            {"final_points", s.final_points},
            {"dicritical_blowups", s.dicritical_blowups},
            {"dicritical_points", s.dicritical_roots},
            {"max_depth", s.max_depth}}}};
}

inline json to_json(const FamilyDescriptor& d) {
  json pub = json::array();
  for (auto& p : d.published) pub.push_back({{"quantity", p.quantity}, {"value", p.value}, {"source", p.source}});
  return {{"family", d.tag}, {"params", d.params}, {"published", pub}};
}

inline json to_json(const ZReport& z) {
  json recs = json::array();
  for (auto& r : z.records) recs.push_back({{"where", r.where}, {"count", r.count}, {"z", r.z}});
  json j = {{"z_resolved", z.z_resolved}, {"correction", z.correction}, {"z_plane", z.z_plane}, {"records", recs}};
  j["z_direct"] = z.z_direct >= 0 ? json(z.z_direct) : json(nullptr);
  return j;
}

}  // namespace foliage
