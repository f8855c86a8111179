#pragma once

#include "io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace foliage::cli {

enum Exit { ok = 0, failure = 1, input_error = 2, undetermined = 3 };

namespace detail {

inline std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

inline void render(std::ostream& os, const json& j, const std::string& indent) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        os << indent << k << ":\n";
        render(os, v, indent + "  ");
      } else {
        os << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_structured()) {
        os << indent << "- [" << i << "]\n";
        render(os, j[i], indent + "  ");
      } else {
        os << indent << "- " << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump()) << "\n";
      }
    }
  } else {
    os << indent << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline Rational default_width() {
  if (const char* w = std::getenv("FOLIAGE_WIDTH")) return Rational::parse(w);
  return Rational(1, 1000000);
}

}  // namespace detail

struct Settings {
  std::string format = "json";
  int jobs = 1;  // accepted; computations run sequentially
  std::string width;
  double budget_seconds = 0;
};

// Runs the command line (without the program name). Returns the exit status.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"foliage: exact computations with foliations of the projective plane", "foliage"};
  app.require_subcommand(1);
  Settings s;
  app.add_option("--format", s.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jobs", s.jobs, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  app.add_option("--width", s.width, "box width for irrational points, e.g. 1/1000000");
  app.add_option("--budget-seconds", s.budget_seconds, "soft time cap for resolutions")->check(CLI::NonNegativeNumber);

  std::string fol_path, curve_path, oracle_path;
  json result;
  std::function<json()> action;

  auto add_fol = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--foliation,-f", fol_path, "foliation JSON file, - for stdin");
    if (required) o->required();
  };
  auto load_fol = [&] { return foliation_from_json(parse_json(detail::read_source(fol_path, in), "foliation")); };
  auto load_curve = [&] {
    if (curve_path.empty()) throw InputError("--curve is required");
    return curve_from_json(parse_json(detail::read_source(curve_path, in), "curve"));
  };
  auto width = [&] { return s.width.empty() ? detail::default_width() : Rational::parse(s.width); };
  auto deadline = [&]() -> std::optional<std::chrono::steady_clock::time_point> {
    if (s.budget_seconds <= 0) return std::nullopt;
    return std::chrono::steady_clock::now() +
           std::chrono::milliseconds(static_cast<long long>(s.budget_seconds * 1000.0));
  };

  // degree
  auto* c_degree = app.add_subcommand("degree", "degree of a foliation (reads stdin by default)");
  add_fol(c_degree, false);
  c_degree->callback([&] {
    action = [&] {
      Foliation F = load_fol();
      return json{{"degree", F.degree}, {"canonical_bundle_degree", F.degree - 1}};
    };
  });

  // singularities
  auto* c_sing = app.add_subcommand("singularities", "singular points with Milnor numbers and classification");
  add_fol(c_sing, false);
  c_sing->callback([&] {
    action = [&] {
      Foliation F = load_fol();
      auto pts = singular_points(F);
      json arr = json::array();
      for (auto& p : pts) arr.push_back(to_json(p, width()));
      long d = F.degree;
      return json{{"degree", d}, {"points", arr}, {"milnor_total", milnor_total(pts)},
                  {"expected_total", d * d + d + 1}};
    };
  });

  // classify
  int chart = 0;
  std::string px, py;
  auto* c_cls = app.add_subcommand("classify", "classify one rational singular point, or all of them");
  add_fol(c_cls, false);
  c_cls->add_option("--chart", chart, "0: Z=1, 1: X=1, 2: Y=1")->check(CLI::Range(0, 2));
  c_cls->add_option("--x", px, "chart coordinate x");
  c_cls->add_option("--y", py, "chart coordinate y");
  c_cls->callback([&] {
    action = [&] {
      Foliation F = load_fol();
      if (px.empty() != py.empty()) throw InputError("give both --x and --y");
      if (px.empty()) {
        json arr = json::array();
        PointAnalysis pa;
        pa.milnor = false;
        for (auto& p : singular_points(F, pa)) arr.push_back(to_json(p, width()));
        return json{{"points", arr}};
      }
      Rational x0 = Rational::parse(px), y0 = Rational::parse(py);
      auto [P, Q] = chart_field(F, chart);
      if (!P.eval({x0, y0}).is_zero() || !Q.eval({x0, y0}).is_zero())
        throw InputError("the point is not a singular point of the foliation");
      APoly tp = translate(to_alg(P), Alg(x0), Alg(y0)), tq = translate(to_alg(Q), Alg(x0), Alg(y0));
      json j = to_json(classify_at_origin(tp, tq, nullptr));
      j["chart"] = chart;
      j["x"] = x0.str();
      j["y"] = y0.str();
      j["milnor_number"] = intersection_multiplicity(tp, tq);
      return j;
    };
  });

  // reduce, safe-resolve
  int max_depth = 50;
  auto add_resolution = [&](const char* name, const char* help, ResolutionMode mode) {
    auto* c = app.add_subcommand(name, help);
    add_fol(c, false);
    c->add_option("--max-depth", max_depth, "blow-up cap per singular point")->check(CLI::PositiveNumber);
    c->callback([&, mode] {
      action = [&, mode] {
        ResolutionOptions opt;
        opt.mode = mode;
        opt.max_depth = max_depth;
        opt.milnor = true;
        opt.deadline = deadline();
        return to_json(resolve(load_fol(), opt));
      };
    });
  };
  add_resolution("reduce", "Seidenberg reduction", ResolutionMode::seidenberg);
  add_resolution("safe-resolve", "reduction followed by one blow-up at every remaining singular point",
                 ResolutionMode::safe);

  // dicritical
  auto* c_dic = app.add_subcommand("dicritical", "number of dicritical singular points");
  add_fol(c_dic, false);
  c_dic->callback([&] {
    action = [&] {
      Foliation F = load_fol();
      return json{{"dicritical_count", dicritical_count(F, {}, deadline())}};
    };
  });

  // index
  auto* c_idx = app.add_subcommand("index", "Z(F, C) for an invariant curve through the safe resolution");
  add_fol(c_idx, true);
  c_idx->add_option("--curve,-c", curve_path, "curve JSON file")->required();
  c_idx->callback([&] {
    action = [&] {
      Foliation F = load_fol();
      PlaneCurve C = load_curve();
      if (!is_invariant(F, C)) throw InputError("the curve is not invariant");
      ZReport z = total_z(F, C.f);
      json j = to_json(z);
      long long lhs = (long long)(F.degree - 1) * C.degree + z.correction;
      j["degree"] = F.degree;
      j["curve_degree"] = C.degree;
      auto sm = with_smoothness(C);
      std::optional<int> g;
      try {
        g = genus(sm);
      } catch (const InputError&) {
      }
      if (g) {
        j["genus"] = *g;
        long long n1 = (long long)(F.degree - 1) * C.degree;
        if (sm.smooth && *sm.smooth)
          j["identity"] = {{"lhs", n1}, {"rhs", 2LL * *g - 2 + z.z_plane}, {"holds", n1 == 2LL * *g - 2 + z.z_plane}};
        j["resolved_identity"] = {{"lhs", lhs}, {"rhs", 2LL * *g - 2 + z.z_resolved},
                                  {"holds", lhs == 2LL * *g - 2 + z.z_resolved}};
      }
      return j;
    };
  });

  // invariant-check
  auto* c_inv = app.add_subcommand("invariant-check", "exact cofactor test for f = 0");
  add_fol(c_inv, true);
  c_inv->add_option("--curve,-c", curve_path, "curve JSON file")->required();
  c_inv->callback([&] {
    action = [&] {
      Foliation F = load_fol();
      PlaneCurve C = load_curve();
      auto cert = is_invariant(F, C);
      json j = {{"invariant", bool(cert)}, {"curve_degree", C.degree}, {"foliation_degree", F.degree}};
      j["cofactor"] = cert ? to_json(cert->cofactor) : json(nullptr);
      if (cert) j["cofactor_text"] = cert->cofactor.str();
      return j;
    };
  });

  // extactic
  int m = 1;
  bool symbolic = false;
  auto* c_ext = app.add_subcommand("extactic", "decide whether the extactic polynomial of order m vanishes");
  add_fol(c_ext, true);
  c_ext->add_option("--m,-m", m, "order")->required()->check(CLI::PositiveNumber);
  c_ext->add_flag("--symbolic", symbolic, "also print the determinant");
  c_ext->callback([&] {
    action = [&] {
      Foliation F = load_fol();
      auto d = extactic_vanishes(F, m);
      json j = {{"m", m}, {"result", to_string(d.result)}, {"method", d.method}};
      if (d.witness) j["witness"] = {d.witness->first.str(), d.witness->second.str()};
      if (d.first_integral)
        j["first_integral"] = {{"numerator", d.first_integral->first.str()},
                               {"denominator", d.first_integral->second.str()}};
      if (symbolic) j["polynomial"] = extactic(F, m).str();
      if (d.result == Vanishing::undetermined) throw Undetermined(j.dump());
      return j;
    };
  });

  // first-integral
  int max_m = 6;
  std::string num, den;
  auto* c_fi = app.add_subcommand("first-integral", "least degree of a rational first integral, or a check");
  add_fol(c_fi, true);
  c_fi->add_option("--max-m", max_m, "largest degree searched")->check(CLI::PositiveNumber);
  c_fi->add_option("--numerator", num, "check this numerator");
  c_fi->add_option("--denominator", den, "check this denominator");
  c_fi->callback([&] {
    action = [&] {
      Foliation F = load_fol();
      if (!num.empty() || !den.empty()) {
        if (num.empty() || den.empty()) throw InputError("give both --numerator and --denominator");
        bool okc = first_integral_check(F, parse_poly(num, xy_vars()), parse_poly(den, xy_vars()));
        return json{{"first_integral", okc}};
      }
      auto r = first_integral_search(F, max_m);
      json j = {{"max_m", max_m}};
      j["degree"] = r.degree ? json(*r.degree) : json(nullptr);
      if (r.integral) j["integral"] = {{"numerator", r.integral->first.str()}, {"denominator", r.integral->second.str()}};
      return j;
    };
  });

  // genus
  auto* c_gen = app.add_subcommand("genus", "geometric genus of a plane curve");
  c_gen->add_option("--curve,-c", curve_path, "curve JSON file, - for stdin");
  c_gen->callback([&] {
    action = [&] {
      PlaneCurve C = curve_from_json(parse_json(detail::read_source(curve_path, in), "curve"));
      json sing = json::array();
      auto ss = curve_singularities(C);
      for (auto& p : ss) sing.push_back(to_json(p, width()));
      return json{{"degree", C.degree}, {"genus", genus(C)}, {"smooth", ss.empty()}, {"singularities", sing}};
    };
  });

  // bound
  long long bd = 0, bg = 0, bz = -1, bh = 0, bn = 0, bk = 0;
  bool worst_case = false;
  auto* c_bound = app.add_subcommand("bound", "degree bounds");
  c_bound->require_subcommand(1);
  auto load_oracle = [&](bool needed) -> std::optional<PlurigeneraOracle> {
    if (oracle_path.empty()) {
      if (needed) throw InputError("--oracle is required");
      return std::nullopt;
    }
    return oracle_from_json(parse_json(detail::read_source(oracle_path, in), "oracle"));
  };
  auto* b_fi = c_bound->add_subcommand("first-integral", "bound for the degree of a rational first integral");
  b_fi->add_option("--d", bd, "degree of the foliation")->required();
  b_fi->add_option("--g", bg, "genus of the generic leaf")->required();
  b_fi->add_option("--oracle", oracle_path, "plurigenera JSON file");
  b_fi->add_option("--height", bh, "height, used when no oracle file is given");
  b_fi->callback([&] {
    action = [&] {
      if (auto o = load_oracle(false)) return to_json(first_integral_degree_bound(bd, bg, *o));
      if (bh < 1) throw InputError("give --oracle or --height");
      return to_json(first_integral_bound_from_height(bd, bg, bh));
    };
  });
  auto* b_ic = c_bound->add_subcommand("invariant-curve", "bound for the degree of an invariant curve");
  b_ic->add_option("--d", bd, "degree of the foliation")->required();
  b_ic->add_option("--g", bg, "genus of the curve")->required();
  b_ic->add_option("--Z", bz, "Z(F, C)");
  b_ic->add_flag("--quasi-reduced", worst_case, "use the worst case for quasi-reduced singularities");
  b_ic->add_option("--oracle", oracle_path, "plurigenera JSON file")->required();
  b_ic->callback([&] {
    action = [&] {
      auto o = *load_oracle(true);
      if (worst_case == (bz >= 0)) throw InputError("give exactly one of --Z and --quasi-reduced");
      long long Z = worst_case ? z_bound_quasi_reduced(bd) : bz;
      auto r = invariant_curve_degree_bound(bd, bg, o, Z);
      if (worst_case) r.hypothesis = quasi_reduced_tag();
      return to_json(r);
    };
  });
  auto* b_zq = c_bound->add_subcommand("z-quasi-reduced", "worst-case Z for quasi-reduced singularities");
  b_zq->add_option("--d", bd, "degree of the foliation")->required();
  b_zq->callback([&] {
    action = [&] {
      return json{{"d", bd}, {"Z", z_bound_quasi_reduced(bd)}, {"hypothesis", quasi_reduced_tag()}};
    };
  });
  auto* b_hl = c_bound->add_subcommand("height-lower", "lower bound for P_{h n}");
  b_hl->add_option("--height", bh, "height")->required();
  b_hl->add_option("--n", bn, "n")->required();
  b_hl->callback([&] {
    action = [&] {
      return json{{"h", bh}, {"n", bn}, {"index", bh * bn}, {"lower_bound", height_lower_bound(bh, bn)}};
    };
  });
  auto* b_rr = c_bound->add_subcommand("rr", "dimension of the k-th power of the canonical bundle of a curve");
  b_rr->add_option("--g", bg, "genus")->required();
  b_rr->add_option("--k", bk, "power")->required();
  b_rr->callback([&] { action = [&] { return json{{"g", bg}, {"k", bk}, {"sections", rr_sections(bg, bk)}}; }; });

  // examples
  std::string family, params = "{}";
  auto* c_ex = app.add_subcommand("examples", "example families");
  c_ex->require_subcommand(1);
  auto* e_gen = c_ex->add_subcommand("gen", "emit a foliation of a family");
  e_gen->add_option("--family", family, "linear, lins_neto, riccati_hypergeometric or power_pullback")->required();
  e_gen->add_option("--params", params, "parameters as JSON");
  e_gen->callback([&] {
    action = [&] {
      json p = parse_json(params, "params");
      auto q = [&](const char* k, const char* dflt) {
        return p.contains(k) ? foliage::detail::rational_from(p[k], std::string("/") + k) : Rational::parse(dflt);
      };
      auto i = [&](const char* k, long long dflt) {
        return p.contains(k) ? foliage::detail::integer_from(p[k], std::string("/") + k) : dflt;
      };
      FamilyMember fm;
      json extra = json::object();
      if (family == "linear") {
        fm = linear_family(long(i("p", 2)), long(i("q", 3)));
      } else if (family == "lins_neto") {
        fm = lins_neto_member(q("alpha", "2"));
      } else if (family == "riccati_hypergeometric") {
        if (p.contains("k")) {
          long long k = i("k", 1);
          if (k < 1 || k > 1000) throw InputError("k must lie in 1..1000");
          Rational b = q("b", "1"), c = q("c", "2");
          fm = riccati_member(Rational(long(1 - k)), b, c);
          extra["curve"] = to_json(make_curve(riccati_invariant_curve(int(k), b, c)));
        } else {
          fm = riccati_member(q("a", "0"), q("b", "1/2"), q("c", "1/3"));
        }
      } else if (family == "power_pullback") {
        long long r = i("r", 2);
        if (r < 1 || r > 20) throw InputError("r must lie in 1..20");
        fm = lins_neto_pullback(q("alpha", "2"), int(r));
      } else {
        throw InputError("unknown family " + family);
      }
      json j = {{"foliation", to_json(fm.F)}, {"descriptor", to_json(fm.descriptor)}};
      j.update(extra);
      return j;
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  }
  if (!action) {
    err << "error: no command\n";
    return input_error;
  }
  try {
    result = action();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const Undetermined& e) {
    err << "undetermined: " << e.what() << "\n";
    return undetermined;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  }
  if (s.format == "json")
    out << result.dump(2) << "\n";
  else
    detail::render(out, result, "");
  return ok;
}

}  // namespace foliage::cli
