#pragma once

#include "foliation.hpp"

#include <chrono>

namespace foliage {

// Order at the origin, with the lowest part checked to be nonzero at every point.
inline int decided_order(const APoly& p) {
  if (p.is_zero()) return -1;
  int k = p.order();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (exponent_degree(it->e) != k) break;
    if (!decide_zero(it->c)) return k;
  }
  return k;
}

struct BlowUp {
  int order = 0;  // algebraic multiplicity of the field
  int ell = 0;    // order of vanishing of the pulled-back 1-form along E
  bool dicritical = false;
  APoly P1, Q1;  // chart (x, t), y = x t, E = {x = 0}
  APoly P2, Q2;  // chart (s, y), x = s y, E = {y = 0}
};

namespace detail {

inline APoly divide_by_power(const APoly& p, int var, int k) {
  std::vector<APoly::Term> ts;
  for (auto& t : p.terms()) {
    if (t.e[var] < k) throw std::logic_error("strict transform is not divisible by the exceptional divisor");
    Exponent e = t.e;
    e[var] -= k;
    ts.push_back({e, t.c});
  }
  return APoly::from_terms(p.vars(), std::move(ts));
}

// f(x, x t) in chart 1 and f(s y, y) in chart 2, before division.
inline APoly chart1_pull(const APoly& f) {
  std::vector<APoly::Term> ts;
  for (auto w = f.with_vars(xy_vars()); auto& t : w.terms()) ts.push_back({{t.e[0] + t.e[1], t.e[1]}, t.c});
  return APoly::from_terms(xy_vars(), std::move(ts));
}
inline APoly chart2_pull(const APoly& f) {
  std::vector<APoly::Term> ts;
  for (auto w = f.with_vars(xy_vars()); auto& t : w.terms()) ts.push_back({{t.e[0], t.e[0] + t.e[1]}, t.c});
  return APoly::from_terms(xy_vars(), std::move(ts));
}

}  // namespace detail

inline BlowUp blow_up(const APoly& P0, const APoly& Q0) {
  const auto& V = xy_vars();
  APoly P = P0.with_vars(V), Q = Q0.with_vars(V);
  BlowUp b;
  int op = decided_order(P), oq = decided_order(Q);
  if (op < 0 && oq < 0) throw InputError("blow_up: zero field");
  b.order = op < 0 ? oq : oq < 0 ? op : std::min(op, oq);
  if (b.order == 0) throw InputError("blow_up: the origin is not a singular point");
  APoly X = APoly::var(V, 0), Y = APoly::var(V, 1);
  APoly radial = X * Q.homogeneous_part(b.order) - Y * P.homogeneous_part(b.order);
  b.dicritical = true;
  for (auto& t : radial.terms())
    if (!decide_zero(t.c)) {
      b.dicritical = false;
      break;
    }
  b.ell = b.dicritical ? b.order + 1 : b.order;
  APoly p1 = detail::chart1_pull(P), q1 = detail::chart1_pull(Q);
  APoly t = APoly::var(V, 1), s = APoly::var(V, 0);
  b.P1 = detail::divide_by_power(X * p1, 0, b.ell);
  b.Q1 = detail::divide_by_power(q1 - t * p1, 0, b.ell);
  APoly p2 = detail::chart2_pull(P), q2 = detail::chart2_pull(Q);
  b.P2 = detail::divide_by_power(p2 - s * q2, 1, b.ell);
  b.Q2 = detail::divide_by_power(Y * q2, 1, b.ell);
  return b;
}

// Strict transform of a curve germ of multiplicity m.
inline APoly strict_chart1(const APoly& f, int m) { return detail::divide_by_power(detail::chart1_pull(f), 0, m); }
inline APoly strict_chart2(const APoly& f, int m) { return detail::divide_by_power(detail::chart2_pull(f), 1, m); }

enum class ResolutionMode { seidenberg, safe };

struct CurveGerm {
  bool passes = false;
  int multiplicity = 0;
  APoly f;  // local equation centered at the point
};

struct ResolutionNode {
  int chart = 0;  // roots: projective chart; children: blow-up chart 1 or 2
  TowerPtr tower;
  Alg x, y;
  std::size_t count = 1;
  int depth = 0;
  APoly P, Q;
  SingularityClass cls;
  int milnor = -1;
  bool blown_up = false;
  bool safe_extra = false;
  int order = 0, ell = 0;
  bool dicritical = false;
  std::vector<CurveGerm> curves;
  std::vector<ResolutionNode> children;
};

struct ResolutionOptions {
  ResolutionMode mode = ResolutionMode::seidenberg;
  int max_depth = 50;
  bool milnor = false;
  ClassifyOptions classify;
  std::vector<QPoly> curves;  // affine equations to carry along
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct ResolutionTree {
  Foliation F;
  ResolutionMode mode = ResolutionMode::seidenberg;
  std::vector<ResolutionNode> roots;
};

namespace detail {

// Remove roots of g that are known elements of the current rings.
inline UPoly<Alg> divide_known_roots(UPoly<Alg> g, const std::vector<Alg>& cands, std::vector<Alg>& found) {
  for (auto& r : cands) {
    if (g.degree() <= 0) break;
    if (!decide_zero(g.eval(r))) continue;
    if (std::find(found.begin(), found.end(), r) != found.end()) continue;
    found.push_back(r);
    g = exact_quotient(g, UPoly<Alg>(std::vector<Alg>{-r, Alg(1)}));
  }
  return g;
}

inline CurveGerm germ_from(const APoly& f) {
  CurveGerm g;
  g.f = f;
  g.passes = decide_zero(f.constant_term());
  g.multiplicity = g.passes ? decided_order(f) : 0;
  return g;
}

struct Resolver {
  const ResolutionOptions& opt;

  void analyze(ResolutionNode& n, bool extra_only) {
    if (opt.deadline && std::chrono::steady_clock::now() > *opt.deadline)
      throw Undetermined("time budget exhausted during resolution");
    if (opt.milnor) n.milnor = intersection_multiplicity(n.P, n.Q);
    n.cls = classify_at_origin(n.P, n.Q, n.tower, opt.classify);
    bool reduced = n.cls.kind == SingKind::reduced_nondegenerate || n.cls.kind == SingKind::saddle_node;
    if (extra_only) return;
    if (reduced) {
      if (opt.mode == ResolutionMode::safe) expand(n, true);
      return;
    }
    if (n.depth >= opt.max_depth) throw Undetermined("reduction did not finish within the depth cap");
    expand(n, false);
  }

  // eigen-directions (slopes t = y/x) that lie in the current rings
  std::vector<Alg> known_slopes(const ResolutionNode& n) {
    std::vector<Alg> out;
    if (n.order != 1 || !n.cls.ratio) return out;
    LinearPart L = linear_part(n.P, n.Q);
    if (decide_zero(L.b)) return out;
    Alg tr = L.trace();
    Rational r = *n.cls.ratio;
    std::vector<Alg> lambdas;
    if (r == Rational(-1)) return out;
    Alg l2 = tr * Alg(Rational(1) / (Rational(1) + r));
    lambdas = {l2 * Alg(r), l2};
    Alg binv = inverse(L.b);
    for (auto& l : lambdas) out.push_back((l - L.a) * binv);
    return out;
  }

  ResolutionNode child(const ResolutionNode& n, int chart, const TowerPtr& t, const Alg& x0, const Alg& y0,
                       const APoly& P, const APoly& Q, bool extra) {
    ResolutionNode c;
    c.chart = chart;
    c.tower = t;
    c.x = x0;
    c.y = y0;
    c.count = point_count(t);
    c.depth = n.depth + 1;
    c.safe_extra = extra;
    c.P = translate(P, x0, y0);
    c.Q = translate(Q, x0, y0);
    for (auto& g : n.curves) {
      if (!g.passes) {
        c.curves.push_back(CurveGerm{});
        continue;
      }
      APoly f = chart == 1 ? strict_chart1(g.f, g.multiplicity) : strict_chart2(g.f, g.multiplicity);
      c.curves.push_back(germ_from(translate(f, x0, y0)));
    }
    analyze(c, extra);
    return c;
  }

  void expand(ResolutionNode& n, bool extra) {
    BlowUp b = blow_up(n.P, n.Q);
    n.blown_up = true;
    n.order = b.order;
    n.ell = b.ell;
    n.dicritical = b.dicritical;
    // chart 1: points (0, t0) with P1(0,t0) = Q1(0,t0) = 0
    UPoly<Alg> g = gcd(axis_poly(b.P1), axis_poly(b.Q1));
    std::vector<Alg> roots;
    if (g.degree() > 0) {
      g = squarefree_part(g);
      g = divide_known_roots(g, known_slopes(n), roots);
      bool rational = true;
      for (auto& c : g.coeffs()) rational = rational && c.is_rational();
      if (rational && g.degree() > 1) {
        std::vector<Alg> rc;
        for (auto& r : rational_roots(to_qupoly(g))) rc.push_back(Alg(r));
        g = divide_known_roots(g, rc, roots);
      }
      if (g.degree() == 1) {
        roots.push_back(-g.coeffs()[0] * inverse(g.coeffs()[1]));
        g = UPoly<Alg>(Alg(1));
      }
    }
    for (auto& r : roots) n.children.push_back(child(n, 1, n.tower, Alg(0), r, b.P1, b.Q1, extra));
    if (g.degree() >= 2) {
      TowerPtr t = Tower::make(n.tower, make_monic(g).coeffs());
      for (auto& [tc, c] : split_map(t, [&](const TowerPtr& cur) {
             return child(n, 1, cur, Alg(0), Alg::generator(cur), b.P1, b.Q1, extra);
           }))
        n.children.push_back(std::move(c));
    }
    // chart 2 origin: the direction x = 0
    if (decide_zero(b.P2.constant_term()) && decide_zero(b.Q2.constant_term()))
      n.children.push_back(child(n, 2, n.tower, Alg(0), Alg(0), b.P2, b.Q2, extra));
  }

  static UPoly<Alg> axis_poly(const APoly& p) {
    // p(0, t) in the variable t
    std::vector<Alg> c;
    for (auto w = p.with_vars(xy_vars()); auto& t : w.terms())
      if (t.e[0] == 0) {
        if (int(c.size()) <= t.e[1]) c.resize(t.e[1] + 1);
        c[t.e[1]] = t.c;
      }
    return UPoly<Alg>(std::move(c));
  }
};

inline QPoly homogenize_curve(const QPoly& f) {
  int n = f.total_degree();
  return homogenize(f.with_vars(xy_vars()), n);
}

}  // namespace detail

inline ResolutionTree resolve(const Foliation& F, const ResolutionOptions& opt) {
  ResolutionTree tree;
  tree.F = F;
  tree.mode = opt.mode;
  std::vector<QPoly> hom;
  for (auto& c : opt.curves) hom.push_back(detail::homogenize_curve(c));
  detail::Resolver R{opt};
  tree.roots = for_each_singular_point(F, [&](SingularPoint s) {
    ResolutionNode n;
    n.chart = s.chart;
    n.tower = s.tower;
    n.x = s.x;
    n.y = s.y;
    n.count = s.count;
    n.P = s.P;
    n.Q = s.Q;
    for (auto& h : hom) {
      APoly f = to_alg(detail::dehomogenize(h, s.chart));
      n.curves.push_back(detail::germ_from(translate(f, s.x, s.y)));
    }
    R.analyze(n, false);
    return n;
  });
  return tree;
}

inline ResolutionTree seidenberg_reduce(const Foliation& F, ResolutionOptions opt = {}) {
  opt.mode = ResolutionMode::seidenberg;
  return resolve(F, opt);
}

inline ResolutionTree safe_resolution(const Foliation& F, ResolutionOptions opt = {}) {
  opt.mode = ResolutionMode::safe;
  return resolve(F, opt);
}

template <class Fn>
void visit_nodes(const ResolutionNode& n, Fn&& fn) {
  fn(n);
  for (auto& c : n.children) visit_nodes(c, fn);
}
template <class Fn>
void visit_nodes(const ResolutionTree& t, Fn&& fn) {
  for (auto& r : t.roots) visit_nodes(r, fn);
}

struct ResolutionSummary {
  long blowups = 0;          // geometric count of blow-ups
  long extra_blowups = 0;    // of which added by the safe step
  long final_points = 0;     // singular points of the resolved foliation
  long dicritical_blowups = 0;
  long dicritical_roots = 0; // singular points of F whose reduction meets a dicritical blow-up
  int max_depth = 0;
};

inline bool subtree_dicritical(const ResolutionNode& n) {
  if (n.dicritical) return true;
  for (auto& c : n.children)
    if (subtree_dicritical(c)) return true;
  return false;
}

inline ResolutionSummary summarize(const ResolutionTree& t) {
  ResolutionSummary s;
  for (auto& r : t.roots)
    if (subtree_dicritical(r)) s.dicritical_roots += long(r.count);
  visit_nodes(t, [&](const ResolutionNode& n) {
    s.max_depth = std::max(s.max_depth, n.depth);
    if (n.blown_up) {
      s.blowups += long(n.count);
      if (n.safe_extra || (t.mode == ResolutionMode::safe && n.cls.kind != SingKind::non_reduced))
        s.extra_blowups += long(n.count);
      if (n.dicritical) s.dicritical_blowups += long(n.count);
    } else {
      s.final_points += long(n.count);
    }
  });
  return s;
}

inline long dicritical_count(const Foliation& F, const ClassifyOptions& copt = {},
                             std::optional<std::chrono::steady_clock::time_point> deadline = {}) {
  ResolutionOptions opt;
  opt.classify = copt;
  opt.deadline = deadline;
  return summarize(seidenberg_reduce(F, opt)).dicritical_roots;
}

// ---------------------------------------------------------------- Z-index

namespace detail {

using Series = std::vector<Alg>;

inline Series series_mul(const Series& a, const Series& b, int N) {
  Series r(N);
  for (int i = 0; i < int(a.size()) && i < N; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < int(b.size()) && i + j < N; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// p(x, phi(x)) truncated at x^N
inline Series compose_graph(const APoly& p, const Series& phi, int N) {
  int dy = std::max(0, p.degree(1));
  std::vector<Series> pw{Series(N)};
  pw[0][0] = Alg(1);
  for (int k = 1; k <= dy; ++k) pw.push_back(series_mul(pw.back(), phi, N));
  Series r(N);
  for (auto& t : p.terms()) {
    if (t.e[0] >= N) continue;
    const Series& s = pw[t.e[1]];
    for (int i = 0; i + t.e[0] < N; ++i)
      if (!s[i].is_zero()) r[i + t.e[0]] += t.c * s[i];
  }
  return r;
}

// Power series y = phi(x) with f(x, phi(x)) = 0, phi(0) = 0, given f_y(0,0) invertible.
inline Series implicit_branch(const APoly& f, int N) {
  Alg fy0 = f.coeff({0, 1});
  Alg inv = inverse(fy0);
  Series phi(N);
  // coefficient-by-coefficient: the x^k coefficient of f(x, phi) is fy0*phi_k + (terms in phi_1..phi_{k-1})
  for (int k = 1; k < N; ++k) {
    Series trial = phi;
    Series val = compose_graph(f, trial, k + 1);
    trial[k] = -val[k] * inv;
    phi = trial;
  }
  return phi;
}

inline APoly swap_xy(const APoly& p) {
  std::vector<APoly::Term> ts;
  for (auto w = p.with_vars(xy_vars()); auto& t : w.terms()) ts.push_back({{t.e[1], t.e[0]}, t.c});
  return APoly::from_terms(xy_vars(), std::move(ts));
}

}  // namespace detail

// Vanishing order at the origin of the field restricted to the smooth invariant branch f = 0.
inline int z_index(const APoly& P0, const APoly& Q0, const APoly& f0, int max_terms = 1024) {
  const auto& V = xy_vars();
  APoly P = P0.with_vars(V), Q = Q0.with_vars(V), f = f0.with_vars(V);
  if (!decide_zero(f.constant_term())) throw InputError("z_index: the branch does not pass through the point");
  APoly fx = f.derivative(std::size_t(0)), fy = f.derivative(std::size_t(1));
  // invariance: the field is tangent to f = 0
  APoly Xf = P * fx + Q * fy;
  if (!divide_exact(Xf, f)) throw InputError("z_index: the branch is not invariant");
  APoly comp = P;
  if (decide_zero(fy.constant_term())) {
    if (decide_zero(fx.constant_term())) throw InputError("z_index: the branch is singular at the point");
    f = detail::swap_xy(f);
    comp = detail::swap_xy(Q);
  }
  for (int N = 8; N <= max_terms; N *= 2) {
    auto phi = detail::implicit_branch(f, N);
    auto r = detail::compose_graph(comp, phi, N);
    for (int k = 0; k < N; ++k)
      if (!decide_zero(r[k])) return k;
  }
  throw Undetermined("z_index: order exceeds the truncation limit");
}

struct ZRecord {
  std::string where;
  std::size_t count = 1;
  int z = 0;
};

struct ZReport {
  long z_resolved = 0;   // Z(G, strict transform) on the resolved surface
  long correction = 0;   // sum (1 - ell_i) m_i over blow-ups
  long z_plane = 0;      // Z(F, C) recovered on the plane
  long z_direct = -1;    // Z(F, C) computed directly at the singular points of F (smooth C only)
  std::vector<ZRecord> records;
};

inline ZReport total_z(const Foliation& F, const QPoly& curve, ClassifyOptions copt = {}) {
  ResolutionOptions opt;
  opt.mode = ResolutionMode::safe;
  opt.classify = copt;
  opt.curves = {curve};
  ResolutionTree tree = resolve(F, opt);
  ZReport rep;
  bool smooth_on_plane = true;
  long direct = 0;
  for (auto& r : tree.roots) {
    const CurveGerm& g = r.curves[0];
    if (!g.passes) continue;
    if (g.multiplicity != 1) {
      smooth_on_plane = false;
      continue;
    }
    direct += long(z_index(r.P, r.Q, g.f)) * long(r.count);
  }
  if (smooth_on_plane) rep.z_direct = direct;
  std::function<void(const ResolutionNode&, const std::string&)> walk = [&](const ResolutionNode& n,
                                                                             const std::string& path) {
    const CurveGerm& g = n.curves[0];
    if (n.blown_up) {
      if (g.passes) rep.correction += long(1 - n.ell) * g.multiplicity * long(n.count);
      for (std::size_t i = 0; i < n.children.size(); ++i) walk(n.children[i], path + "/" + std::to_string(i));
      return;
    }
    if (!g.passes) return;
    if (g.multiplicity != 1) throw Undetermined("strict transform is still singular at " + path);
    int z = z_index(n.P, n.Q, g.f);
    rep.z_resolved += long(z) * long(n.count);
    rep.records.push_back({path, n.count, z});
  };
  for (std::size_t i = 0; i < tree.roots.size(); ++i) walk(tree.roots[i], std::to_string(i));
  rep.z_plane = rep.z_resolved - rep.correction;
  return rep;
}

}  // namespace foliage
