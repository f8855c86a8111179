#pragma once

#include "polyalg.hpp"
#include "tower.hpp"

#include <functional>
#include <optional>

namespace foliage {

using APoly = MPoly<Alg>;

inline APoly to_alg(const QPoly& p) {
  return p.map_coeffs([](const Rational& c) { return Alg(c); });
}

// A foliation of the projective plane: the affine field P d/dx + Q d/dy and the
// saturated homogeneous 1-form A dX + B dY + C dZ of degree d+1.
struct Foliation {
  QPoly P, Q;
  QPoly A, B, C;
  int degree = 0;
};

namespace detail {

inline QPoly homogenize(const QPoly& p, int m) {
  const auto& V = xyz_vars();
  QPoly r(V);
  for (auto w = p.with_vars(xy_vars()); auto& t : w.terms()) {
    int k = exponent_degree(t.e);
    r = r + QPoly::monomial(V, {t.e[0], t.e[1], m - k}, t.c);
  }
  return r;
}

inline QPoly dehomogenize(const QPoly& p, int chart) {
  // chart 0: Z=1 -> (x,y)=(X,Y); chart 1: X=1 -> (x,y)=(Y,Z); chart 2: Y=1 -> (x,y)=(X,Z)
  const auto& V = xy_vars();
  QPoly h = p.with_vars(xyz_vars());
  QPoly r(V);
  for (auto& t : h.terms()) {
    Exponent e(2);
    if (chart == 0) e = {t.e[0], t.e[1]};
    if (chart == 1) e = {t.e[1], t.e[2]};
    if (chart == 2) e = {t.e[0], t.e[2]};
    r = r + QPoly::monomial(V, e, t.c);
  }
  return r;
}

inline bool is_homogeneous(const QPoly& p, int d) {
  for (auto& t : p.terms())
    if (exponent_degree(t.e) != d) return false;
  return true;
}

}  // namespace detail

inline Foliation make_foliation(const QPoly& P0, const QPoly& Q0) {
  if (P0.is_zero() && Q0.is_zero()) throw InputError("the zero vector field does not define a foliation");
  QPoly P = P0.with_vars(xy_vars()), Q = Q0.with_vars(xy_vars());
  QPoly g = gcd(P, Q);
  if (!g.is_constant()) {
    P = divide_or_throw(P, g);
    Q = divide_or_throw(Q, g);
  }
  int m = std::max(P.total_degree(), Q.total_degree());
  const auto& V = xyz_vars();
  QPoly X = QPoly::var(V, 0), Y = QPoly::var(V, 1), Z = QPoly::var(V, 2);
  QPoly a = detail::homogenize(Q, m), b = detail::homogenize(-P, m);
  QPoly A = Z * a, B = Z * b, C = -(X * a + Y * b);
  if (auto c = divide_exact(C, Z)) {
    A = a;
    B = b;
    C = *c;
  }
  Foliation F;
  F.P = P;
  F.Q = Q;
  F.A = A;
  F.B = B;
  F.C = C;
  F.degree = A.is_zero() ? (B.is_zero() ? C.total_degree() : B.total_degree()) - 1 : A.total_degree() - 1;
  return F;
}

// Foliation defined by a homogeneous 1-form; common factors are removed.
inline Foliation foliation_from_form(const QPoly& A0, const QPoly& B0, const QPoly& C0) {
  const auto& V = xyz_vars();
  QPoly A = A0.with_vars(V), B = B0.with_vars(V), C = C0.with_vars(V);
  int d = std::max({A.total_degree(), B.total_degree(), C.total_degree()});
  if (d < 0) throw InputError("zero 1-form");
  for (auto* p : {&A, &B, &C})
    if (!p->is_zero() && !detail::is_homogeneous(*p, d))
      throw InputError("1-form components must be homogeneous of one degree");
  QPoly euler = QPoly::var(V, 0) * A + QPoly::var(V, 1) * B + QPoly::var(V, 2) * C;
  if (!euler.is_zero()) throw InputError("1-form does not satisfy X*A + Y*B + Z*C = 0");
  QPoly g = gcd(std::vector<QPoly>{A, B, C});
  if (!g.is_constant()) {
    A = divide_or_throw(A, g);
    B = divide_or_throw(B, g);
    C = divide_or_throw(C, g);
  }
  return make_foliation(-detail::dehomogenize(B, 0), detail::dehomogenize(A, 0));
}

inline int degree(const Foliation& F) { return F.degree; }

// Local vector field in the affine chart (0: Z=1, 1: X=1, 2: Y=1), variables (x, y).
inline std::pair<QPoly, QPoly> chart_field(const Foliation& F, int chart) {
  using detail::dehomogenize;
  if (chart == 0) return {-dehomogenize(F.B, 0), dehomogenize(F.A, 0)};
  if (chart == 1) return {-dehomogenize(F.C, 1), dehomogenize(F.B, 1)};
  if (chart == 2) return {-dehomogenize(F.C, 2), dehomogenize(F.A, 2)};
  throw std::invalid_argument("chart index must be 0, 1 or 2");
}

// Pullback of the foliation by a homogeneous polynomial map of P^2.
inline Foliation pullback(const Foliation& F, const std::array<QPoly, 3>& map) {
  const auto& V = xyz_vars();
  std::vector<QPoly> M;
  int r = -1;
  for (auto& m : map) {
    QPoly w = m.with_vars(V);
    if (w.is_zero()) throw InputError("pullback map has a zero component");
    if (r < 0) r = w.total_degree();
    if (!detail::is_homogeneous(w, r)) throw InputError("pullback map must be homogeneous of one degree");
    M.push_back(w);
  }
  QPoly Ac = F.A.compose(M), Bc = F.B.compose(M), Cc = F.C.compose(M);
  std::array<QPoly, 3> out;
  for (std::size_t j = 0; j < 3; ++j)
    out[j] = Ac * M[0].derivative(j) + Bc * M[1].derivative(j) + Cc * M[2].derivative(j);
  return foliation_from_form(out[0], out[1], out[2]);
}

// Linear change of coordinates (X,Y,Z) -> m * (X,Y,Z).
inline Foliation transform(const Foliation& F, const std::array<std::array<Rational, 3>, 3>& m) {
  const auto& V = xyz_vars();
  std::array<QPoly, 3> map;
  for (int i = 0; i < 3; ++i) {
    QPoly row(V);
    for (int j = 0; j < 3; ++j) row = row + QPoly::var(V, std::size_t(j)).scale(m[i][j]);
    map[i] = row;
  }
  return pullback(F, map);
}

// ---------------------------------------------------------------- points

struct PlanePoint {
  TowerPtr tower;
  Alg x, y;
};

inline Alg eval_alg(const QUPoly& p, const Alg& x) {
  Alg r;
  for (int i = p.degree(); i >= 0; --i) r = r * x + Alg(p.coeffs()[i]);
  return r;
}

inline Alg eval_at(const APoly& p, const Alg& x, const Alg& y) {
  return p.with_vars(xy_vars()).eval({x, y});
}

// p(x0, y) as a univariate polynomial in y
inline UPoly<Alg> restrict_x(const QPoly& p, const Alg& x0) {
  auto cs = p.with_vars(xy_vars()).coefficients_in(1);
  std::vector<Alg> out;
  for (auto& c : cs) out.push_back(to_alg(c).partial_eval(0, x0).constant_term());
  return UPoly<Alg>(std::move(out));
}

inline QUPoly to_qupoly(const UPoly<Alg>& p) {
  std::vector<Rational> c;
  for (auto& v : p.coeffs()) {
    if (!v.is_rational()) throw std::logic_error("expected rational coefficients");
    c.push_back(v.rational());
  }
  return QUPoly(std::move(c));
}

inline UPoly<Alg> to_aupoly(const QUPoly& p) {
  std::vector<Alg> c;
  for (auto& v : p.coeffs()) c.push_back(Alg(v));
  return UPoly<Alg>(std::move(c));
}

namespace detail {

// Points y with g(y) = 0 over a fixed x0; rational roots are split off first.
template <class R, class Fn>
void roots_over(const UPoly<Alg>& g0, const TowerPtr& base, const Alg& x0, Fn& fn,
                std::vector<R>& out) {
  UPoly<Alg> g = squarefree_part(g0);
  if (g.degree() <= 0) return;
  bool rational = true;
  for (auto& c : g.coeffs()) rational = rational && c.is_rational();
  if (rational) {
    QUPoly q = to_qupoly(g);
    for (auto& r : rational_roots(q)) {
      out.push_back(fn(PlanePoint{base, x0, Alg(r)}));
      q = exact_quotient(q, QUPoly({-r, Rational(1)}));
    }
    g = to_aupoly(make_monic(q));
    if (g.degree() <= 0) return;
  }
  if (g.degree() == 1) {
    out.push_back(fn(PlanePoint{base, x0, -g.coeffs()[0]}));
    return;
  }
  TowerPtr t = Tower::make(base, g.coeffs());
  for (auto& [tc, r] : split_map(t, [&](const TowerPtr& c) { return fn(PlanePoint{c, x0, Alg::generator(c)}); }))
    out.push_back(std::move(r));
}

}  // namespace detail

struct NonIsolated : InputError {
  using InputError::InputError;
};

// Calls fn on every common zero of P and Q (one call per conjugacy component).
template <class Fn>
auto for_each_common_zero(const QPoly& P0, const QPoly& Q0, Fn&& fn) -> std::vector<decltype(fn(PlanePoint{}))> {
  using R = decltype(fn(PlanePoint{}));
  std::vector<R> out;
  QPoly P = P0.with_vars(xy_vars()), Q = Q0.with_vars(xy_vars());
  if (P.is_zero() || Q.is_zero()) throw NonIsolated("a component of the field vanishes identically");
  if (P.degree(1) <= 0 && Q.degree(1) <= 0) {
    auto g = gcd(*as_univariate(P, 0), *as_univariate(Q, 0));
    if (g.degree() > 0) throw NonIsolated("common factor in x");
    return out;
  }
  QPoly res = resultant(P, Q, "y");
  if (res.is_zero()) throw NonIsolated("common factor: resultant vanishes");
  QUPoly s = squarefree_part(*as_univariate(res, 0));
  if (s.degree() <= 0) return out;
  for (auto& r : rational_roots(s)) {
    s = exact_quotient(s, QUPoly({-r, Rational(1)}));
    UPoly<Alg> G = gcd(restrict_x(P, Alg(r)), restrict_x(Q, Alg(r)));
    if (G.is_zero()) throw NonIsolated("vertical line of zeros");
    detail::roots_over<R>(G, nullptr, Alg(r), fn, out);
  }
  s = make_monic(s);
  if (s.degree() <= 0) return out;
  TowerPtr t0 = Tower::make(s);
  auto parts = split_map(t0, [&](const TowerPtr& c) {
    std::vector<R> local;
    Alg x = Alg::generator(c);
    UPoly<Alg> G = gcd(restrict_x(P, x), restrict_x(Q, x));
    if (G.is_zero()) throw NonIsolated("vertical line of zeros");
    if (G.degree() <= 0) return local;
    if (G.degree() == 1) {
      local.push_back(fn(PlanePoint{c, x, -G.coeffs()[0]}));
      return local;
    }
    UPoly<Alg> g = squarefree_part(G);
    if (g.degree() == 1) {
      local.push_back(fn(PlanePoint{c, x, -g.coeffs()[0]}));
      return local;
    }
    TowerPtr t1 = Tower::make(c, g.coeffs());
    for (auto& [tc, r] : split_map(t1, [&](const TowerPtr& cc) { return fn(PlanePoint{cc, x, Alg::generator(cc)}); }))
      local.push_back(std::move(r));
    return local;
  });
  for (auto& [tc, v] : parts)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

// Field translated so that (x0, y0) is the origin.
inline APoly translate(const APoly& p, const Alg& x0, const Alg& y0) {
  const auto& V = xy_vars();
  APoly X = APoly::var(V, 0) + APoly(V, x0), Y = APoly::var(V, 1) + APoly(V, y0);
  return p.with_vars(V).compose({X, Y});
}

// ---------------------------------------------------------------- local invariants

// Intersection multiplicity at the origin (Fulton's algorithm).
inline int intersection_multiplicity(APoly f, APoly g) {
  const auto& V = xy_vars();
  f = f.with_vars(V);
  g = g.with_vars(V);
  auto on_axis = [](const APoly& p) {
    std::vector<Alg> c;
    for (auto& t : p.terms())
      if (t.e[1] == 0) {
        if (int(c.size()) <= t.e[0]) c.resize(t.e[0] + 1);
        c[t.e[0]] = t.c;
      }
    return trim_decided(UPoly<Alg>(std::move(c)));
  };
  // an isolated intersection never exceeds the Bezout number of the inputs
  const int cap = std::max(f.total_degree(), 1) * std::max(g.total_degree(), 1);
  int acc = 0;
  for (int guard = 0; guard < 100000; ++guard) {
    if (!decide_zero(f.constant_term()) || !decide_zero(g.constant_term())) return acc;
    if (acc > cap) throw NonIsolated("curves share a component through the point");
    UPoly<Alg> fx = on_axis(f), gx = on_axis(g);
    int r = fx.degree(), s = gx.degree();
    if (r < 0 && s < 0) throw NonIsolated("curves share a component through the point");
    if (r < 0 || (s >= 0 && s < r)) {
      std::swap(f, g);
      std::swap(fx, gx);
      std::swap(r, s);
    }
    if (s < 0) {
      acc += order_at_zero(fx);
      std::vector<APoly::Term> ts;
      for (auto& t : g.terms())
        if (t.e[1] > 0) ts.push_back({{t.e[0], t.e[1] - 1}, t.c});
      g = APoly::from_terms(V, std::move(ts));
      continue;
    }
    APoly shifted = f.mul_term({{s - r, 0}, gx.lc()});
    g = g.scale(fx.lc()) - shifted;
  }
  throw std::logic_error("intersection multiplicity did not terminate");
}

enum class SingKind { reduced_nondegenerate, saddle_node, non_reduced, undetermined };
enum class Certainty { exact, numeric, height_bounded, none };

inline const char* to_string(SingKind k) {
  switch (k) {
    case SingKind::reduced_nondegenerate: return "reduced-nondegenerate";
    case SingKind::saddle_node: return "reduced-saddle-node";
    case SingKind::non_reduced: return "non-reduced";
    default: return "undetermined";
  }
}
inline const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::exact: return "exact";
    case Certainty::numeric: return "numeric";
    case Certainty::height_bounded: return "height-bounded";
    default: return "none";
  }
}

struct SingularityClass {
  SingKind kind = SingKind::undetermined;
  Certainty certainty = Certainty::none;
  std::optional<Rational> ratio;  // eigenvalue ratio when it is rational
  std::string detail;
};

struct LinearPart {
  Alg a, b, c, d;  // P = a x + b y + ..., Q = c x + d y + ...
  Alg trace() const { return a + d; }
  Alg det() const { return a * d - b * c; }
};

inline LinearPart linear_part(const APoly& P, const APoly& Q) {
  const auto& V = xy_vars();
  APoly p = P.with_vars(V), q = Q.with_vars(V);
  return {p.coeff({1, 0}), p.coeff({0, 1}), q.coeff({1, 0}), q.coeff({0, 1})};
}

// The ratio r of a nondegenerate linear part satisfies r + 2 + 1/r = u = tr^2/det.
inline std::optional<Rational> ratio_from_u(const Rational& u) {
  // r^2 + (2 - u) r + 1 = 0
  Rational disc = u * u - Rational(4) * u;
  if (disc.sign() < 0) return std::nullopt;
  mpz_class n = disc.num(), d = disc.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Rational root(mpz_class(sqrt(n)), mpz_class(sqrt(d)));
  return (u - Rational(2) + root) / Rational(2);
}

inline SingularityClass classify_u(const Rational& u) {
  SingularityClass c;
  c.certainty = Certainty::exact;
  auto r = ratio_from_u(u);
  if (r && r->sign() > 0) {
    c.kind = SingKind::non_reduced;
    c.ratio = r;
  } else {
    c.kind = SingKind::reduced_nondegenerate;
    if (r) c.ratio = r;
  }
  return c;
}

struct ClassifyOptions {
  long height = 1000;  // candidate ratios p/q with p + q <= height
  int refinements = 6;
  std::size_t exact_dimension = 12;  // largest tower for the exact rationality test
};

namespace detail {

// Characteristic polynomial of a over Q: prod over the points of the tower of (s - a).
inline QUPoly char_poly(const Alg& a, const TowerPtr& t) {
  int L = t->level() + 1;
  std::vector<std::string> vars;
  for (int i = 0; i < L; ++i) vars.push_back("t" + std::to_string(i));
  vars.push_back("s");
  QPoly R = QPoly::var(vars, std::size_t(L)) - to_poly(a, L).with_vars(vars);
  std::vector<const Tower*> chain = t->chain();
  for (int lv = L - 1; lv >= 0; --lv) {
    const Tower* tw = chain[std::size_t(lv)];
    QPoly m(vars), pw(vars, Rational(1));
    QPoly tv = QPoly::var(vars, std::size_t(lv));
    for (auto& c : tw->modulus()) {
      m = m + to_poly(c, L).with_vars(vars) * pw;
      pw = pw * tv;
    }
    if (R.degree(std::size_t(lv)) > 0) R = resultant(m, R, vars[std::size_t(lv)]).with_vars(vars);
    else R = R.pow(unsigned(tw->degree()));
  }
  return to_univariate(R, std::size_t(L));
}

}  // namespace detail

// Candidate values (p+q)^2/(pq) of u in [lo, hi], p >= q >= 1, p + q <= H.
inline std::vector<Rational> u_candidates(const Rational& lo0, const Rational& hi, long H) {
  std::vector<Rational> out;
  Rational lo = std::max(lo0, Rational(4));
  if (hi < lo) return out;
  for (long q = 1; q < H; ++q) {
    // u(r) = r + 2 + 1/r is increasing for r >= 1, so scan p from q upwards
    for (long p = q; p + q <= H; ++p) {
      Rational u(mpz_class((p + q)) * (p + q), mpz_class(p) * q);
      if (u > hi) break;
      if (u >= lo && std::gcd(p, q) == 1) out.push_back(u);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Classification of the singularity at the origin of P d/dx + Q d/dy (points of `tower`).
inline SingularityClass classify_at_origin(const APoly& P, const APoly& Q, const TowerPtr& tower,
                                           const ClassifyOptions& opt = {}) {
  LinearPart L = linear_part(P, Q);
  Alg det = L.det(), tr = L.trace();
  SingularityClass out;
  if (decide_zero(det)) {
    out.certainty = Certainty::exact;
    out.kind = decide_zero(tr) ? SingKind::non_reduced : SingKind::saddle_node;
    if (out.kind == SingKind::saddle_node) out.ratio = Rational(0);
    return out;
  }
  if (decide_zero(tr)) {
    out.certainty = Certainty::exact;
    out.kind = SingKind::reduced_nondegenerate;
    out.ratio = Rational(-1);
    return out;
  }
  Alg u = tr * tr * inverse(det);
  if (u.is_rational()) return classify_u(u.rational());
  if (decide_zero(u - Alg(4))) return classify_u(Rational(4));
  // exact: u is rational only at a rational root of its characteristic polynomial
  if (tower && tower->dimension() <= opt.exact_dimension) {
    for (auto& c : rational_roots(detail::char_poly(u, tower)))
      if (decide_zero(u - Alg(c))) return classify_u(c);
    out.kind = SingKind::reduced_nondegenerate;
    out.certainty = Certainty::exact;
    out.detail = "irrational eigenvalue ratio";
    return out;
  }
  // numeric exclusion, then exact tests of small-height candidates
  Rational w(1, 1 << 20);
  std::vector<Rational> tested;
  bool all_excluded = false;
  for (int round = 0; round <= opt.refinements; ++round, w = w * w) {
    auto pts = approximate(tower, w);
    mpfr_prec_t prec = prec_for_width(w);
    all_excluded = true;
    std::vector<Rational> cands;
    for (auto& row : pts) {
      std::vector<CInterval> pt;
      for (auto& b : row) pt.push_back(b.enclosure(prec));
      CInterval U = enclose(u, pt, prec);
      bool off_axis = !U.im.contains_zero();
      bool below = mpfr_cmp_ui(U.re.hi(), 4) < 0;
      if (off_axis || below) continue;
      all_excluded = false;
      for (auto& c : u_candidates(U.re.lo_q(), U.re.hi_q(), opt.height)) cands.push_back(c);
    }
    for (auto& c : cands) {
      if (std::find(tested.begin(), tested.end(), c) != tested.end()) continue;
      tested.push_back(c);
      if (decide_zero(u - Alg(c))) return classify_u(c);
    }
    if (all_excluded) break;
    if (w < Rational(1, 1) && round >= 2 && cands.empty()) break;
  }
  out.kind = SingKind::reduced_nondegenerate;
  out.certainty = all_excluded ? Certainty::numeric : Certainty::height_bounded;
  if (!all_excluded) out.detail = "no eigenvalue ratio p/q with p+q <= " + std::to_string(opt.height);
  return out;
}

// ---------------------------------------------------------------- singular points

struct SingularPoint {
  int chart = 0;  // 0: affine, 1: at infinity with X != 0, 2: the point [0:1:0]
  TowerPtr tower;
  Alg x, y;  // chart coordinates
  std::size_t count = 1;
  int milnor = -1;
  SingularityClass cls;
  APoly P, Q;  // chart field centered at the point
};

struct PointAnalysis {
  bool milnor = true;
  bool classify = true;
  ClassifyOptions classify_options;
};

// Chart coordinates of the singular points on the line at infinity (X != 0): (x0, 0).
template <class Fn>
auto for_each_point_at_infinity(const Foliation& F, Fn&& fn) -> std::vector<decltype(fn(PlanePoint{}))> {
  using R = decltype(fn(PlanePoint{}));
  std::vector<R> out;
  auto [P1, Q1] = chart_field(F, 1);
  auto p = *as_univariate(P1.partial_eval(1, Rational(0)), 0);
  auto q = *as_univariate(Q1.partial_eval(1, Rational(0)), 0);
  QUPoly g = gcd(p, q);
  if (g.is_zero()) throw NonIsolated("line at infinity consists of singular points");
  if (g.degree() <= 0) return out;
  auto wrapped = [&](const PlanePoint& pt) { return fn(PlanePoint{pt.tower, pt.y, Alg(0)}); };
  detail::roots_over<R>(to_aupoly(g), nullptr, Alg(0), wrapped, out);
  return out;
}

template <class Fn>
auto for_each_singular_point(const Foliation& F, Fn&& fn) -> std::vector<decltype(fn(SingularPoint{}))> {
  using R = decltype(fn(SingularPoint{}));
  std::vector<R> out;
  for (int chart = 0; chart < 3; ++chart) {
    auto [P, Q] = chart_field(F, chart);
    APoly aP = to_alg(P), aQ = to_alg(Q);
    auto visit = [&](const PlanePoint& pt) {
      SingularPoint s;
      s.chart = chart;
      s.tower = pt.tower;
      s.x = pt.x;
      s.y = pt.y;
      s.count = point_count(pt.tower);
      s.P = translate(aP, pt.x, pt.y);
      s.Q = translate(aQ, pt.x, pt.y);
      return fn(std::move(s));
    };
    std::vector<R> part;
    if (chart == 0) {
      part = for_each_common_zero(P, Q, visit);
    } else if (chart == 1) {
      part = for_each_point_at_infinity(F, visit);
    } else {
      if (P.constant_term().is_zero() && Q.constant_term().is_zero())
        part.push_back(visit(PlanePoint{nullptr, Alg(0), Alg(0)}));
    }
    for (auto& r : part) out.push_back(std::move(r));
  }
  return out;
}

inline void analyze_point(SingularPoint& s, const PointAnalysis& opt) {
  if (opt.milnor) s.milnor = intersection_multiplicity(s.P, s.Q);
  if (opt.classify) s.cls = classify_at_origin(s.P, s.Q, s.tower, opt.classify_options);
}

inline std::vector<SingularPoint> singular_points(const Foliation& F, const PointAnalysis& opt = {}) {
  return for_each_singular_point(F, [&](SingularPoint s) {
    analyze_point(s, opt);
    return s;
  });
}

inline int milnor_number(const Foliation& F, const SingularPoint& p) {
  (void)F;
  return intersection_multiplicity(p.P, p.Q);
}

inline int milnor_total(const std::vector<SingularPoint>& pts) {
  long s = 0;
  for (auto& p : pts) s += long(p.milnor) * long(p.count);
  return int(s);
}

// Boxes for the chart coordinates of each geometric point of a component.
inline std::vector<std::pair<ComplexBox, ComplexBox>> point_boxes(const TowerPtr& t, const Alg& x,
                                                                  const Alg& y, const Rational& width) {
  std::vector<std::pair<ComplexBox, ComplexBox>> out;
  auto exact = [](const Alg& a) -> std::optional<ComplexBox> {
    if (!a.is_rational()) return std::nullopt;
    return ComplexBox{a.rational(), a.rational(), Rational(0), Rational(0)};
  };
  if (!t) {
    out.push_back({*exact(x), *exact(y)});
    return out;
  }
  Rational w = width;
  for (int it = 0; it < 16; ++it, w = w / Rational(16)) {
    mpfr_prec_t prec = prec_for_width(w);
    out.clear();
    bool ok = true;
    for (auto& row : approximate(t, w)) {
      std::vector<CInterval> pt;
      for (auto& b : row) pt.push_back(b.enclosure(prec));
      auto box = [&](const Alg& a) {
        if (auto e = exact(a)) return *e;
        CInterval v = enclose(a, pt, prec);
        return ComplexBox{v.re.lo_q(), v.re.hi_q(), v.im.lo_q(), v.im.hi_q()};
      };
      auto bx = box(x), by = box(y);
      ok = ok && bx.width() <= width && by.width() <= width;
      out.push_back({bx, by});
    }
    if (ok) return out;
  }
  return out;
}

}  // namespace foliage
