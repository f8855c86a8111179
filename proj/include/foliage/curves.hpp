#pragma once

#include "foliation.hpp"

#include <random>

namespace foliage {

// A projective plane curve given by its affine equation in (x, y).
struct PlaneCurve {
  QPoly f;
  int degree = 0;
  std::optional<int> genus;         // supplied or computed
  std::optional<bool> smooth;
  std::optional<std::vector<int>> delta;  // caller-supplied delta invariants
};

inline PlaneCurve make_curve(const QPoly& f0) {
  QPoly f;
  auto vars = f0.vars();
  bool projective = !f0.is_zero() && vars == xyz_vars();
  if (projective) {
    int n = f0.total_degree();
    if (!detail::is_homogeneous(f0, n)) throw InputError("curve in X, Y, Z must be homogeneous");
    if (divide_exact(f0, QPoly::var(xyz_vars(), 2)))
      throw InputError("curve contains the line at infinity Z = 0");
    f = detail::dehomogenize(f0, 0);
  } else {
    for (auto& v : vars)
      if (v != "x" && v != "y" && f0.degree(*f0.index_of(v)) > 0)
        throw InputError("curve equation may only involve x and y, found " + v);
    f = f0.with_vars(xy_vars());
  }
  if (f.is_constant()) throw InputError("curve equation must be nonconstant");
  QPoly g = gcd(std::vector<QPoly>{f, f.derivative(std::size_t(0)), f.derivative(std::size_t(1))});
  if (!g.is_constant()) throw InputError("curve equation is not squarefree: repeated factor " + g.str());
  PlaneCurve C;
  C.f = f;
  C.degree = f.total_degree();
  return C;
}

// X(f) = P f_x + Q f_y
inline QPoly apply_field(const Foliation& F, const QPoly& f0) {
  QPoly f = f0.with_vars(xy_vars());
  return F.P * f.derivative(std::size_t(0)) + F.Q * f.derivative(std::size_t(1));
}

struct CofactorCertificate {
  PlaneCurve curve;
  QPoly cofactor;
  int degree_bound = 0;  // deg h <= d(F)
};

inline std::optional<CofactorCertificate> is_invariant(const Foliation& F, const PlaneCurve& C) {
  QPoly Xf = apply_field(F, C.f);
  auto h = divide_exact(Xf, C.f);
  if (!h) return std::nullopt;
  return CofactorCertificate{C, h->with_vars(xy_vars()), F.degree};
}

inline bool check_certificate(const Foliation& F, const CofactorCertificate& c) {
  return (apply_field(F, c.curve.f) - c.cofactor * c.curve.f).is_zero();
}

inline bool first_integral_check(const Foliation& F, const QPoly& num, const QPoly& den) {
  if (den.is_zero()) throw InputError("first integral denominator is zero");
  QPoly n = num.with_vars(xy_vars()), d = den.with_vars(xy_vars());
  return (apply_field(F, n) * d - n * apply_field(F, d)).is_zero();
}

// ---------------------------------------------------------------- extactic

// Monomials of degree <= m in (x, y), by degree.
inline std::vector<QPoly> monomial_basis(int m) {
  std::vector<QPoly> v;
  for (int k = 0; k <= m; ++k)
    for (int j = 0; j <= k; ++j) v.push_back(QPoly::monomial(xy_vars(), {k - j, j}, Rational(1)));
  return v;
}

// Rows v, X(v), ..., X^{N-1}(v) over the monomial basis of degree <= m.
inline std::vector<std::vector<QPoly>> extactic_matrix(const Foliation& F, int m) {
  if (m < 1) throw InputError("extactic order must be at least 1");
  auto v = monomial_basis(m);
  std::size_t N = v.size();
  std::vector<std::vector<QPoly>> rows{v};
  for (std::size_t k = 1; k < N; ++k) {
    std::vector<QPoly> r;
    for (auto& e : rows.back()) r.push_back(apply_field(F, e));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline QPoly extactic(const Foliation& F, int m) { return det(extactic_matrix(F, m), xy_vars()); }

namespace detail {

using QMatrix = std::vector<std::vector<Rational>>;

inline QMatrix evaluate_matrix(const std::vector<std::vector<QPoly>>& rows, const Rational& x, const Rational& y) {
  QMatrix out;
  for (auto& r : rows) {
    out.emplace_back();
    for (auto& e : r) out.back().push_back(e.eval({x, y}));
  }
  return out;
}

// Basis of {c : M c = 0}.
inline std::vector<std::vector<Rational>> nullspace(QMatrix M) {
  std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && M[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[r]);
    Rational inv = M[r][c].inverse();
    for (auto& e : M[r]) e *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][c].is_zero()) continue;
      Rational f = M[i][c];
      for (std::size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_col.push_back(int(c));
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[std::size_t(c)] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = Rational(1);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[std::size_t(pivot_col[i])] = -M[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline QPoly combine(const std::vector<QPoly>& basis, const std::vector<Rational>& c) {
  QPoly f(xy_vars());
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (!c[j].is_zero()) f = f + basis[j].scale(c[j]);
  return f;
}

inline bool proportional(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return true;
  Rational r = b.leading().c / a.leading().c;
  return (b - a.scale(r)).is_zero();
}

// Echelon basis of the pencil spanned by f and g: monic, each leading monomial
// absent from the other member.
inline std::pair<QPoly, QPoly> reduce_pencil(QPoly f, QPoly g) {
  f = f.scale(f.leading().c.inverse());
  g = g - f.scale(g.coeff(f.leading().e));
  g = g.scale(g.leading().c.inverse());
  f = f - g.scale(f.coeff(g.leading().e));
  return {f, g};
}

}  // namespace detail

enum class Vanishing { identically_zero, nonzero, undetermined };

inline const char* to_string(Vanishing v) {
  switch (v) {
    case Vanishing::identically_zero: return "vanishes";
    case Vanishing::nonzero: return "nonzero";
    case Vanishing::undetermined: return "undetermined";
  }
  return "?";
}

struct ExtacticDecision {
  Vanishing result = Vanishing::undetermined;
  std::optional<std::pair<Rational, Rational>> witness;   // E_m(witness) != 0
  std::optional<std::pair<QPoly, QPoly>> first_integral;  // certifies E_m == 0
  std::string method;
};

struct ExtacticOptions {
  int trials = 4;
  std::size_t symbolic_limit = 28;  // largest matrix for the symbolic fallback
  std::uint64_t seed = 20240601;
};

// Decides whether E_m vanishes identically. A nonzero value at a point proves
// E_m != 0; a verified rational first integral with numerator and denominator of
// degree <= m proves E_m == 0. Kernels of the evaluated matrix at generic points
// supply candidate level curves of that first integral.
inline ExtacticDecision extactic_vanishes(const Foliation& F, int m, const ExtacticOptions& opt = {}) {
  auto rows = extactic_matrix(F, m);
  auto basis = monomial_basis(m);
  std::mt19937_64 rng(opt.seed + std::uint64_t(m));
  std::uniform_int_distribution<long> num(-97, 97), den(1, 13);
  auto random_q = [&] { return Rational(num(rng), den(rng)); };
  ExtacticDecision out;
  std::vector<QPoly> levels;
  for (int t = 0; t < opt.trials; ++t) {
    Rational x = random_q(), y = random_q();
    auto M = detail::evaluate_matrix(rows, x, y);
    if (!decide_zero(det_field(M))) {
      out.result = Vanishing::nonzero;
      out.witness = {x, y};
      out.method = "evaluation";
      return out;
    }
    auto ker = detail::nullspace(std::move(M));
    if (ker.size() != 1) continue;
    QPoly f = detail::combine(basis, ker[0]);
    for (auto& g : levels) {
      if (detail::proportional(g, f)) continue;
      if (first_integral_check(F, f, g)) {
        out.result = Vanishing::identically_zero;
        out.first_integral = detail::reduce_pencil(f, g);
        out.method = "first integral";
        return out;
      }
    }
    levels.push_back(f);
  }
  if (rows.size() <= opt.symbolic_limit) {
    QPoly E = det(rows, xy_vars());
    out.result = E.is_zero() ? Vanishing::identically_zero : Vanishing::nonzero;
    out.method = "symbolic";
    return out;
  }
  out.method = "no certificate";
  return out;
}

struct FirstIntegralSearch {
  std::optional<int> degree;
  std::optional<std::pair<QPoly, QPoly>> integral;
  std::vector<ExtacticDecision> steps;
};

// Smallest m <= max_m with E_m == 0. Throws Undetermined if some order cannot be decided.
inline FirstIntegralSearch first_integral_search(const Foliation& F, int max_m, const ExtacticOptions& opt = {}) {
  if (max_m < 1) throw InputError("max_m must be at least 1");
  FirstIntegralSearch s;
  for (int m = 1; m <= max_m; ++m) {
    auto d = extactic_vanishes(F, m, opt);
    s.steps.push_back(d);
    if (d.result == Vanishing::undetermined)
      throw Undetermined("could not decide whether the extactic of order " + std::to_string(m) + " vanishes");
    if (d.result == Vanishing::identically_zero) {
      s.degree = m;
      s.integral = d.first_integral;
      return s;
    }
  }
  return s;
}

inline std::optional<int> first_integral_degree(const Foliation& F, int max_m, const ExtacticOptions& opt = {}) {
  return first_integral_search(F, max_m, opt).degree;
}

// ---------------------------------------------------------------- singularities and genus

struct CurveSingularity {
  int chart = 0;  // as for foliations: 0 affine, 1 X = 1, 2 the point [0:1:0]
  TowerPtr tower;
  Alg x, y;
  std::size_t count = 1;
  bool node = false;
};

namespace detail {

// Ordinary double point test at the origin of g, given g and its gradient vanish there.
inline bool is_node_at_origin(const APoly& g) {
  auto h = g.homogeneous_part(2);
  Alg a = h.coeff({2, 0}), b = h.coeff({1, 1}), c = h.coeff({0, 2});
  return !decide_zero(b * b - Alg(4) * a * c);
}

inline bool singular_at(const APoly& g, const Alg& x, const Alg& y) {
  if (!decide_zero(eval_at(g, x, y))) return false;
  if (!decide_zero(eval_at(g.derivative(std::size_t(0)), x, y))) return false;
  return decide_zero(eval_at(g.derivative(std::size_t(1)), x, y));
}

}  // namespace detail

inline std::vector<CurveSingularity> curve_singularities(const PlaneCurve& C) {
  QPoly f = C.f.with_vars(xy_vars());
  QPoly fx = f.derivative(std::size_t(0)), fy = f.derivative(std::size_t(1));
  std::vector<CurveSingularity> out;
  auto make = [&](int chart, const APoly& g, const PlanePoint& pt) {
    std::optional<CurveSingularity> s;
    if (!detail::singular_at(g, pt.x, pt.y)) return s;
    s = CurveSingularity{chart, pt.tower, pt.x, pt.y, point_count(pt.tower), false};
    s->node = detail::is_node_at_origin(translate(g, pt.x, pt.y));
    return s;
  };
  // affine part: common zeros of f and f_x + l f_y, with l avoiding shared components
  APoly af = to_alg(f);
  if (!fx.is_zero() || !fy.is_zero()) {
    QPoly combo;
    for (long l = 0;; ++l) {
      combo = fx + fy.scale(Rational(l));
      if (!combo.is_zero() && gcd(f, combo).is_constant()) break;
      if (l > 4L * C.degree + 4) throw std::logic_error("no admissible combination of partials");
    }
    for (auto& s : for_each_common_zero(f, combo, [&](const PlanePoint& pt) { return make(0, af, pt); }))
      if (s) out.push_back(*s);
  }
  // line at infinity
  QPoly H = detail::homogenize(f, C.degree);
  QPoly f1 = detail::dehomogenize(H, 1), f2 = detail::dehomogenize(H, 2);
  APoly a1 = to_alg(f1), a2 = to_alg(f2);
  {
    QUPoly g0 = *as_univariate(f1.partial_eval(1, Rational(0)), 0);
    QUPoly g1 = *as_univariate(f1.derivative(std::size_t(0)).partial_eval(1, Rational(0)), 0);
    QUPoly g2 = *as_univariate(f1.derivative(std::size_t(1)).partial_eval(1, Rational(0)), 0);
    QUPoly g = gcd(gcd(g0, g1), g2);
    if (g.is_zero()) throw InputError("curve is singular along the line at infinity");
    if (g.degree() > 0) {
      std::vector<std::optional<CurveSingularity>> found;
      auto visit = [&](const PlanePoint& pt) { return make(1, a1, PlanePoint{pt.tower, pt.y, Alg(0)}); };
      detail::roots_over<std::optional<CurveSingularity>>(to_aupoly(g), nullptr, Alg(0), visit, found);
      for (auto& s : found)
        if (s) out.push_back(*s);
    }
  }
  if (auto s = make(2, a2, PlanePoint{nullptr, Alg(0), Alg(0)})) out.push_back(*s);
  return out;
}

inline int arithmetic_genus(int n) { return (n - 1) * (n - 2) / 2; }

// Geometric genus: (n-1)(n-2)/2 minus the delta invariants (1 per node unless supplied).
inline int genus(const PlaneCurve& C) {
  int pa = arithmetic_genus(C.degree);
  if (C.genus) return *C.genus;
  if (C.delta) {
    int s = 0;
    for (int d : *C.delta) {
      if (d < 0) throw InputError("delta invariants must be nonnegative");
      s += d;
    }
    return pa - s;
  }
  long nodes = 0;
  for (auto& s : curve_singularities(C)) {
    if (!s.node) {
      std::string where = "chart " + std::to_string(s.chart) + " (" + s.x.str() + ", " + s.y.str() + ")";
      throw InputError("curve has a non-nodal singular point at " + where + "; supply its delta invariant");
    }
    nodes += long(s.count);
  }
  return pa - int(nodes);
}

inline PlaneCurve with_smoothness(PlaneCurve C) {
  C.smooth = curve_singularities(C).empty();
  if (*C.smooth && !C.genus) C.genus = arithmetic_genus(C.degree);
  return C;
}

}  // namespace foliage
