#pragma once

#include "mpoly.hpp"
#include "upoly.hpp"

#include <numeric>

namespace foliage {

// Scale to integer coefficients with content 1 and positive leading coefficient.
inline QPoly normalize_content(const QPoly& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1, g = 0;
  for (auto& t : p.terms()) l = lcm(l, t.c.den());
  for (auto& t : p.terms()) g = gcd(g, mpz_class(t.c.num() * (l / t.c.den())));
  Rational s(l, g);
  if (p.leading().c.sign() < 0) s = -s;
  return p.scale(s);
}

inline QUPoly normalize_content(const QUPoly& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1, g = 0;
  for (auto& c : p.coeffs()) l = lcm(l, c.den());
  for (auto& c : p.coeffs())
    if (!c.is_zero()) g = gcd(g, mpz_class(c.num() * (l / c.den())));
  Rational s(l, g);
  if (p.lc().sign() < 0) s = -s;
  return p.scale(s);
}

// Univariate view of a polynomial in variable i only.
inline std::optional<QUPoly> as_univariate(const QPoly& p, std::size_t i) {
  std::vector<Rational> c(std::max(0, p.degree(i) + 1));
  for (auto& t : p.terms()) {
    for (std::size_t j = 0; j < t.e.size(); ++j)
      if (j != i && t.e[j]) return std::nullopt;
    c[t.e[i]] = t.c;
  }
  return QUPoly(std::move(c));
}

template <class K>
MPoly<K> from_univariate(const UPoly<K>& u, const std::vector<std::string>& vars, std::size_t i) {
  std::vector<typename MPoly<K>::Term> ts;
  for (int k = 0; k <= u.degree(); ++k) {
    if (u.coeffs()[k].is_zero()) continue;
    Exponent e(vars.size(), 0);
    e[i] = k;
    ts.push_back({e, u.coeffs()[k]});
  }
  return MPoly<K>::from_terms(vars, std::move(ts));
}

template <class K>
UPoly<K> to_univariate(const MPoly<K>& p, std::size_t i) {
  std::vector<K> c(std::max(0, p.degree(i) + 1), K(0));
  for (auto& t : p.terms()) {
    for (std::size_t j = 0; j < t.e.size(); ++j)
      if (j != i && t.e[j]) throw std::invalid_argument("to_univariate: extra variables");
    c[t.e[i]] += t.c;
  }
  return UPoly<K>(std::move(c));
}

namespace detail {

inline std::vector<std::size_t> used_vars(const QPoly& a, const QPoly& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.nvars(); ++i)
    if (a.degree(i) > 0 || b.degree(i) > 0) out.push_back(i);
  return out;
}

inline QPoly prem(const QPoly& a, const QPoly& b, std::size_t v) {
  QPoly r = a;
  int db = b.degree(v);
  auto bc = b.coefficients_in(v);
  QPoly lb = bc.back();
  while (!r.is_zero() && r.degree(v) >= db) {
    int dr = r.degree(v);
    QPoly lr = r.coefficients_in(v).back();
    Exponent e(a.nvars(), 0);
    e[v] = dr - db;
    r = r * lb - (lr * b).mul_term({e, Rational(1)});
  }
  return r;
}

QPoly gcd_rec(const QPoly& a, const QPoly& b);

inline QPoly content_in(const QPoly& p, std::size_t v) {
  QPoly g(p.vars());
  for (auto& c : p.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_content(c) : gcd_rec(g, c);
    if (g.is_constant()) return QPoly(p.vars(), Rational(1));
  }
  return g;
}

inline QPoly gcd_rec(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) return normalize_content(b);
  if (b.is_zero()) return normalize_content(a);
  auto used = used_vars(a, b);
  if (used.empty()) return QPoly(a.vars(), Rational(1));
  if (used.size() == 1) {
    std::size_t i = used[0];
    auto ua = as_univariate(a, i), ub = as_univariate(b, i);
    return normalize_content(from_univariate(gcd(*ua, *ub), a.vars(), i));
  }
  // main variable: the used one of smallest maximal degree
  std::size_t v = used[0];
  int best = 1 << 30;
  for (auto i : used) {
    int d = std::max(a.degree(i), b.degree(i));
    if (d < best) best = d, v = i;
  }
  if (a.degree(v) <= 0 || b.degree(v) <= 0) {
    // one side is free of v: gcd divides every coefficient of the other
    const QPoly& free_side = a.degree(v) <= 0 ? a : b;
    const QPoly& other = a.degree(v) <= 0 ? b : a;
    return normalize_content(gcd_rec(free_side, content_in(other, v)));
  }
  QPoly ca = content_in(a, v), cb = content_in(b, v);
  QPoly c = gcd_rec(ca, cb);
  QPoly pa = normalize_content(divide_or_throw(a, ca));
  QPoly pb = normalize_content(divide_or_throw(b, cb));
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.degree(v) > 0) {
    QPoly r = prem(pa, pb, v);
    pa = std::move(pb);
    if (r.is_zero()) {
      pb = QPoly(a.vars());
      break;
    }
    pb = normalize_content(divide_or_throw(r, content_in(r, v)));
  }
  QPoly g = pb.is_zero() ? pa : QPoly(a.vars(), Rational(1));
  if (pb.is_zero()) g = normalize_content(divide_or_throw(g, content_in(g, v)));
  return normalize_content(c * g);
}

}  // namespace detail

// Greatest common divisor over Q, normalized to integer content 1 and positive leading term.
inline QPoly gcd(const QPoly& a0, const QPoly& b0) {
  auto vars = QPoly::union_vars(a0.vars(), b0.vars());
  QPoly a = a0.with_vars(vars), b = b0.with_vars(vars);
  if (a.is_zero() && b.is_zero()) return QPoly(vars);
  return detail::gcd_rec(a, b);
}

inline QPoly gcd(const std::vector<QPoly>& ps) {
  QPoly g;
  for (auto& p : ps) g = gcd(g, p);
  return g;
}

// Fraction-free elimination. R supplies *, -, is_zero() and exact division through div.
template <class R, class Div>
R bareiss_det(std::vector<std::vector<R>> m, const R& one, Div div) {
  std::size_t n = m.size();
  if (n == 0) return one;
  R prev = one;
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return one - one;
      std::swap(m[k], m[p]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = div(t, prev);
      }
    }
    prev = m[k][k];
  }
  R d = m[n - 1][n - 1];
  return neg ? R(one - one) - d : d;
}

inline QPoly det(const std::vector<std::vector<QPoly>>& m, const std::vector<std::string>& vars) {
  // univariate entries run on dense polynomials
  std::optional<std::size_t> single;
  bool uni = true;
  for (auto& row : m)
    for (auto& e : row) {
      auto w = e.with_vars(vars);
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (w.degree(i) > 0) {
          if (single && *single != i) uni = false;
          single = i;
        }
    }
  if (uni) {
    std::size_t i = single.value_or(0);
    std::vector<std::vector<QUPoly>> u;
    for (auto& row : m) {
      u.emplace_back();
      for (auto& e : row) u.back().push_back(to_univariate(e.with_vars(vars), i));
    }
    QUPoly d = bareiss_det(std::move(u), QUPoly(Rational(1)),
                           [](const QUPoly& a, const QUPoly& b) { return exact_quotient(a, b); });
    return from_univariate(d, vars, i);
  }
  std::vector<std::vector<QPoly>> w;
  for (auto& row : m) {
    w.emplace_back();
    for (auto& e : row) w.back().push_back(e.with_vars(vars));
  }
  return bareiss_det(std::move(w), QPoly(vars, Rational(1)),
                     [](const QPoly& a, const QPoly& b) { return divide_or_throw(a, b); });
}

// Determinant over a field, pivots chosen by decided nonvanishing.
template <class K>
K det_field(std::vector<std::vector<K>> m) {
  std::size_t n = m.size();
  K d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && decide_zero(m[p][k])) ++p;
    if (p == n) return K(0);
    if (p != k) {
      std::swap(m[p], m[k]);
      d = -d;
    }
    d = d * m[k][k];
    K inv = inverse(m[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      K f = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

// Resultant with respect to variable v via the Sylvester matrix.
inline QPoly resultant(const QPoly& f0, const QPoly& g0, const std::string& v) {
  auto vars = QPoly::union_vars(f0.vars(), g0.vars());
  if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  QPoly f = f0.with_vars(vars), g = g0.with_vars(vars);
  std::size_t vi = *f.index_of(v);
  if (f.is_zero() || g.is_zero()) return QPoly(vars);
  int m = f.degree(vi), n = g.degree(vi);
  if (m == 0 && n == 0) throw InputError("resultant: both polynomials are free of " + v);
  auto fc = f.coefficients_in(vi), gc = g.coefficients_in(vi);
  int N = m + n;
  std::vector<std::vector<QPoly>> S(N, std::vector<QPoly>(N, QPoly(vars)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) S[r][r + k] = fc[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) S[n + r][r + k] = gc[n - k];
  return det(S, vars);
}

inline QUPoly resultant(const QUPoly& f, const QUPoly& g) {
  std::vector<std::string> vars{"t"};
  QPoly r = resultant(from_univariate(f, vars, 0), from_univariate(g, vars, 0), "t");
  return QUPoly(r.constant_term());
}

}  // namespace foliage
