#pragma once

#include "blowup.hpp"

#include <array>
#include <map>

namespace foliage {

struct PublishedValue {
  std::string quantity;
  long value = 0;
  std::string source;  // where the expected value comes from
};

struct FamilyDescriptor {
  std::string tag;
  std::map<std::string, std::string> params;
  std::vector<PublishedValue> published;
};

struct FamilyMember {
  Foliation F;
  FamilyDescriptor descriptor;
};

inline QPoly xy(const char* text) { return parse_poly(text, xy_vars()); }

// x q d/dx + p y d/dy, eigenvalue ratio p/q.
inline FamilyMember linear_family(long p, long q) {
  if (q == 0) throw InputError("linear_family: q must be nonzero");
  if (p == 0) throw InputError("linear_family: the ratio p/q must be nonzero");
  if (std::gcd(p, q) != 1) throw InputError("linear_family: p and q must be coprime");
  if (q < 0) p = -p, q = -q;
  const auto& V = xy_vars();
  QPoly P = QPoly::var(V, 0).scale(Rational(q)), Q = QPoly::var(V, 1).scale(Rational(p));
  FamilyMember m{make_foliation(P, Q), {}};
  m.descriptor.tag = "linear";
  m.descriptor.params = {{"p", std::to_string(p)}, {"q", std::to_string(q)}};
  long fi = p > 0 ? std::max(p, q) : std::labs(p) + std::labs(q);
  m.descriptor.published = {{"degree", (p == q) ? 0 : 1, "degree rule"},
                            {"first_integral_degree", fi, p > 0 ? "published: max(p,q)" : "published: |p|+|q|"}};
  return m;
}

inline long linear_expected_fi_degree(long p, long q) {
  if (q < 0) p = -p, q = -q;
  return p > 0 ? std::max(p, q) : std::labs(p) + std::labs(q);
}

// (x^3 - 1)(x - a y^2) d/dx + (y^3 - 1)(y - a x^2) d/dy
inline Foliation lins_neto(const Rational& a) {
  const auto& V = xy_vars();
  QPoly x = QPoly::var(V, 0), y = QPoly::var(V, 1), one(V, Rational(1));
  QPoly P = (x.pow(3) - one) * (x - y.pow(2).scale(a));
  QPoly Q = (y.pow(3) - one) * (y - x.pow(2).scale(a));
  return make_foliation(P, Q);
}

inline FamilyMember lins_neto_member(const Rational& a) {
  FamilyMember m{lins_neto(a), {}};
  m.descriptor.tag = "lins_neto";
  m.descriptor.params = {{"alpha", a.str()}};
  m.descriptor.published = {{"degree", 4, "published: degree 4"}};
  return m;
}

// Riccati form of the hypergeometric equation for y = w'/w:
// P = z(1-z), Q = -(z(1-z) y^2 + (c - (a+b+1) z) y - ab), variables (x, y) = (z, y).
inline Foliation hypergeometric_riccati(const Rational& a, const Rational& b, const Rational& c) {
  if (c.is_integer() && c.sign() <= 0) throw InputError("hypergeometric_riccati: c must not be a nonpositive integer");
  const auto& V = xy_vars();
  QPoly z = QPoly::var(V, 0), y = QPoly::var(V, 1), one(V, Rational(1));
  QPoly zz = z * (one - z);
  QPoly lin = QPoly(V, c) - z.scale(a + b + Rational(1));
  QPoly Q = -(zz * y * y + lin * y - QPoly(V, a * b));
  return make_foliation(zz, Q);
}

// The sign pattern of the printed 1-form, kept for comparison.
inline Foliation hypergeometric_riccati_printed(const Rational& a, const Rational& b, const Rational& c) {
  if (c.is_integer() && c.sign() <= 0) throw InputError("hypergeometric_riccati: c must not be a nonpositive integer");
  const auto& V = xy_vars();
  QPoly z = QPoly::var(V, 0), y = QPoly::var(V, 1), one(V, Rational(1));
  QPoly zz = z * (one - z);
  QPoly lin = QPoly(V, c) - z.scale(a + b + Rational(1));
  QPoly Q = zz * y * y + lin * y + QPoly(V, a * b);
  return make_foliation(zz, Q);
}

inline FamilyMember riccati_member(const Rational& a, const Rational& b, const Rational& c) {
  FamilyMember m{hypergeometric_riccati(a, b, c), {}};
  m.descriptor.tag = "riccati_hypergeometric";
  m.descriptor.params = {{"a", a.str()}, {"b", b.str()}, {"c", c.str()}};
  m.descriptor.published = {{"degree", 4, "degree rule"}};
  return m;
}

inline Rational pochhammer(const Rational& p, int n) {
  Rational r(1);
  for (int i = 0; i < n; ++i) r *= p + Rational(i);
  return r;
}

// F(1-k, b, c; x), coefficients low to high.
inline QUPoly hypergeometric_poly(int k, const Rational& b, const Rational& c) {
  if (k < 1) throw InputError("hypergeometric_poly: k must be positive");
  Rational a(1 - k);
  std::vector<Rational> co;
  Rational fact(1);
  for (int n = 0; n < k; ++n) {
    if (n > 0) fact *= Rational(n);
    Rational den = pochhammer(c, n) * fact;
    if (den.is_zero()) throw InputError("hypergeometric_poly: (c)_n vanishes");
    co.push_back(pochhammer(a, n) * pochhammer(b, n) / den);
  }
  return QUPoly(std::move(co));
}

// y F(1-k,b,c;x) - F'(1-k,b,c;x)
inline QPoly riccati_invariant_curve(int k, const Rational& b, const Rational& c) {
  QUPoly F = hypergeometric_poly(k, b, c);
  const auto& V = xy_vars();
  QPoly f = from_univariate(F, V, 0), df = from_univariate(F.derivative(), V, 0);
  return QPoly::var(V, 1) * f - df;
}

// Pullback by (X^r, Y^r, Z^r).
inline Foliation power_pullback(const Foliation& F, int r) {
  if (r < 1) throw InputError("power_pullback: r must be positive");
  const auto& V = xyz_vars();
  std::array<QPoly, 3> m;
  for (int i = 0; i < 3; ++i) m[i] = QPoly::var(V, std::size_t(i)).pow(unsigned(r));
  return pullback(F, m);
}

namespace detail {

// a + b w with w^2 + w + 1 = 0
struct QOmega {
  Rational a, b;
  QOmega operator+(const QOmega& o) const { return {a + o.a, b + o.b}; }
  QOmega operator-(const QOmega& o) const { return {a - o.a, b - o.b}; }
  QOmega operator*(const QOmega& o) const {
    // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w
    Rational bd = b * o.b;
    return {a * o.a - bd, a * o.b + b * o.a - bd};
  }
};

// Homogeneous polynomial over Q(w) as a map exponent -> coefficient.
using OmegaPoly = std::map<Exponent, QOmega>;

inline OmegaPoly omega_power_form(const QOmega& cy, int r) {
  // (X + cy Y)^r
  OmegaPoly out;
  QOmega pw{Rational(1), Rational(0)};
  for (int j = 0; j <= r; ++j) {
    QOmega c{Rational(binomial(r, j)), Rational(0)};
    out[{r - j, j, 0}] = c * pw;
    pw = pw * cy;
  }
  return out;
}

inline QPoly rational_part(const OmegaPoly& p) {
  QPoly out(xyz_vars());
  for (auto& [e, c] : p) {
    if (!c.b.is_zero()) throw std::logic_error("map is not defined over Q");
    out = out + QPoly::monomial(xyz_vars(), e, c.a);
  }
  return out;
}

}  // namespace detail

// Map sending the coordinate triangle to the invariant triangle {y = x, x = w, x = w^2}
// composed with the power map, arranged to be defined over Q.
inline std::array<QPoly, 3> lins_neto_pullback_map(int r) {
  using detail::QOmega;
  QOmega w{Rational(0), Rational(1)}, w2{Rational(-1), Rational(-1)};
  auto U = detail::omega_power_form(w, r), Vv = detail::omega_power_form(w2, r);
  // 1/sqrt(-3) = 1/(1 + 2w) = (1 + 2w)/(-3)
  QOmega inv_s3{Rational(-1, 3), Rational(-2, 3)};
  detail::OmegaPoly first, third;
  for (auto& [e, c] : U) {
    first[e] = first[e] + w2 * c * inv_s3;
    third[e] = third[e] + c * inv_s3;
  }
  for (auto& [e, c] : Vv) {
    first[e] = first[e] - w * c * inv_s3;
    third[e] = third[e] - c * inv_s3;
  }
  const auto& V = xyz_vars();
  QPoly m0 = detail::rational_part(first), m2 = detail::rational_part(third);
  QPoly m1 = m0 - QPoly::var(V, 2).pow(unsigned(r));
  return {m0, m1, m2};
}

inline FamilyMember lins_neto_pullback(const Rational& a, int r) {
  if (r < 1) throw InputError("lins_neto_pullback: r must be positive");
  FamilyMember m{pullback(lins_neto(a), lins_neto_pullback_map(r)), {}};
  m.descriptor.tag = "power_pullback";
  m.descriptor.params = {{"alpha", a.str()}, {"r", std::to_string(r)}};
  m.descriptor.published = {{"degree", 3L * r + 1, "published: 3r+1"},
                            {"dicritical_count", 3L * r * r + 6L * r + 3, "published: 3r^2+6r+3"}};
  return m;
}

}  // namespace foliage
