#pragma once

#include "rational.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace foliage {

// Dense univariate polynomial, coefficients low to high.
// Degree queries are structural; the *_decided functions consult decide_zero()
// and may split the coefficient ring when K is an algebra.
template <class K>
class UPoly {
 public:
  UPoly() = default;
  UPoly(std::vector<K> c) : c_(std::move(c)) { trim(); }
  explicit UPoly(const K& c) {
    if (!c.is_zero()) c_.push_back(c);
  }
  static UPoly x_power(int k, const K& c = K(1)) {
    std::vector<K> v(k + 1, K(0));
    v[k] = c;
    return UPoly(std::move(v));
  }

  const std::vector<K>& coeffs() const { return c_; }
  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const K& lc() const { return c_.back(); }
  K operator[](int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : K(0); }

  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly scale(const K& s) const {
    std::vector<K> r;
    r.reserve(c_.size());
    for (auto& v : c_) r.push_back(v * s);
    return UPoly(std::move(r));
  }
  UPoly shift_up(int k) const {
    if (is_zero()) return *this;
    std::vector<K> r(k, K(0));
    r.insert(r.end(), c_.begin(), c_.end());
    return UPoly(std::move(r));
  }

  UPoly derivative() const {
    std::vector<K> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * K(int(i)));
    return UPoly(std::move(r));
  }

  K eval(const K& x) const {
    K r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }
  template <class V>
  V eval_in(const V& x) const {
    V r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + V(*it);
    return r;
  }

  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  std::vector<K>& mutable_coeffs() { return c_; }

 private:
  std::vector<K> c_;
};

// Drop leading coefficients that are zero in the coefficient ring.
template <class K>
UPoly<K> trim_decided(UPoly<K> p) {
  auto& c = p.mutable_coeffs();
  while (!c.empty() && decide_zero(c.back())) c.pop_back();
  return p;
}

template <class K>
UPoly<K> make_monic(const UPoly<K>& p0) {
  UPoly<K> p = trim_decided(p0);
  if (p.is_zero()) return p;
  K inv = inverse(p.lc());
  UPoly<K> r = p.scale(inv);
  r.mutable_coeffs().back() = K(1);
  return r;
}

// Division with remainder by a divisor whose leading coefficient is invertible.
template <class K>
std::pair<UPoly<K>, UPoly<K>> divmod(const UPoly<K>& a0, const UPoly<K>& b0) {
  UPoly<K> b = trim_decided(b0);
  if (b.is_zero()) throw DivisionByZero();
  K inv = inverse(b.lc());
  std::vector<K> r = a0.coeffs();
  int db = b.degree();
  if (int(r.size()) - 1 < db) return {UPoly<K>(), UPoly<K>(std::move(r))};
  std::vector<K> q(r.size() - db, K(0));
  for (int k = int(r.size()) - 1; k >= db; --k) {
    if (r[k].is_zero()) continue;
    K f = r[k] * inv;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs()[j];
    r[k] = K(0);
  }
  r.resize(db);
  return {UPoly<K>(std::move(q)), UPoly<K>(std::move(r))};
}

template <class K>
UPoly<K> rem(const UPoly<K>& a, const UPoly<K>& b) {
  return divmod(a, b).second;
}

// Monic gcd; zero only when both inputs vanish.
template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  a = trim_decided(a);
  b = trim_decided(b);
  while (!b.is_zero()) {
    UPoly<K> r = trim_decided(rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic.
template <class K>
struct XGcd {
  UPoly<K> g, u, v;
};
template <class K>
XGcd<K> xgcd(UPoly<K> a, UPoly<K> b) {
  a = trim_decided(a);
  b = trim_decided(b);
  UPoly<K> u0(K(1)), v0, u1, v1(K(1));
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    r = trim_decided(r);
    UPoly<K> u2 = u0 - q * u1, v2 = v0 - q * v1;
    a = std::move(b);
    b = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (a.is_zero()) return {a, u0, v0};
  K inv = inverse(a.lc());
  return {make_monic(a), u0.scale(inv), v0.scale(inv)};
}

template <class K>
UPoly<K> exact_quotient(const UPoly<K>& a, const UPoly<K>& b) {
  auto [q, r] = divmod(a, b);
  if (!trim_decided(r).is_zero()) throw std::logic_error("inexact univariate division");
  return q;
}

// Monic squarefree part (characteristic zero).
template <class K>
UPoly<K> squarefree_part(const UPoly<K>& p0) {
  UPoly<K> p = make_monic(p0);
  if (p.degree() <= 0) return p;
  UPoly<K> g = gcd(p, p.derivative());
  if (g.degree() <= 0) return p;
  return make_monic(exact_quotient(p, g));
}

// Multiplicity of the root 0.
template <class K>
int order_at_zero(const UPoly<K>& p) {
  for (int i = 0; i <= p.degree(); ++i)
    if (!decide_zero(p.coeffs()[i])) return i;
  return -1;
}

template <class K>
UPoly<K> compose(const UPoly<K>& p, const UPoly<K>& q) {
  UPoly<K> r;
  for (int i = p.degree(); i >= 0; --i) r = r * q + UPoly<K>(p.coeffs()[i]);
  return r;
}

// p(x + a)
template <class K>
UPoly<K> taylor_shift(const UPoly<K>& p, const K& a) {
  std::vector<K> c = p.coeffs();
  int n = int(c.size());
  for (int i = 0; i < n; ++i)
    for (int j = n - 2; j >= i; --j) c[j] += a * c[j + 1];
  return UPoly<K>(std::move(c));
}

using QUPoly = UPoly<Rational>;

}  // namespace foliage
