#pragma once

// Triangular towers Q[t0]/(s0)[t1]/(s1)... with squarefree monic moduli.
// Each level is a product of fields. A zero test that finds a proper factor of
// a modulus throws Split; split_map() reruns a computation on both factors.

#include "roots.hpp"
#include "upoly.hpp"

#include <exception>
#include <memory>
#include <string>

namespace foliage {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

class Alg {
 public:
  Alg() = default;
  Alg(int v) : q_(v) {}
  Alg(long v) : q_(v) {}
  Alg(const Rational& q) : q_(q) {}

  static Alg generator(const TowerPtr& t);
  static Alg from_coeffs(const TowerPtr& t, std::vector<Alg> c);

  bool is_zero() const { return !tower_ && q_.is_zero(); }
  bool is_rational() const { return !tower_; }
  const Rational& rational() const { return q_; }
  const TowerPtr& tower() const { return tower_; }
  int level() const;
  const std::vector<Alg>& coeffs() const { return c_; }

  Alg operator-() const;
  friend Alg operator+(const Alg& a, const Alg& b);
  friend Alg operator-(const Alg& a, const Alg& b) { return a + (-b); }
  friend Alg operator*(const Alg& a, const Alg& b);
  Alg& operator+=(const Alg& b) { return *this = *this + b; }
  Alg& operator-=(const Alg& b) { return *this = *this - b; }
  Alg& operator*=(const Alg& b) { return *this = *this * b; }
  friend bool operator==(const Alg& a, const Alg& b);
  friend bool operator!=(const Alg& a, const Alg& b) { return !(a == b); }

  std::string str() const;

 private:
  static Alg normalized(TowerPtr t, std::vector<Alg> c);

  TowerPtr tower_;
  Rational q_;
  std::vector<Alg> c_;
};

class Tower {
 public:
  // modulus: monic, degree >= 1, coefficients living below this level
  static TowerPtr make(TowerPtr parent, std::vector<Alg> modulus) {
    while (!modulus.empty() && modulus.back().is_zero()) modulus.pop_back();
    if (modulus.size() < 2) throw std::invalid_argument("tower modulus must have degree >= 1");
    if (!(modulus.back() == Alg(1))) throw std::invalid_argument("tower modulus must be monic");
    return TowerPtr(new Tower(std::move(parent), std::move(modulus)));
  }
  static TowerPtr make(const QUPoly& s) {
    std::vector<Alg> m;
    QUPoly sm = make_monic(s);
    for (auto& c : sm.coeffs()) m.push_back(Alg(c));
    return make(nullptr, std::move(m));
  }

  const TowerPtr& parent() const { return parent_; }
  int level() const { return level_; }
  int degree() const { return int(modulus_.size()) - 1; }
  const std::vector<Alg>& modulus() const { return modulus_; }
  std::size_t dimension() const { return std::size_t(degree()) * (parent_ ? parent_->dimension() : 1); }
  std::string var_name() const { return "t" + std::to_string(level_); }

  // true when `t` is this tower or lies on its parent chain
  bool extends(const TowerPtr& t) const {
    if (!t) return true;
    for (const Tower* p = this; p; p = p->parent_.get())
      if (p == t.get()) return true;
    return false;
  }

  std::vector<const Tower*> chain() const {
    std::vector<const Tower*> c;
    for (const Tower* p = this; p; p = p->parent_.get()) c.push_back(p);
    std::reverse(c.begin(), c.end());
    return c;
  }

 private:
  Tower(TowerPtr parent, std::vector<Alg> modulus)
      : parent_(std::move(parent)), modulus_(std::move(modulus)) {
    level_ = parent_ ? parent_->level() + 1 : 0;
  }

  TowerPtr parent_;
  int level_ = 0;
  std::vector<Alg> modulus_;
};

// A zero test found a proper factorization s = g*h of the modulus of `tower`.
struct Split : std::exception {
  TowerPtr tower;
  std::vector<Alg> g, h;
  Split(TowerPtr t, std::vector<Alg> g_, std::vector<Alg> h_)
      : tower(std::move(t)), g(std::move(g_)), h(std::move(h_)) {}
  const char* what() const noexcept override { return "unhandled tower split"; }
};

inline int Alg::level() const { return tower_ ? tower_->level() : -1; }

inline Alg Alg::normalized(TowerPtr t, std::vector<Alg> c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.empty()) return Alg();
  if (c.size() == 1) return std::move(c[0]);
  Alg r;
  r.tower_ = std::move(t);
  r.c_ = std::move(c);
  return r;
}

inline Alg Alg::generator(const TowerPtr& t) {
  if (t->degree() == 1) return -t->modulus()[0];
  return normalized(t, {Alg(0), Alg(1)});
}

inline Alg Alg::from_coeffs(const TowerPtr& t, std::vector<Alg> c) {
  const auto& s = t->modulus();
  int d = t->degree();
  for (int k = int(c.size()) - 1; k >= d; --k) {
    if (c[k].is_zero()) continue;
    Alg f = c[k];
    for (int j = 0; j < d; ++j) c[k - d + j] -= f * s[j];
    c[k] = Alg();
  }
  if (int(c.size()) > d) c.resize(d);
  return normalized(t, std::move(c));
}

inline Alg Alg::operator-() const {
  if (!tower_) return Alg(-q_);
  Alg r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

inline void check_compatible(const Alg& hi, const Alg& lo) {
  if (hi.level() == lo.level() && hi.tower() != lo.tower())
    throw std::logic_error("mixing elements of different tower branches");
  if (hi.tower() && !hi.tower()->extends(lo.tower()))
    throw std::logic_error("mixing elements of unrelated towers");
}

inline Alg operator+(const Alg& a, const Alg& b) {
  if (!a.tower_ && !b.tower_) return Alg(a.q_ + b.q_);
  if (a.level() < b.level()) return b + a;
  check_compatible(a, b);
  if (a.level() > b.level()) {
    Alg r = a;
    r.c_[0] = r.c_[0] + b;
    return r;
  }
  std::vector<Alg> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.c_.size() && i < b.c_.size())
      c[i] = a.c_[i] + b.c_[i];
    else
      c[i] = i < a.c_.size() ? a.c_[i] : b.c_[i];
  }
  return Alg::normalized(a.tower_, std::move(c));
}

inline Alg operator*(const Alg& a, const Alg& b) {
  if (!a.tower_ && !b.tower_) return Alg(a.q_ * b.q_);
  if (a.level() < b.level()) return b * a;
  if (b.is_zero()) return Alg();
  check_compatible(a, b);
  if (a.level() > b.level()) {
    if (!b.tower_ && b.q_.is_one()) return a;
    std::vector<Alg> c;
    c.reserve(a.c_.size());
    for (auto& v : a.c_) c.push_back(v * b);
    return Alg::normalized(a.tower_, std::move(c));
  }
  std::vector<Alg> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Alg::from_coeffs(a.tower_, std::move(c));
}

inline bool operator==(const Alg& a, const Alg& b) {
  if (a.tower_ != b.tower_) return false;
  if (!a.tower_) return a.q_ == b.q_;
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (!(a.c_[i] == b.c_[i])) return false;
  return true;
}

// Zero test in the product of fields; throws Split on a zero divisor.
inline bool decide_zero(const Alg& a) {
  if (a.is_rational()) return a.rational().is_zero();
  const TowerPtr& t = a.tower();
  UPoly<Alg> s(t->modulus());
  UPoly<Alg> g = gcd(UPoly<Alg>(a.coeffs()), s);
  if (g.degree() <= 0) return false;
  UPoly<Alg> h = make_monic(exact_quotient(s, g));
  throw Split(t, g.coeffs(), h.coeffs());
}

inline Alg inverse(const Alg& a) {
  if (a.is_rational()) return Alg(a.rational().inverse());
  const TowerPtr& t = a.tower();
  UPoly<Alg> s(t->modulus());
  auto x = xgcd(UPoly<Alg>(a.coeffs()), s);
  if (x.g.degree() > 0) {
    UPoly<Alg> h = make_monic(exact_quotient(s, x.g));
    throw Split(t, x.g.coeffs(), h.coeffs());
  }
  return Alg::from_coeffs(t, x.u.coeffs());
}

inline Alg pow(const Alg& a, unsigned k) {
  Alg r(1), b = a;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

// Polynomial in t0..tL representing the element.
inline QPoly to_poly(const Alg& a, int levels) {
  std::vector<std::string> vars;
  for (int i = 0; i < levels; ++i) vars.push_back("t" + std::to_string(i));
  if (a.is_rational()) return QPoly(vars, a.rational());
  QPoly r(vars);
  QPoly t = QPoly::var(vars, std::size_t(a.level()));
  QPoly pw(vars, Rational(1));
  for (auto& c : a.coeffs()) {
    r = r + to_poly(c, levels) * pw;
    pw = pw * t;
  }
  return r;
}

inline std::string Alg::str() const {
  if (!tower_) return q_.str();
  return to_poly(*this, level() + 1).str();
}

inline std::ostream& operator<<(std::ostream& os, const Alg& a) { return os << a.str(); }

inline std::string format_coeff(const Alg& a, bool& negative) {
  if (a.is_rational()) return format_coeff(a.rational(), negative);
  negative = false;
  return "(" + a.str() + ")";
}
inline bool coeff_is_unit(const Alg& a) { return a.is_rational() && coeff_is_unit(a.rational()); }

// Re-express an element of `from` over the factor tower `to` (same parent).
inline Alg rebase(const Alg& a, const TowerPtr& from, const TowerPtr& to) {
  if (from == to || !from) return a;
  if (a.tower() == from) return Alg::from_coeffs(to, a.coeffs());
  if (a.tower() && a.tower()->extends(from))
    throw std::logic_error("rebase: element lives above the split level");
  return a;
}

template <class K>
MPoly<K> rebase(const MPoly<K>& p, const TowerPtr& from, const TowerPtr& to) {
  return p.map_coeffs([&](const Alg& c) { return rebase(c, from, to); });
}

// Run fn on t; whenever fn splits t itself, rerun on both factors.
// Splits of lower levels propagate to the caller.
template <class Fn>
auto split_map(const TowerPtr& t, Fn&& fn) -> std::vector<std::pair<TowerPtr, decltype(fn(t))>> {
  std::vector<std::pair<TowerPtr, decltype(fn(t))>> out;
  std::vector<TowerPtr> work{t};
  while (!work.empty()) {
    TowerPtr cur = work.back();
    work.pop_back();
    try {
      out.emplace_back(cur, fn(cur));
    } catch (const Split& s) {
      if (!cur || s.tower != cur) throw;
      work.push_back(Tower::make(cur->parent(), s.h));
      work.push_back(Tower::make(cur->parent(), s.g));
    }
  }
  return out;
}

inline std::size_t point_count(const TowerPtr& t) { return t ? t->dimension() : 1; }

// ---- numeric enclosures of the points of a tower ----

inline CInterval enclose(const Alg& a, const std::vector<CInterval>& pt, mpfr_prec_t prec) {
  if (a.is_rational()) return CInterval(a.rational(), prec);
  CInterval r(prec);
  const CInterval& t = pt.at(a.level());
  for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it) r = r * t + enclose(*it, pt, prec);
  return r;
}

inline mpfr_prec_t prec_for_width(const Rational& w) {
  long bits = 0;
  Rational v = w;
  while (v < Rational(1) && bits < 1 << 20) v = v * Rational(2), ++bits;
  return std::max<mpfr_prec_t>(128, 2 * bits + 96);
}

// One row per geometric point: boxes for t0..tL.
inline std::vector<std::vector<ComplexBox>> approximate(const TowerPtr& t, const Rational& width) {
  if (!t) return {{}};
  if (!t->parent()) {
    std::vector<Rational> c;
    for (auto& v : t->modulus()) c.push_back(v.rational());
    std::vector<std::vector<ComplexBox>> out;
    for (auto& b : isolate_roots(QUPoly(c), width)) out.push_back({b});
    return out;
  }
  Rational pw = width;
  for (int attempt = 0; attempt < 12; ++attempt) {
    auto parents = approximate(t->parent(), pw);
    std::vector<std::vector<ComplexBox>> out;
    mpfr_prec_t prec = prec_for_width(std::min(pw, width));
    try {
      for (auto& pp : parents) {
        std::vector<CInterval> pt;
        for (auto& b : pp) pt.push_back(b.enclosure(prec));
        std::vector<CInterval> coeffs;
        for (auto& c : t->modulus()) coeffs.push_back(enclose(c, pt, prec));
        auto disks = isolate_disks(coeffs, t->degree(), width);
        for (auto& d : disks) {
          auto row = pp;
          row.push_back(d.box());
          out.push_back(std::move(row));
        }
      }
      return out;
    } catch (const PrecisionExhausted&) {
      pw = pw * pw / Rational(16);
    }
  }
  throw PrecisionExhausted("could not approximate tower points");
}

}  // namespace foliage
