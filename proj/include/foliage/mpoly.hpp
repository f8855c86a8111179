#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace foliage {

using Exponent = std::vector<int>;

inline int exponent_degree(const Exponent& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

// graded lexicographic order, first variable largest
inline bool grlex_less(const Exponent& a, const Exponent& b) {
  int da = exponent_degree(a), db = exponent_degree(b);
  if (da != db) return da < db;
  return a > b;
}

inline std::string format_coeff(const Rational& q, bool& negative) {
  negative = q.sign() < 0;
  return q.abs().str();
}

inline bool coeff_is_unit(const Rational& q) { return q.abs().is_one(); }

template <class K>
class MPoly {
 public:
  struct Term {
    Exponent e;
    K c;
  };
  using Vars = std::vector<std::string>;

  MPoly() = default;
  explicit MPoly(Vars vars) : vars_(std::move(vars)) {}
  MPoly(Vars vars, const K& c) : vars_(std::move(vars)) {
    if (!c.is_zero()) terms_.push_back({Exponent(vars_.size(), 0), c});
  }

  static MPoly var(const Vars& vars, std::size_t i) {
    Exponent e(vars.size(), 0);
    e.at(i) = 1;
    return monomial(vars, e, K(1));
  }
  static MPoly var(const Vars& vars, const std::string& name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw InputError("unknown variable " + name);
    return var(vars, std::size_t(it - vars.begin()));
  }
  static MPoly monomial(const Vars& vars, Exponent e, const K& c) {
    MPoly p(vars);
    if (e.size() != vars.size()) throw std::invalid_argument("exponent length mismatch");
    if (!c.is_zero()) p.terms_.push_back({std::move(e), c});
    return p;
  }
  static MPoly from_terms(const Vars& vars, std::vector<Term> ts) {
    MPoly p(vars);
    p.terms_ = std::move(ts);
    p.normalize();
    return p;
  }

  const Vars& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && exponent_degree(terms_[0].e) == 0);
  }
  K constant_term() const {
    if (!terms_.empty() && exponent_degree(terms_.back().e) == 0) return terms_.back().c;
    return K(0);
  }
  K coeff(const Exponent& e) const {
    for (auto& t : terms_)
      if (t.e == e) return t.c;
    return K(0);
  }
  const Term& leading() const { return terms_.front(); }

  int total_degree() const { return terms_.empty() ? -1 : exponent_degree(terms_.front().e); }
  int degree(std::size_t i) const {
    int d = -1;
    for (auto& t : terms_) d = std::max(d, t.e[i]);
    return d;
  }
  int degree(const std::string& v) const {
    auto i = index_of(v);
    return i ? degree(*i) : (is_zero() ? -1 : 0);
  }
  int order() const { return terms_.empty() ? -1 : exponent_degree(terms_.back().e); }

  std::optional<std::size_t> index_of(const std::string& v) const {
    auto it = std::find(vars_.begin(), vars_.end(), v);
    if (it == vars_.end()) return std::nullopt;
    return std::size_t(it - vars_.begin());
  }

  MPoly homogeneous_part(int k) const {
    MPoly r(vars_);
    for (auto& t : terms_)
      if (exponent_degree(t.e) == k) r.terms_.push_back(t);
    return r;
  }

  // Re-express over a variable list containing every variable actually used.
  MPoly with_vars(const Vars& nv) const {
    std::vector<int> map(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(nv.begin(), nv.end(), vars_[i]);
      if (it != nv.end()) map[i] = int(it - nv.begin());
    }
    MPoly r(nv);
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) {
      Exponent e(nv.size(), 0);
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (t.e[i] == 0) continue;
        if (map[i] < 0) throw InputError("variable " + vars_[i] + " not in target list");
        e[map[i]] += t.e[i];
      }
      r.terms_.push_back({std::move(e), t.c});
    }
    r.normalize();
    return r;
  }

  static Vars union_vars(const Vars& a, const Vars& b) {
    Vars r = a;
    for (auto& v : b)
      if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
    return r;
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return combine(a, b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return combine(a, b, true); }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) {
      if (a.vars_.empty() && a.is_constant()) return b.scale(a.constant_term());
      if (b.vars_.empty() && b.is_constant()) return a.scale(b.constant_term());
      Vars u = union_vars(a.vars_, b.vars_);
      return a.with_vars(u) * b.with_vars(u);
    }
    MPoly r(a.vars_);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0]);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0]);
    std::map<Exponent, K, ExpLess> acc;
    std::size_t n = a.vars_.size();
    Exponent e(n);
    for (auto& s : a.terms_)
      for (auto& t : b.terms_) {
        for (std::size_t i = 0; i < n; ++i) e[i] = s.e[i] + t.e[i];
        auto it = acc.find(e);
        if (it == acc.end())
          acc.emplace(e, s.c * t.c);
        else
          it->second += s.c * t.c;
      }
    r.terms_.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
      if (!it->second.is_zero()) r.terms_.push_back({it->first, std::move(it->second)});
    return r;
  }
  MPoly& operator+=(const MPoly& b) { return *this = *this + b; }
  MPoly& operator-=(const MPoly& b) { return *this = *this - b; }
  MPoly& operator*=(const MPoly& b) { return *this = *this * b; }

  MPoly scale(const K& c) const {
    MPoly r(vars_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) {
      K v = t.c * c;
      if (!v.is_zero()) r.terms_.push_back({t.e, std::move(v)});
    }
    return r;
  }
  friend MPoly operator*(const K& c, const MPoly& p) { return p.scale(c); }
  friend MPoly operator*(const MPoly& p, const K& c) { return p.scale(c); }

  MPoly mul_term(const Term& m) const {
    MPoly r(vars_);
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) {
      Exponent e = t.e;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += m.e[i];
      K v = t.c * m.c;
      if (!v.is_zero()) r.terms_.push_back({std::move(e), std::move(v)});
    }
    return r;
  }

  MPoly pow(unsigned k) const {
    MPoly r(vars_, K(1)), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }

  MPoly derivative(std::size_t i) const {
    MPoly r(vars_);
    for (auto& t : terms_) {
      if (t.e[i] == 0) continue;
      Exponent e = t.e;
      K c = t.c * K(e[i]);
      e[i] -= 1;
      if (!c.is_zero()) r.terms_.push_back({std::move(e), std::move(c)});
    }
    r.normalize();
    return r;
  }
  MPoly derivative(const std::string& v) const {
    auto i = index_of(v);
    if (!i) throw InputError("unknown variable " + v);
    return derivative(*i);
  }

  // Substitute images[i] for variable i. All images share one variable list.
  MPoly compose(const std::vector<MPoly>& images) const {
    if (images.size() != vars_.size()) throw std::invalid_argument("compose: arity mismatch");
    Vars target;
    for (auto& im : images) target = union_vars(target, im.vars_);
    std::vector<MPoly> ims;
    for (auto& im : images) ims.push_back(im.with_vars(target));
    std::vector<std::vector<MPoly>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) powers[i].push_back(MPoly(target, K(1)));
    MPoly r(target);
    for (auto& t : terms_) {
      MPoly m(target, t.c);
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        while (int(powers[i].size()) <= t.e[i]) powers[i].push_back(powers[i].back() * ims[i]);
        if (t.e[i]) m = m * powers[i][t.e[i]];
      }
      r = r + m;
    }
    return r;
  }

  MPoly substitute(std::size_t i, const MPoly& image) const {
    std::vector<MPoly> ims;
    Vars target = union_vars(vars_, image.vars_);
    for (std::size_t j = 0; j < vars_.size(); ++j)
      ims.push_back(j == i ? image.with_vars(target) : var(target, vars_[j]));
    return compose(ims);
  }
  MPoly substitute(const std::string& v, const MPoly& image) const {
    auto i = index_of(v);
    if (!i) return *this;
    return substitute(*i, image);
  }

  // Evaluate variable i at c, keeping the variable list.
  MPoly partial_eval(std::size_t i, const K& c) const {
    MPoly r(vars_);
    std::vector<K> pw{K(1)};
    for (auto& t : terms_) {
      while (int(pw.size()) <= t.e[i]) pw.push_back(pw.back() * c);
      Exponent e = t.e;
      K v = t.c * pw[e[i]];
      e[i] = 0;
      if (!v.is_zero()) r.terms_.push_back({std::move(e), std::move(v)});
    }
    r.normalize();
    return r;
  }

  K eval(const std::vector<K>& pt) const {
    if (pt.size() != vars_.size()) throw std::invalid_argument("eval: arity mismatch");
    K r(0);
    std::vector<std::vector<K>> pw(vars_.size(), std::vector<K>{K(1)});
    for (auto& t : terms_) {
      K m = t.c;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        while (int(pw[i].size()) <= t.e[i]) pw[i].push_back(pw[i].back() * pt[i]);
        if (t.e[i]) m = m * pw[i][t.e[i]];
      }
      r += m;
    }
    return r;
  }

  template <class F>
  auto map_coeffs(F f) const -> MPoly<decltype(f(std::declval<K>()))> {
    using L = decltype(f(std::declval<K>()));
    std::vector<typename MPoly<L>::Term> ts;
    for (auto& t : terms_) ts.push_back({t.e, f(t.c)});
    return MPoly<L>::from_terms(vars_, std::move(ts));
  }

  // Coefficients with respect to variable i, indexed by power. Variable list is kept.
  std::vector<MPoly> coefficients_in(std::size_t i) const {
    std::vector<MPoly> r(std::max(0, degree(i) + 1), MPoly(vars_));
    for (auto& t : terms_) {
      Exponent e = t.e;
      int k = e[i];
      e[i] = 0;
      r[k].terms_.push_back({std::move(e), t.c});
    }
    for (auto& c : r) c.normalize();
    return r;
  }
  static MPoly from_coefficients(const Vars& vars, std::size_t i, const std::vector<MPoly>& cs) {
    MPoly r(vars);
    for (std::size_t k = 0; k < cs.size(); ++k)
      for (auto w = cs[k].with_vars(vars); auto& t : w.terms_) {
        Exponent e = t.e;
        e[i] += int(k);
        r.terms_.push_back({std::move(e), t.c});
      }
    r.normalize();
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_equal(b);
    return (a - b).is_zero();
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
      bool neg = false;
      std::string body = format_coeff(t.c, neg);
      std::string mono;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!t.e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (t.e[i] > 1) mono += "^" + std::to_string(t.e[i]);
      }
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      if (mono.empty())
        os << body;
      else if (coeff_is_unit(t.c))
        os << mono;
      else
        os << body << "*" << mono;
    }
    return os.str();
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return grlex_less(b.e, a.e); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().e == t.e)
        out.back().c += t.c;
      else
        out.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : out)
      if (!t.c.is_zero()) terms_.push_back(std::move(t));
  }

 private:
  struct ExpLess {
    bool operator()(const Exponent& a, const Exponent& b) const { return grlex_less(a, b); }
  };

  bool terms_equal(const MPoly& b) const {
    if (terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].e != b.terms_[i].e || !(terms_[i].c == b.terms_[i].c)) return false;
    return true;
  }

  static MPoly combine(const MPoly& a, const MPoly& b, bool sub) {
    if (a.vars_ != b.vars_) {
      if (b.is_zero()) return a;
      if (a.is_zero() && a.vars_.empty()) return sub ? -b : b;
      Vars u = union_vars(a.vars_, b.vars_);
      return combine(a.with_vars(u), b.with_vars(u), sub);
    }
    MPoly r(a.vars_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() && grlex_less(b.terms_[j].e, a.terms_[i].e))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || grlex_less(a.terms_[i].e, b.terms_[j].e)) {
        r.terms_.push_back({b.terms_[j].e, sub ? K(-b.terms_[j].c) : b.terms_[j].c});
        ++j;
      } else {
        K v = sub ? K(a.terms_[i].c - b.terms_[j].c) : K(a.terms_[i].c + b.terms_[j].c);
        if (!v.is_zero()) r.terms_.push_back({a.terms_[i].e, std::move(v)});
        ++i, ++j;
      }
    }
    return r;
  }

  Vars vars_;
  std::vector<Term> terms_;
};

template <class K>
std::ostream& operator<<(std::ostream& os, const MPoly<K>& p) {
  return os << p.str();
}

using QPoly = MPoly<Rational>;

inline const std::vector<std::string>& xy_vars() {
  static const std::vector<std::string> v{"x", "y"};
  return v;
}
inline const std::vector<std::string>& xyz_vars() {
  static const std::vector<std::string> v{"X", "Y", "Z"};
  return v;
}

// Exact division: a = q*b with no remainder, or nullopt.
template <class K>
std::optional<MPoly<K>> divide_exact(const MPoly<K>& a0, const MPoly<K>& b0) {
  if (b0.is_zero()) throw DivisionByZero();
  auto vars = MPoly<K>::union_vars(a0.vars(), b0.vars());
  MPoly<K> a = a0.with_vars(vars), b = b0.with_vars(vars);
  MPoly<K> q(vars);
  if (a.is_zero()) return q;
  const auto& lt = b.leading();
  K inv = inverse(lt.c);
  std::size_t n = vars.size();
  while (!a.is_zero()) {
    const auto& at = a.leading();
    Exponent e(n);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = at.e[i] - lt.e[i];
      if (e[i] < 0) return std::nullopt;
    }
    typename MPoly<K>::Term m{e, at.c * inv};
    q = q + MPoly<K>::monomial(vars, m.e, m.c);
    a = a - b.mul_term(m);
  }
  return q;
}

template <class K>
MPoly<K> divide_or_throw(const MPoly<K>& a, const MPoly<K>& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("inexact division: " + a.str() + " / " + b.str());
  return *q;
}

// Text parser for rational polynomials: + - * / ^ and parentheses.
class PolyParser {
 public:
  PolyParser(std::string_view text, std::vector<std::string> vars)
      : s_(text), vars_(std::move(vars)) {}

  QPoly parse() {
    pos_ = 0;
    QPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p.with_vars(vars_);
  }

  static std::vector<std::string> identifiers(std::string_view s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.size();) {
      if (std::isalpha((unsigned char)s[i]) || s[i] == '_') {
        std::size_t j = i;
        while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
        std::string id(s.substr(i, j - i));
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
        i = j;
      } else {
        ++i;
      }
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw InputError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  QPoly expr() {
    QPoly r(vars_);
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    r = term();
    if (neg) r = -r;
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        break;
    }
    return r;
  }
  QPoly term() {
    QPoly r = power();
    for (;;) {
      if (eat('*')) {
        r = r * power();
      } else if (eat('/')) {
        QPoly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        r = r.scale(d.constant_term().inverse());
      } else {
        skip();
        // implicit multiplication: "2x", "x y", "(..)(..)"
        if (pos_ < s_.size() && (std::isalpha((unsigned char)s_[pos_]) || s_[pos_] == '(' ||
                                 s_[pos_] == '_'))
          r = r * power();
        else
          break;
      }
    }
    return r;
  }
  QPoly power() {
    QPoly b = atom();
    if (eat('^')) {
      skip();
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      if (st == pos_) fail("expected exponent");
      b = b.pow(unsigned(std::stoul(std::string(s_.substr(st, pos_ - st)))));
    }
    return b;
  }
  QPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      QPoly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit((unsigned char)c)) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      return QPoly(vars_, Rational(mpz_class(std::string(s_.substr(st, pos_ - st)))));
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::size_t st = pos_;
      while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) ++pos_;
      std::string id(s_.substr(st, pos_ - st));
      if (std::find(vars_.begin(), vars_.end(), id) == vars_.end()) fail("unknown variable " + id);
      return QPoly::var(vars_, id);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

// Parse with an explicit variable list; an empty list means the identifiers in order of appearance.
inline QPoly parse_poly(std::string_view text, std::vector<std::string> vars = {}) {
  if (vars.empty()) vars = PolyParser::identifiers(text);
  return PolyParser(text, std::move(vars)).parse();
}

}  // namespace foliage
