#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace foliage {

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Undetermined : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PrecisionExhausted : Undetermined {
  using Undetermined::Undetermined;
};

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

// Exact rational number in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}
  Rational(long v) : q_(v) {}
  Rational(long long v) : q_(mpz_class(std::to_string(v))) {}
  Rational(unsigned v) : q_(v) {}
  Rational(unsigned long v) : q_(v) {}
  Rational(const mpz_class& v) : q_(v) {}
  Rational(const mpq_class& v) : q_(v) { q_.canonicalize(); }
  Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw DivisionByZero();
    q_ = mpq_class(n, d);
    q_.canonicalize();
  }
  Rational(long n, long d) : Rational(mpz_class(n), mpz_class(d)) {}

  static Rational parse(std::string_view s) {
    std::string t;
    for (char c : s)
      if (c != ' ' && c != '\t') t.push_back(c);
    if (t.empty()) throw InputError("empty rational");
    auto slash = t.find('/');
    auto ok = [](const std::string& u) {
      std::size_t i = (u.size() && (u[0] == '-' || u[0] == '+')) ? 1 : 0;
      if (i >= u.size()) return false;
      for (; i < u.size(); ++i)
        if (u[i] < '0' || u[i] > '9') return false;
      return true;
    };
    auto strip = [](std::string u) {
      if (!u.empty() && u[0] == '+') u.erase(0, 1);
      return u;
    };
    if (slash == std::string::npos) {
      if (!ok(t)) throw InputError("malformed rational: " + t);
      return Rational(mpz_class(strip(t)));
    }
    std::string a = t.substr(0, slash), b = t.substr(slash + 1);
    if (!ok(a) || !ok(b)) throw InputError("malformed rational: " + t);
    mpz_class d(strip(b));
    if (d == 0) throw InputError("zero denominator: " + t);
    return Rational(mpz_class(strip(a)), d);
  }

  const mpq_class& mpq() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational inverse() const {
    if (is_zero()) throw DivisionByZero();
    return Rational(mpq_class(1) / q_);
  }
  Rational pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), unsigned(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), unsigned(e));
    return Rational(n, d);
  }
  double to_double() const { return q_.get_d(); }

  // floor and ceiling as integers
  mpz_class floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }
  mpz_class ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  std::size_t hash() const {
    return std::hash<std::string>()(str());
  }

 private:
  mpq_class q_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

inline bool decide_zero(const Rational& q) { return q.is_zero(); }
inline Rational inverse(const Rational& q) { return q.inverse(); }

// Simplest rational (least denominator) in the closed interval [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi) {
  if (hi < lo) std::swap(lo, hi);
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_between(-hi, -lo);
  // continued fraction descent for 0 < lo <= hi
  mpz_class fl = lo.floor();
  if (Rational(fl) == lo) return lo;
  if (Rational(mpz_class(fl + 1)) <= hi) return Rational(mpz_class(fl + 1));
  Rational frac_lo = lo - Rational(fl), frac_hi = hi - Rational(fl);
  Rational inner = simplest_between(frac_hi.inverse(), frac_lo.inverse());
  return Rational(fl) + inner.inverse();
}

inline mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace foliage
