#pragma once

#include "rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <utility>

namespace foliage {

// Real interval with MPFR endpoints, outward rounded.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128) {
    mpfr_inits2(prec, lo_, hi_, (mpfr_ptr)0);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  Interval(const Rational& q, mpfr_prec_t prec) : Interval(prec) {
    mpfr_set_q(lo_, q.mpq().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.mpq().get_mpq_t(), MPFR_RNDU);
  }
  Interval(const Rational& a, const Rational& b, mpfr_prec_t prec) : Interval(prec) {
    mpfr_set_q(lo_, std::min(a, b).mpq().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, std::max(a, b).mpq().get_mpq_t(), MPFR_RNDU);
  }
  Interval(const Interval& o) : Interval(mpfr_get_prec(o.lo_)) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval(Interval&& o) noexcept : Interval(mpfr_get_prec(o.lo_)) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  Interval& operator=(Interval o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  ~Interval() { mpfr_clears(lo_, hi_, (mpfr_ptr)0); }

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  Rational lo_q() const { return to_q(lo_); }
  Rational hi_q() const { return to_q(hi_); }

  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool negative() const { return mpfr_sgn(hi_) < 0; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  Interval operator-() const {
    Interval r(prec());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : as)
      for (auto y : bs) {
        mpfr_mul(t, x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
      }
    mpfr_clear(t);
    return r;
  }
  // a / b for b not containing zero
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw PrecisionExhausted("interval division by an interval containing 0");
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Interval inv(p);
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
  }

  // Upper bound of |x| over the interval.
  Interval abs_hull() const {
    Interval r(prec());
    if (contains_zero()) {
      mpfr_set_zero(r.lo_, 1);
      if (mpfr_cmpabs(lo_, hi_) > 0)
        mpfr_abs(r.hi_, lo_, MPFR_RNDU);
      else
        mpfr_abs(r.hi_, hi_, MPFR_RNDU);
    } else if (positive()) {
      r = *this;
    } else {
      r = -*this;
    }
    return r;
  }
  Interval square() const {
    Interval a = abs_hull();
    Interval r(prec());
    mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }
  // sqrt of the nonnegative part
  Interval sqrt() const {
    Interval r(prec());
    if (mpfr_sgn(lo_) > 0)
      mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    else
      mpfr_set_zero(r.lo_, 1);
    if (mpfr_sgn(hi_) > 0)
      mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    else
      mpfr_set_zero(r.hi_, 1);
    return r;
  }
  Interval hull(const Interval& o) const {
    Interval r(std::max(prec(), o.prec()));
    mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
  }

  Rational width_q() const { return hi_q() - lo_q(); }

  static Rational to_q(mpfr_srcptr v) {
    if (!mpfr_number_p(v)) throw PrecisionExhausted("non-finite interval endpoint");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v);
    return Rational(q);
  }

 private:
  mpfr_t lo_, hi_;
};

// Rectangular complex interval.
struct CInterval {
  Interval re, im;

  CInterval(mpfr_prec_t p = 128) : re(p), im(p) {}
  CInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  CInterval(const Rational& r, mpfr_prec_t p) : re(r, p), im(p) {}
  CInterval(const Rational& r, const Rational& i, mpfr_prec_t p) : re(r, p), im(i, p) {}

  mpfr_prec_t prec() const { return re.prec(); }

  friend CInterval operator+(const CInterval& a, const CInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend CInterval operator-(const CInterval& a, const CInterval& b) {
    return {a.re - b.re, a.im - b.im};
  }
  CInterval operator-() const { return {-re, -im}; }
  friend CInterval operator*(const CInterval& a, const CInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CInterval operator/(const CInterval& a, const CInterval& b) {
    Interval n = b.norm2();
    CInterval num = a * b.conj();
    return {num.re / n, num.im / n};
  }
  CInterval conj() const { return {re, -im}; }
  Interval norm2() const { return re.square() + im.square(); }
  // bounds on the modulus
  Interval abs() const { return norm2().sqrt(); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool excludes_zero() const { return !contains_zero(); }
};

}  // namespace foliage
