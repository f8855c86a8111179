#pragma once

#include "interval.hpp"
#include "polyalg.hpp"

#include <numeric>

namespace foliage {

// Axis-parallel box with rational corners.
struct ComplexBox {
  Rational re_lo, re_hi, im_lo, im_hi;
  bool certified = true;

  Rational width() const { return std::max(re_hi - re_lo, im_hi - im_lo); }
  bool contains(const Rational& re, const Rational& im) const {
    return re_lo <= re && re <= re_hi && im_lo <= im && im <= im_hi;
  }
  bool inside(const ComplexBox& o) const {
    return o.re_lo <= re_lo && re_hi <= o.re_hi && o.im_lo <= im_lo && im_hi <= o.im_hi;
  }
  bool disjoint(const ComplexBox& o) const {
    return re_hi < o.re_lo || o.re_hi < re_lo || im_hi < o.im_lo || o.im_hi < im_lo;
  }
  bool real_axis_meets() const { return im_lo.sign() <= 0 && im_hi.sign() >= 0; }
  Rational mid_re() const { return (re_lo + re_hi) / Rational(2); }
  Rational mid_im() const { return (im_lo + im_hi) / Rational(2); }
  CInterval enclosure(mpfr_prec_t p) const {
    return {Interval(re_lo, re_hi, p), Interval(im_lo, im_hi, p)};
  }
};

inline bool operator<(const ComplexBox& a, const ComplexBox& b) {
  if (a.re_lo != b.re_lo) return a.re_lo < b.re_lo;
  return a.im_lo < b.im_lo;
}

struct RootDisk {
  Rational cre, cim, r;
  ComplexBox box() const { return {cre - r, cre + r, cim - r, cim + r}; }
};

namespace detail {

inline Rational pow2(long k) {
  mpz_class v = 1;
  if (k >= 0) {
    v <<= k;
    return Rational(v);
  }
  v <<= -k;
  return Rational(mpz_class(1), v);
}

inline bool disk_meets_box(const RootDisk& d, const ComplexBox& b) {
  Rational x = std::clamp(d.cre, b.re_lo, b.re_hi);
  Rational y = std::clamp(d.cim, b.im_lo, b.im_hi);
  Rational dx = x - d.cre, dy = y - d.cim;
  return dx * dx + dy * dy <= d.r * d.r;
}

// Plain MPFR complex number for the approximation phase.
struct MpC {
  mpfr_t re, im;
  explicit MpC(mpfr_prec_t p) {
    mpfr_inits2(p, re, im, (mpfr_ptr)0);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
  }
  MpC(const MpC& o) : MpC(mpfr_get_prec(o.re)) {
    mpfr_set(re, o.re, MPFR_RNDN);
    mpfr_set(im, o.im, MPFR_RNDN);
  }
  MpC& operator=(const MpC& o) {
    mpfr_set(re, o.re, MPFR_RNDN);
    mpfr_set(im, o.im, MPFR_RNDN);
    return *this;
  }
  ~MpC() { mpfr_clears(re, im, (mpfr_ptr)0); }
};

// r = a * b (r may alias a or b)
inline void cmul(MpC& r, const MpC& a, const MpC& b, mpfr_t t1, mpfr_t t2, mpfr_t t3) {
  mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
  mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
  mpfr_mul(t3, a.re, b.im, MPFR_RNDN);
  mpfr_fma(r.im, a.im, b.re, t3, MPFR_RNDN);
  mpfr_sub(r.re, t1, t2, MPFR_RNDN);
}

// r = a / b
inline void cdiv(MpC& r, const MpC& a, const MpC& b, mpfr_t t1, mpfr_t t2, mpfr_t t3, mpfr_t t4) {
  mpfr_sqr(t4, b.re, MPFR_RNDN);
  mpfr_fma(t4, b.im, b.im, t4, MPFR_RNDN);
  mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
  mpfr_fma(t1, a.im, b.im, t1, MPFR_RNDN);
  mpfr_mul(t2, a.im, b.re, MPFR_RNDN);
  mpfr_mul(t3, a.re, b.im, MPFR_RNDN);
  mpfr_sub(t2, t2, t3, MPFR_RNDN);
  mpfr_div(r.re, t1, t4, MPFR_RNDN);
  mpfr_div(r.im, t2, t4, MPFR_RNDN);
}

inline Rational mpfr_to_q(mpfr_srcptr v) { return Interval::to_q(v); }

// Simultaneous approximation of all roots by Aberth iteration.
class Aberth {
 public:
  Aberth(const std::vector<CInterval>& a, mpfr_prec_t prec) : prec_(prec), n_(int(a.size()) - 1) {
    mpfr_inits2(prec, t1, t2, t3, t4, (mpfr_ptr)0);
    for (auto& c : a) {
      MpC m(prec);
      mpfr_add(m.re, c.re.lo(), c.re.hi(), MPFR_RNDN);
      mpfr_div_2ui(m.re, m.re, 1, MPFR_RNDN);
      mpfr_add(m.im, c.im.lo(), c.im.hi(), MPFR_RNDN);
      mpfr_div_2ui(m.im, m.im, 1, MPFR_RNDN);
      c_.push_back(m);
    }
    start();
  }
  ~Aberth() { mpfr_clears(t1, t2, t3, t4, (mpfr_ptr)0); }
  Aberth(const Aberth&) = delete;
  Aberth& operator=(const Aberth&) = delete;

  const std::vector<MpC>& roots() const { return z_; }

  // One Gauss-Seidel sweep; returns true when every correction is below the precision.
  bool sweep() {
    MpC p(prec_), dp(prec_), w(prec_), s(prec_), d(prec_), one(prec_), tmp(prec_);
    mpfr_set_ui(one.re, 1, MPFR_RNDN);
    bool small = true;
    for (int i = 0; i < n_; ++i) {
      horner(z_[i], p, dp);
      if (mpfr_zero_p(p.re) && mpfr_zero_p(p.im)) continue;
      if (mpfr_zero_p(dp.re) && mpfr_zero_p(dp.im)) {
        mpfr_nextabove(z_[i].re);
        small = false;
        continue;
      }
      cdiv(w, p, dp, t1, t2, t3, t4);
      mpfr_set_zero(s.re, 1);
      mpfr_set_zero(s.im, 1);
      for (int j = 0; j < n_; ++j) {
        if (j == i) continue;
        mpfr_sub(d.re, z_[i].re, z_[j].re, MPFR_RNDN);
        mpfr_sub(d.im, z_[i].im, z_[j].im, MPFR_RNDN);
        if (mpfr_zero_p(d.re) && mpfr_zero_p(d.im)) continue;
        cdiv(tmp, one, d, t1, t2, t3, t4);
        mpfr_add(s.re, s.re, tmp.re, MPFR_RNDN);
        mpfr_add(s.im, s.im, tmp.im, MPFR_RNDN);
      }
      // z -= w / (1 - w s)
      cmul(tmp, w, s, t1, t2, t3);
      mpfr_sub(d.re, one.re, tmp.re, MPFR_RNDN);
      mpfr_neg(d.im, tmp.im, MPFR_RNDN);
      if (mpfr_zero_p(d.re) && mpfr_zero_p(d.im)) continue;
      cdiv(tmp, w, d, t1, t2, t3, t4);
      mpfr_sub(z_[i].re, z_[i].re, tmp.re, MPFR_RNDN);
      mpfr_sub(z_[i].im, z_[i].im, tmp.im, MPFR_RNDN);
      // compare |correction| with 2^(10 - prec) * max(1, |z|)
      mpfr_hypot(t1, tmp.re, tmp.im, MPFR_RNDN);
      mpfr_hypot(t2, z_[i].re, z_[i].im, MPFR_RNDN);
      if (mpfr_cmp_ui(t2, 1) < 0) mpfr_set_ui(t2, 1, MPFR_RNDN);
      mpfr_mul_2si(t2, t2, 10 - long(prec_), MPFR_RNDN);
      if (mpfr_greater_p(t1, t2)) small = false;
    }
    return small;
  }

 private:
  void horner(const MpC& x, MpC& p, MpC& dp) {
    MpC tmp(prec_);
    p = c_[n_];
    mpfr_set_zero(dp.re, 1);
    mpfr_set_zero(dp.im, 1);
    for (int k = n_ - 1; k >= 0; --k) {
      cmul(tmp, dp, x, t1, t2, t3);
      mpfr_add(dp.re, tmp.re, p.re, MPFR_RNDN);
      mpfr_add(dp.im, tmp.im, p.im, MPFR_RNDN);
      cmul(tmp, p, x, t1, t2, t3);
      mpfr_add(p.re, tmp.re, c_[k].re, MPFR_RNDN);
      mpfr_add(p.im, tmp.im, c_[k].im, MPFR_RNDN);
    }
  }

  // Initial points on a circle whose radius is the Fujiwara bound.
  void start() {
    mpfr_t lead, r, q;
    mpfr_inits2(prec_, lead, r, q, (mpfr_ptr)0);
    mpfr_hypot(lead, c_[n_].re, c_[n_].im, MPFR_RNDN);
    mpfr_set_zero(r, 1);
    for (int i = 1; i <= n_; ++i) {
      mpfr_hypot(q, c_[n_ - i].re, c_[n_ - i].im, MPFR_RNDN);
      mpfr_div(q, q, lead, MPFR_RNDN);
      if (i == n_) mpfr_div_2ui(q, q, 1, MPFR_RNDN);
      mpfr_rootn_ui(q, q, unsigned(i), MPFR_RNDN);
      if (mpfr_greater_p(q, r)) mpfr_set(r, q, MPFR_RNDN);
    }
    mpfr_mul_2ui(r, r, 1, MPFR_RNDN);
    if (mpfr_zero_p(r)) mpfr_set_ui(r, 1, MPFR_RNDN);
    mpfr_const_pi(q, MPFR_RNDN);
    for (int k = 0; k < n_; ++k) {
      MpC z(prec_);
      // angle 2 pi k / n + 0.4
      mpfr_mul_ui(t1, q, unsigned(2 * k), MPFR_RNDN);
      mpfr_div_ui(t1, t1, unsigned(n_), MPFR_RNDN);
      mpfr_set_d(t2, 0.4, MPFR_RNDN);
      mpfr_add(t1, t1, t2, MPFR_RNDN);
      mpfr_sin_cos(z.im, z.re, t1, MPFR_RNDN);
      mpfr_mul(z.re, z.re, r, MPFR_RNDN);
      mpfr_mul(z.im, z.im, r, MPFR_RNDN);
      z_.push_back(z);
    }
    mpfr_clears(lead, r, q, (mpfr_ptr)0);
  }

  mpfr_prec_t prec_;
  int n_;
  std::vector<MpC> c_, z_;
  mpfr_t t1, t2, t3, t4;
};

}  // namespace detail

// Certified isolation for a polynomial of degree n with interval coefficients, all
// of whose members have n distinct roots. Returns one disk per root; the boxes
// contain exactly that root and have width at most `width`.
//
// Aberth iteration gives approximations z_i; the disks |z - z_i| <= n |W_i| with
// W_i = p(z_i) / (lc prod_{j != i} (z_i - z_j)) are then evaluated in interval
// arithmetic. When they are pairwise disjoint each holds exactly one root.
inline std::vector<RootDisk> isolate_disks(const std::vector<CInterval>& a, int n,
                                           const Rational& width) {
  if (n == 0) return {};
  if (int(a.size()) != n + 1) throw std::invalid_argument("isolate_disks: degree must equal the root count");
  mpfr_prec_t prec = a[0].prec();
  if (a.back().contains_zero()) throw PrecisionExhausted("leading coefficient not separated from 0");
  detail::Aberth ab(a, prec);
  int sweeps = 0, after_converged = 0;
  const int max_sweeps = 60 + 20 * n;
  while (sweeps < max_sweeps) {
    bool done = ab.sweep();
    ++sweeps;
    if (done && ++after_converged >= 2) break;
  }
  // certification
  std::vector<Rational> cre, cim;
  for (auto& z : ab.roots()) {
    if (!mpfr_number_p(z.re) || !mpfr_number_p(z.im)) throw PrecisionExhausted("root approximation diverged");
    cre.push_back(detail::mpfr_to_q(z.re));
    cim.push_back(detail::mpfr_to_q(z.im));
  }
  std::vector<CInterval> Z;
  for (int i = 0; i < n; ++i) Z.emplace_back(cre[i], cim[i], prec);
  std::vector<RootDisk> out;
  for (int i = 0; i < n; ++i) {
    CInterval p = a[n];
    for (int k = n - 1; k >= 0; --k) p = p * Z[i] + a[k];
    CInterval den = a[n];
    for (int j = 0; j < n; ++j)
      if (j != i) den = den * (Z[i] - Z[j]);
    if (den.contains_zero()) throw PrecisionExhausted("root approximations not separated");
    Interval r = (p / den).abs() * Interval(Rational(n), prec);
    out.push_back({cre[i], cim[i], r.hi_q()});
  }
  for (int i = 0; i < n; ++i) {
    if (out[i].r * Rational(2) > width) throw PrecisionExhausted("root disks wider than requested");
    ComplexBox bx = out[i].box();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Rational dx = out[i].cre - out[j].cre, dy = out[i].cim - out[j].cim;
      Rational rr = out[i].r + out[j].r;
      if (dx * dx + dy * dy <= rr * rr) throw PrecisionExhausted("root disks overlap");
      if (detail::disk_meets_box(out[j], bx)) throw PrecisionExhausted("root box meets another disk");
    }
  }
  std::sort(out.begin(), out.end(), [](const RootDisk& x, const RootDisk& y) {
    if (x.cre != y.cre) return x.cre < y.cre;
    return x.cim < y.cim;
  });
  return out;
}

inline std::vector<CInterval> coefficient_enclosures(const QUPoly& f, mpfr_prec_t prec) {
  std::vector<CInterval> a;
  for (auto& c : f.coeffs()) a.emplace_back(c, prec);
  return a;
}

// Boxes isolating the distinct complex roots of f.
inline std::vector<ComplexBox> isolate_roots(const QUPoly& f, const Rational& width) {
  if (width.sign() <= 0) throw InputError("isolation width must be positive");
  if (f.is_zero()) throw InputError("cannot isolate the roots of the zero polynomial");
  QUPoly s = squarefree_part(f);
  int n = s.degree();
  if (n <= 0) return {};
  if (n == 1) {
    Rational r = -s.coeffs()[0];
    return {ComplexBox{r, r, Rational(0), Rational(0)}};
  }
  mpfr_prec_t start = 128;
  while (detail::pow2(64 - long(start)) > width) start *= 2;
  for (mpfr_prec_t prec = start; prec <= (1 << 16); prec *= 2) {
    try {
      auto disks = isolate_disks(coefficient_enclosures(s, prec), n, width);
      std::vector<ComplexBox> out;
      for (auto& d : disks) out.push_back(d.box());
      return out;
    } catch (const PrecisionExhausted&) {
    }
  }
  throw PrecisionExhausted("root isolation exhausted the precision budget");
}

inline std::vector<ComplexBox> isolate_roots(const QPoly& f, const Rational& width) {
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (f.degree(i) > 0) used.push_back(i);
  if (used.size() > 1) throw InputError("isolate_roots expects a univariate polynomial");
  return isolate_roots(used.empty() ? QUPoly(f.constant_term()) : *as_univariate(f, used[0]), width);
}

// Shrink a root box: the returned box lies inside `box` and has width at most `width`.
inline ComplexBox refine(const QUPoly& f, const ComplexBox& box, const Rational& width) {
  if (box.re_lo == box.re_hi && box.im_lo == box.im_hi) return box;
  Rational w = std::min(width, box.width() / Rational(4));
  for (int it = 0; it < 64; ++it, w = w / Rational(4)) {
    for (auto& b : isolate_roots(f, w))
      if (b.inside(box)) return b;
  }
  throw PrecisionExhausted("refinement failed");
}

// Distinct rational roots of f, ascending.
inline std::vector<Rational> rational_roots(const QUPoly& f) {
  QUPoly s = squarefree_part(f);
  std::vector<Rational> out;
  if (s.degree() <= 0) return out;
  if (s.degree() == 1) return {-s.coeffs()[0]};
  // strip the root 0
  if (s.coeffs()[0].is_zero()) {
    out.push_back(Rational(0));
    s = exact_quotient(s, QUPoly::x_power(1));
    if (s.degree() == 1) {
      out.push_back(-s.coeffs()[0]);
      std::sort(out.begin(), out.end());
      return out;
    }
    if (s.degree() <= 0) return out;
  }
  QUPoly z = normalize_content(s);
  mpz_class L = abs(z.lc().num());
  Rational tiny(mpz_class(1), mpz_class(2 * L * L));
  auto sgn = [&](const Rational& x) { return z.eval(x).sign(); };
  for (auto& b : isolate_roots(z, Rational(1, 4))) {
    if (!b.real_axis_meets()) continue;
    Rational lo = b.re_lo, hi = b.re_hi;
    if (lo == hi) {
      out.push_back(lo);
      continue;
    }
    int sl = sgn(lo), sh = sgn(hi);
    if (sl == 0) {
      out.push_back(lo);
      continue;
    }
    if (sh == 0) {
      out.push_back(hi);
      continue;
    }
    if (sl == sh) continue;
    bool found = false;
    while (hi - lo >= tiny) {
      Rational mid = (lo + hi) / Rational(2);
      int sm = sgn(mid);
      if (sm == 0) {
        out.push_back(mid);
        found = true;
        break;
      }
      if (sm == sl)
        lo = mid;
      else
        hi = mid;
    }
    if (found) continue;
    Rational c = simplest_between(lo, hi);
    if (sgn(c) == 0) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace foliage
