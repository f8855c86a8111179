// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <foliage/families.hpp>
#include <foliage/bounds.hpp>
#include <foliage/curves.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace foliage;

namespace {

using Clock = std::chrono::steady_clock;

QPoly P(const char* s) { return parse_poly(s, xy_vars()); }
Foliation field(const char* p, const char* q) { return make_foliation(P(p), P(q)); }

struct Outcome {
  bool ok = true;
  std::string failed;
  std::ostringstream note;
  void require(bool c, const std::string& what) {
    if (c) return;
    failed += (ok ? "failed: " : "; ") + what;
    ok = false;
  }
};

int failures = 0;

// Runs one criterion under a wall-clock budget in seconds.
void criterion(int id, const char* name, double budget, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(secs < budget, "over budget");
  if (!o.ok) ++failures;
  std::string text = o.note.str();
  if (!o.failed.empty()) text = o.failed + (text.empty() ? "" : " | " + text);
  std::printf("%s %2d %-28s %8.2fs (budget %gs)  %s\n", o.ok ? "PASS" : "FAIL", id, name, secs, budget, text.c_str());
  std::fflush(stdout);
}

long bezout(long d) { return d * d + d + 1; }

long long rr_by_cases(long long g, long long k) {
  long long deg = k * (2 * g - 2);
  if (deg < 0) return 0;
  if (deg == 0) return 1;
  if (k == 1) return g;
  return deg - g + 1;
}

bool leaves_reduced(const ResolutionNode& n) {
  if (!n.blown_up) return n.cls.kind == SingKind::reduced_nondegenerate || n.cls.kind == SingKind::saddle_node;
  for (auto& c : n.children)
    if (!leaves_reduced(c)) return false;
  return true;
}

}  // namespace

int main() {
  criterion(1, "lins-neto degree", 1, [](Outcome& o) {
    for (auto a : {Rational(0), Rational(1), Rational(2), Rational(-3, 2)}) {
      long d = degree(lins_neto(a));
      o.require(d == 4, "alpha " + a.str() + " gives " + std::to_string(d));
    }
  });

  criterion(2, "pullback degree", 10, [](Outcome& o) {
    std::string literal;
    for (int r = 1; r <= 3; ++r) {
      long d = degree(lins_neto_pullback(Rational(2), r).F);
      o.require(d == 3 * r + 1, "r=" + std::to_string(r) + " gives " + std::to_string(d));
      literal += (r > 1 ? "," : "") + std::to_string(degree(power_pullback(lins_neto(Rational(2)), r)));
    }
    o.note << "triangle-adapted map gives 4,7,10; literal (X^r,Y^r,Z^r) on the printed coordinates gives "
           << literal;
  });

  criterion(3, "dicritical count r=2", 600, [](Outcome& o) {
    long n = dicritical_count(lins_neto_pullback(Rational(2), 2).F);
    o.require(n == 27, "got " + std::to_string(n));
    o.note << "27 dicritical points";
  });

  criterion(4, "bezout conservation", 60, [](Outcome& o) {
    std::vector<Foliation> fs = {field("x", "2*y"),
                                 field("x", "-y"),
                                 field("y", "x^2 - 1"),
                                 field("x^2 - y", "y^2 - x"),
                                 field("x*y - 1", "x^2 + y"),
                                 field("x^3 - y", "y^2 + x"),
                                 field("x^3 + y^2 - 1", "x*y^2 - x"),
                                 linear_family(3, -5).F,
                                 lins_neto(Rational(2)),
                                 lins_neto(Rational(-3, 2)),
                                 hypergeometric_riccati(Rational(-2), Rational(1), Rational(2))};
    for (auto& F : fs) {
      long mu = milnor_total(singular_points(F));
      o.require(mu == bezout(F.degree), F.P.str() + ", " + F.Q.str() + ": " + std::to_string(mu));
    }
    o.note << fs.size() << " foliations";
  });

  criterion(5, "linear first integrals", 120, [](Outcome& o) {
    int n = 0;
    for (long p = -5; p <= 5; ++p)
      for (long q = 1; q <= 5; ++q) {
        if (p == 0 || std::gcd(p, q) != 1) continue;
        ++n;
        auto m = linear_family(p, q);
        long expect = p > 0 ? std::max(p, q) : -p + q;
        std::string tag = std::to_string(p) + "/" + std::to_string(q);
        auto s = first_integral_search(m.F, int(expect));
        o.require(s.degree && *s.degree == expect, tag + " degree");
        if (s.integral) o.require(first_integral_check(m.F, s.integral->first, s.integral->second), tag + " found");
        // x^|p| y^q for opposite signs, y^q / x^p otherwise
        QPoly x = P("x"), y = P("y");
        bool ok = p > 0 ? first_integral_check(m.F, y.pow(unsigned(q)), x.pow(unsigned(p)))
                        : first_integral_check(m.F, x.pow(unsigned(-p)) * y.pow(unsigned(q)), P("1"));
        o.require(ok, tag + " monomial");
      }
    o.note << n << " ratios";
  });

  criterion(6, "riccati invariant curves", 30, [](Outcome& o) {
    std::string degs;
    for (auto [b, c] : {std::pair{Rational(1), Rational(2)}, std::pair{Rational(1, 2), Rational(1, 3)}})
      for (int k = 1; k <= 5; ++k) {
        Foliation F = hypergeometric_riccati(Rational(1 - k), b, c);
        PlaneCurve C = make_curve(riccati_invariant_curve(k, b, c));
        auto cert = is_invariant(F, C);
        o.require(cert && check_certificate(F, *cert), "k=" + std::to_string(k) + " b=" + b.str());
        if (b == Rational(1)) degs += (k > 1 ? "," : "") + std::to_string(C.degree);
      }
    o.note << "curve degrees for k=1..5: " << degs << " (k, not the claimed k+1)";
  });

  criterion(7, "gate formula", 1, [](Outcome& o) {
    for (long long g = 0; g <= 6; ++g)
      for (long long k = 1; k <= 10; ++k) o.require(rr_sections(g, k) == rr_by_cases(g, k), "rr");
    struct Case {
      long long d, g;
      std::vector<long long> P;
      long long n0, bound;
    };
    // hand-computed: h0(nK) = 1, 3, 5, ... for g = 2 and the first n with P_n above it
    std::vector<Case> cases = {{4, 2, {1, 4, 9, 16}, 2, 6},   {5, 2, {0, 0, 6}, 3, 12}, {3, 3, {1, 8, 27}, 2, 4},
                               {6, 4, {0, 0, 0, 0, 30}, 5, 25}, {2, 2, {3}, 1, 1},        {7, 5, {5, 14}, 2, 12}};
    for (auto& c : cases) {
      PlurigeneraOracle orc;
      orc.P = c.P;
      auto r = first_integral_degree_bound(c.d, c.g, orc);
      o.require(r.n0 == c.n0 && r.bound == c.bound && trace_consistent(r),
                "d=" + std::to_string(c.d) + " g=" + std::to_string(c.g));
    }
    o.note << cases.size() << " oracles";
  });

  criterion(8, "height machinery", 5, [](Outcome& o) {
    for (long long h = 1; h <= 4; ++h)
      for (long long n = 0; n <= 40; ++n) o.require(height_lower_bound(h, n) == (n + 2) * (n + 1) / 2, "binomial");
    int grid = 0;
    for (long long d = 1; d <= 6; ++d)
      for (long long g = 2; g <= 5; ++g)
        for (long long h = 1; h <= 4; ++h) {
          ++grid;
          auto r = first_integral_bound_from_height(d, g, h);
          long long n = 1;
          while ((n + 2) * (n + 1) / 2 <= rr_by_cases(g, h * n)) ++n;
          o.require(trace_consistent(r) && r.n0 == n, "d=" + std::to_string(d) + " g=" + std::to_string(g));
        }
    o.note << grid << " grid points";
  });

  criterion(9, "degree identity", 60, [](Outcome& o) {
    struct Pair {
      Foliation F;
      QPoly C;
      std::string name;
    };
    std::vector<Pair> pairs = {
        {field("x", "2*y"), P("y - x^2"), "2:1 node, parabola"},
        {field("x", "-y"), P("y"), "saddle, axis"},
        {field("x", "3*y"), P("y"), "3:1 node, axis"},
        {field("x^2 - 1", "y"), P("y"), "two saddle-type points, axis"},
        {field("x^2 - 1", "y"), P("x - 1"), "two points, vertical line"},
        {hypergeometric_riccati(Rational(0), Rational(1), Rational(2)), riccati_invariant_curve(1, Rational(1), Rational(2)),
         "riccati k=1"},
        {lins_neto(Rational(2)), P("x - 1"), "lins neto line"},
    };
    for (auto& p : pairs) {
      PlaneCurve C = make_curve(p.C);
      long g = genus(C);
      ZReport z = total_z(p.F, p.C);
      long lhs = (p.F.degree - 1) * C.degree, rhs = 2 * g - 2 + z.z_plane;
      o.require(lhs == rhs, p.name + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs));
    }
    o.note << pairs.size() << " pairs";
  });

  criterion(10, "saddle-node indices", 10, [](Outcome& o) {
    for (int m = 2; m <= 10; ++m) {
      APoly xm = to_alg(P("x").pow(unsigned(m)));
      o.require(classify_at_origin(xm, to_alg(P("y")), nullptr).kind == SingKind::saddle_node, "kind");
      o.require(z_index(xm, to_alg(P("y")), to_alg(P("x"))) == 1, "strong m=" + std::to_string(m));
      o.require(z_index(xm, to_alg(P("y")), to_alg(P("y"))) == m, "weak m=" + std::to_string(m));
    }
  });

  criterion(11, "extactic soundness", 120, [](Outcome& o) {
    int decisions = 0;
    for (long p = -5; p <= 5; ++p)
      for (long q = 1; q <= 5; ++q) {
        if (p == 0 || std::gcd(p, q) != 1) continue;
        auto F = linear_family(p, q).F;
        long expect = linear_expected_fi_degree(p, q);
        for (int m = 1; m <= std::min<long>(expect, 6); ++m) {
          auto d = extactic_vanishes(F, m);
          ++decisions;
          o.require(d.result == (m >= expect ? Vanishing::identically_zero : Vanishing::nonzero),
                    std::to_string(p) + "/" + std::to_string(q) + " m=" + std::to_string(m));
          if (m <= 2) o.require(extactic(F, m).is_zero() == (m >= expect), "symbolic");
        }
      }
    struct Div {
      Foliation F;
      QPoly C;
      int m;
    };
    // d/dx + (y - x^2 + 2x) d/dy scales y - x^2 by e^t, so it has no rational first integral
    std::vector<Div> divs = {{field("1", "y - x^2 + 2*x"), P("y - x^2"), 2},
                             {hypergeometric_riccati(Rational(-2), Rational(1), Rational(2)),
                              riccati_invariant_curve(3, Rational(1), Rational(2)), 3},
                             {field("x^2 - 1", "y"), P("x - 1"), 1},
                             {field("x^2 - 1", "y"), P("y"), 2},
                             {hypergeometric_riccati(Rational(0), Rational(1), Rational(2)),
                              riccati_invariant_curve(1, Rational(1), Rational(2)), 1},
                             {hypergeometric_riccati(Rational(-1), Rational(1), Rational(2)),
                              riccati_invariant_curve(2, Rational(1), Rational(2)), 2},
                             {lins_neto(Rational(2)), P("x - 1"), 1}};
    for (auto& d : divs) {
      QPoly E = extactic(d.F, d.m);
      o.require(!E.is_zero() && divide_exact(E, d.C).has_value(), d.C.str());
    }
    o.note << decisions << " decisions, " << divs.size() << " divisibility checks";
  });

  criterion(12, "reduction correctness", 60, [](Outcome& o) {
    std::vector<Foliation> fs = {field("x", "2*y"), field("x", "-y"), field("y", "x^2 - 1"), field("x^2", "y"),
                                 field("y^2 - x^3", "x*y"), linear_family(2, 3).F, lins_neto(Rational(2)),
                                 hypergeometric_riccati(Rational(-2), Rational(1), Rational(2))};
    for (auto& F : fs) {
      auto tree = seidenberg_reduce(F);
      for (auto& r : tree.roots) o.require(leaves_reduced(r), "leaf of " + F.P.str());
      auto minimal = summarize(tree);
      auto safe = summarize(safe_resolution(F));
      o.require(safe.extra_blowups == minimal.final_points && safe.blowups == minimal.blowups + minimal.final_points,
                "safe step of " + F.P.str());
    }
    o.note << fs.size() << " foliations";
  });

  std::printf("%s\n", failures ? "SOME CRITERIA FAILED" : "ALL CRITERIA PASSED");
  return failures ? 1 : 0;
}
