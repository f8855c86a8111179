#include <foliage/roots.hpp>
#include <foliage/tower.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace foliage;

namespace {

QPoly P(const char* s) { return parse_poly(s, xy_vars()); }
QPoly P3(const char* s) { return parse_poly(s, {"x", "y", "z"}); }

QPoly random_poly(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<int> c(-5, 5), keep(0, 2);
  QPoly p(xy_vars());
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j)
      if (keep(rng) == 0) p = p + QPoly::monomial(xy_vars(), {i, j}, Rational(long(c(rng)), long(1 + keep(rng))));
  return p;
}

// cofactor expansion along the first row
QPoly laplace_det(const std::vector<std::vector<QPoly>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  QPoly acc(xy_vars());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<QPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<QPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    QPoly t = m[0][j] * laplace_det(minor);
    acc = (j % 2) ? acc - t : acc + t;
  }
  return acc;
}

// bracket of the real root of f in [lo, hi] by rational bisection
std::pair<Rational, Rational> bisect(const QUPoly& f, Rational lo, Rational hi, const Rational& tol) {
  int slo = f.eval(lo).sign();
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / Rational(2);
    int s = f.eval(mid).sign();
    if (s == 0) return {mid, mid};
    if (s == slo)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

// equal up to a nonzero rational factor
bool associates(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return (a.scale(b.leading().c) - b.scale(a.leading().c)).is_zero();
}

bool overlaps(const Rational& a, const Rational& b, const Rational& c, const Rational& d) { return a <= d && c <= b; }

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
  EXPECT_EQ(Rational::parse("-0/7").str(), "0");
  EXPECT_EQ(Rational::parse("+5").str(), "5");
  EXPECT_THROW(Rational::parse("1/0"), InputError);
  EXPECT_THROW(Rational::parse("1.5"), InputError);
  EXPECT_THROW(Rational(1, 1) / Rational(0), DivisionByZero);
}

TEST(MPoly, Arithmetic) {
  EXPECT_EQ(P("x+y") + P("x-y"), P("2*x"));
  EXPECT_EQ(P("x+1") * P("x-1"), P("x^2-1"));
  EXPECT_TRUE((QPoly(xy_vars()) * P("x^3*y+7")).is_zero());
}

TEST(MPoly, Derivatives) {
  EXPECT_EQ(P("x^2*y").derivative("x"), P("2*x*y"));
  EXPECT_TRUE(P("y^3").derivative("x").is_zero());
  QPoly zz = parse_poly("z*(1-z)", {"z"});
  EXPECT_EQ(zz.derivative("z"), parse_poly("1-2*z", {"z"}));
  EXPECT_THROW(P("x").derivative("w"), InputError);
}

TEST(MPoly, CanonicalTextRoundTrip) {
  QPoly p = P("3/2*x^2*y - 1");
  EXPECT_EQ(p.str(), "3/2*x^2*y - 1");
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    QPoly q = random_poly(rng, 5);
    EXPECT_EQ(parse_poly(q.str(), xy_vars()), q) << q.str();
  }
}

TEST(MPoly, RingAxiomsOnRandomPolynomials) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    QPoly a = random_poly(rng, 4), b = random_poly(rng, 3), c = random_poly(rng, 3);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    if (!b.is_zero()) {
      auto q = divide_exact(a * b, b);
      ASSERT_TRUE(q.has_value());
      EXPECT_EQ(*q, a);
    }
  }
}

TEST(Resultant, KnownValues) {
  EXPECT_EQ(resultant(P("x^2 - y"), P("x - 1"), "x"), P("1 - y"));
  EXPECT_EQ(resultant(P("x"), P("y"), "x"), P("y"));
  EXPECT_EQ(resultant(P("x^2 + 1"), P("x^2 - 1"), "x"), P("4"));
  EXPECT_THROW(resultant(P("y"), P("y^2"), "x"), InputError);
}

// res(f, g) = lc(f)^deg g * lc(g)^deg f * prod (a_i - b_j)
TEST(Resultant, ProductFormulaOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> r(-6, 6), d(1, 3);
  for (int t = 0; t < 30; ++t) {
    std::vector<Rational> as, bs;
    int m = 1 + int(rng() % 3), n = 1 + int(rng() % 3);
    for (int i = 0; i < m; ++i) as.emplace_back(r(rng), d(rng));
    for (int j = 0; j < n; ++j) bs.emplace_back(r(rng), d(rng));
    Rational la(2 + long(t % 3)), lb(-3);
    QUPoly f(la), g(lb);
    for (auto& a : as) f = f * QUPoly({-a, Rational(1)});
    for (auto& b : bs) g = g * QUPoly({-b, Rational(1)});
    Rational expect = la.pow(n) * lb.pow(m);
    for (auto& a : as)
      for (auto& b : bs) expect *= a - b;
    EXPECT_EQ(resultant(f, g), QUPoly(expect));
    QPoly fm = from_univariate(f, xy_vars(), 0), gm = from_univariate(g, xy_vars(), 0);
    QPoly rm = resultant(fm, gm, "x");
    EXPECT_EQ(rm, QPoly(xy_vars(), expect));
  }
}

TEST(Resultant, EliminationVanishesOnCommonZeros) {
  // common zeros (1, 2) and (-1, 0)
  QPoly r = resultant(P("x - y + 1"), P("x^2 - 1"), "x");
  EXPECT_EQ(r, P("y^2 - 2*y"));
}

TEST(Gcd, KnownValues) {
  EXPECT_TRUE(associates(gcd(P("x^2-1"), P("x-1")), P("x-1")));
  EXPECT_TRUE(gcd(P("x"), P("y")).is_constant());
  EXPECT_TRUE(associates(gcd(P("(x^3-1)*(x-2)"), P("x^3-1")), P("x^3-1")));
  EXPECT_TRUE(associates(gcd(P("(x+y)*(x-y^2)"), P("(x-y^2)*(y+2)")), P("x-y^2")));
}

TEST(Gcd, IdempotentAndDividesBoth) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 25; ++t) {
    QPoly c = random_poly(rng, 2), a = random_poly(rng, 2), b = random_poly(rng, 2);
    if (c.is_zero() || a.is_zero() || b.is_zero()) continue;
    QPoly g = gcd(a * c, b * c);
    EXPECT_TRUE(divide_exact(a * c, g).has_value());
    EXPECT_TRUE(divide_exact(b * c, g).has_value());
    EXPECT_TRUE(divide_exact(g, normalize_content(c)).has_value() || c.is_constant());
    EXPECT_EQ(gcd(g, g), g);
  }
}

TEST(Determinant, BareissMatchesLaplace) {
  std::mt19937_64 rng(9);
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::vector<QPoly>> m(n, std::vector<QPoly>(n));
    for (auto& row : m)
      for (auto& e : row) e = random_poly(rng, 2);
    EXPECT_EQ(det(m, xy_vars()), laplace_det(m)) << "n = " << n;
  }
}

TEST(Roots, SqrtTwoAgainstBisection) {
  QUPoly f({Rational(-2), Rational(0), Rational(1)});
  Rational w(1, 1000000);
  auto boxes = isolate_roots(f, w);
  ASSERT_EQ(boxes.size(), 2u);
  auto pos = bisect(f, Rational(1), Rational(2), Rational(1, 1000000000));
  auto neg = bisect(f, Rational(-2), Rational(-1), Rational(1, 1000000000));
  int hits_pos = 0, hits_neg = 0;
  for (auto& b : boxes) {
    EXPECT_TRUE(b.certified);
    EXPECT_LE(b.width(), w);
    EXPECT_TRUE(b.real_axis_meets());
    hits_pos += overlaps(b.re_lo, b.re_hi, pos.first, pos.second);
    hits_neg += overlaps(b.re_lo, b.re_hi, neg.first, neg.second);
  }
  EXPECT_EQ(hits_pos, 1);
  EXPECT_EQ(hits_neg, 1);
  EXPECT_TRUE(boxes[0].disjoint(boxes[1]));
}

TEST(Roots, CubeRootsOfUnity) {
  QUPoly f({Rational(-1), Rational(0), Rational(0), Rational(1)});
  auto boxes = isolate_roots(f, Rational(1, 1000));
  ASSERT_EQ(boxes.size(), 3u);
  QUPoly three({Rational(-3), Rational(0), Rational(4)});  // 4 t^2 - 3: t = sqrt(3)/2
  auto s = bisect(three, Rational(0), Rational(1), Rational(1, 1000000));
  int found_one = 0, found_up = 0, found_down = 0;
  for (auto& b : boxes) {
    if (b.contains(Rational(1), Rational(0))) ++found_one;
    if (b.re_lo <= Rational(-1, 2) && Rational(-1, 2) <= b.re_hi) {
      if (overlaps(b.im_lo, b.im_hi, s.first, s.second)) ++found_up;
      if (overlaps(b.im_lo, b.im_hi, -s.second, -s.first)) ++found_down;
    }
  }
  EXPECT_EQ(found_one, 1);
  EXPECT_EQ(found_up, 1);
  EXPECT_EQ(found_down, 1);
}

TEST(Roots, RationalRootIsExact) {
  auto boxes = isolate_roots(QUPoly({Rational(-3, 2), Rational(1)}), Rational(1, 100));
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_TRUE(boxes[0].contains(Rational(3, 2), Rational(0)));
  EXPECT_TRUE(isolate_roots(QUPoly(Rational(5)), Rational(1, 100)).empty());
  auto rr = rational_roots(QUPoly({Rational(6), Rational(-5), Rational(1)}) * QUPoly({Rational(1), Rational(0), Rational(1)}));
  ASSERT_EQ(rr.size(), 2u);
}

TEST(Roots, WilkinsonLikeClusterIsSeparated) {
  QUPoly f(Rational(1));
  for (int i = 1; i <= 12; ++i) f = f * QUPoly({Rational(-i, 7), Rational(1)});
  auto boxes = isolate_roots(f, Rational(1, 100000));
  ASSERT_EQ(boxes.size(), 12u);
  for (int i = 1; i <= 12; ++i) {
    int hits = 0;
    for (auto& b : boxes) hits += b.contains(Rational(i, 7), Rational(0));
    EXPECT_EQ(hits, 1) << i;
  }
}

TEST(Tower, CubeRootOfUnityArithmetic) {
  auto t = Tower::make(QUPoly({Rational(1), Rational(1), Rational(1)}));
  Alg w = Alg::generator(t);
  EXPECT_TRUE(decide_zero(pow(w, 3) - Alg(1)));
  EXPECT_TRUE(decide_zero(w * w + w + Alg(1)));
  EXPECT_FALSE(decide_zero(w - Alg(1)));
  Alg inv = inverse(w);
  EXPECT_TRUE(decide_zero(inv * w - Alg(1)));
  EXPECT_EQ(point_count(t), 2u);
}

TEST(Tower, ReducibleModulusSplits) {
  auto t = Tower::make(QUPoly({Rational(-1), Rational(0), Rational(1)}));
  Alg s = Alg::generator(t);
  EXPECT_THROW(inverse(s - Alg(1)), Split);
  auto res = split_map(t, [&](const TowerPtr& cur) {
    Alg g = Alg::generator(cur);
    return decide_zero(g - Alg(1)) ? 1 : -1;
  });
  ASSERT_EQ(res.size(), 2u);
  EXPECT_NE(res[0].second, res[1].second);
}

TEST(Parser, RejectsMalformedInput) {
  EXPECT_THROW(parse_poly("x^", xy_vars()), InputError);
  EXPECT_THROW(parse_poly("x + z", xy_vars()), InputError);
  EXPECT_THROW(parse_poly("(x+1", xy_vars()), InputError);
  EXPECT_EQ(P3("x*y*z").total_degree(), 3);
}
