#include <foliage/families.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace foliage;

namespace {

QPoly P(const char* s) { return parse_poly(s, xy_vars()); }
Foliation field(const char* p, const char* q) { return make_foliation(P(p), P(q)); }

SingularityClass classify(const char* p, const char* q) {
  return classify_at_origin(to_alg(P(p)), to_alg(P(q)), nullptr);
}

long affine_count(const std::vector<SingularPoint>& pts) {
  long n = 0;
  for (auto& s : pts)
    if (s.chart == 0) n += long(s.count);
  return n;
}

// d^2 + d + 1 computed independently of the library
long bezout(long d) { return d * d + d + 1; }

}  // namespace

TEST(Degree, KnownValues) {
  EXPECT_EQ(degree(field("x", "2*y")), 1);
  EXPECT_EQ(degree(field("x", "y")), 0);
  for (auto a : {Rational(2), Rational(-1), Rational(1, 3), Rational(5, 2)}) {
    QPoly y = P("y");
    EXPECT_EQ(degree(make_foliation(P("x"), y.scale(a))), 1) << a;
  }
  for (auto a : {Rational(0), Rational(1), Rational(2), Rational(-3, 2), Rational(7, 5)})
    EXPECT_EQ(degree(lins_neto(a)), 4) << a;
  EXPECT_EQ(degree(hypergeometric_riccati(Rational(-2), Rational(1), Rational(2))), 4);
}

TEST(Degree, CommonFactorIsRemoved) {
  Foliation F = field("x*(x+1)", "y*(x+1)");
  EXPECT_EQ(F.P, P("x"));
  EXPECT_EQ(F.Q, P("y"));
  EXPECT_EQ(F.degree, 0);
  EXPECT_THROW(field("0", "0"), InputError);
}

TEST(Degree, FormRoundTrip) {
  Foliation F = lins_neto(Rational(2));
  Foliation G = foliation_from_form(F.A, F.B, F.C);
  EXPECT_EQ(G.degree, F.degree);
  EXPECT_EQ(G.A, F.A);
  const auto& V = xyz_vars();
  QPoly X = QPoly::var(V, 0), Y = QPoly::var(V, 1);
  EXPECT_THROW(foliation_from_form(Y, Y, X), InputError);  // Euler relation fails
}

TEST(Degree, ProjectiveTransformsPreserveDegree) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> c(-3, 3);
  std::vector<Foliation> fs = {field("x", "2*y"), field("y", "x^2 - 1"), field("x*y - 1", "x^2 + y"),
                               lins_neto(Rational(2))};
  for (auto& F : fs)
    for (int t = 0; t < 3; ++t) {
      std::array<std::array<Rational, 3>, 3> m;
      Rational det;
      do {
        for (auto& row : m)
          for (auto& e : row) e = Rational(c(rng));
        det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
      } while (det.is_zero());
      EXPECT_EQ(transform(F, m).degree, F.degree);
    }
}

TEST(Milnor, KnownValues) {
  EXPECT_EQ(intersection_multiplicity(to_alg(P("x")), to_alg(P("y"))), 1);
  EXPECT_EQ(intersection_multiplicity(to_alg(P("x^2")), to_alg(P("y"))), 2);
  EXPECT_EQ(intersection_multiplicity(to_alg(P("x^2 - y^3")), to_alg(P("y"))), 2);
  EXPECT_EQ(intersection_multiplicity(to_alg(P("y - x^2")), to_alg(P("y"))), 2);
  EXPECT_EQ(intersection_multiplicity(to_alg(P("y^2 - x^3")), to_alg(P("y^2 + x^3"))), 6);
  EXPECT_THROW(intersection_multiplicity(to_alg(P("x*y")), to_alg(P("x*(y+1)"))), NonIsolated);
}

TEST(Milnor, LinsNetoAlphaZero) {
  auto pts = singular_points(lins_neto(Rational(0)));
  EXPECT_EQ(affine_count(pts), 16);
  EXPECT_EQ(milnor_total(pts), 21);
}

TEST(Milnor, BezoutTotals) {
  std::vector<Foliation> fs = {field("x", "2*y"),
                               field("x", "-y"),
                               field("y", "x^2 - 1"),
                               field("x^2 - y", "y^2 - x"),
                               field("x*y - 1", "x^2 + y"),
                               field("x^3 - y", "y^2 + x"),
                               linear_family(3, -5).F,
                               lins_neto(Rational(2)),
                               lins_neto(Rational(-3, 2)),
                               hypergeometric_riccati(Rational(-2), Rational(1), Rational(2))};
  for (auto& F : fs) {
    auto pts = singular_points(F);
    EXPECT_EQ(milnor_total(pts), bezout(F.degree)) << F.P.str() << ", " << F.Q.str();
  }
}

TEST(Milnor, TotalIsInvariantUnderTransform) {
  Foliation F = field("x^2 - y", "x*y + 1");
  std::array<std::array<Rational, 3>, 3> m = {
      {{Rational(1), Rational(2), Rational(0)}, {Rational(0), Rational(1), Rational(1)}, {Rational(1), Rational(0), Rational(1)}}};
  Foliation G = transform(F, m);
  EXPECT_EQ(milnor_total(singular_points(G)), milnor_total(singular_points(F)));
}

TEST(Classify, KnownValues) {
  auto a = classify("x", "-y");
  EXPECT_EQ(a.kind, SingKind::reduced_nondegenerate);
  EXPECT_EQ(*a.ratio, Rational(-1));
  EXPECT_EQ(classify("x", "2*y").kind, SingKind::non_reduced);
  auto sn = classify("x^2", "y");
  EXPECT_EQ(sn.kind, SingKind::saddle_node);
  EXPECT_STREQ(to_string(sn.kind), "reduced-saddle-node");
  EXPECT_EQ(classify("x^2", "y^2").kind, SingKind::non_reduced);
  EXPECT_EQ(classify("y", "-x").kind, SingKind::reduced_nondegenerate);  // centre: ratio -1
  EXPECT_EQ(classify("x", "-3/7*y").kind, SingKind::reduced_nondegenerate);
  EXPECT_EQ(classify("x + y", "y").kind, SingKind::non_reduced);  // Jordan block, ratio 1
}

TEST(Classify, StableUnderRescaling) {
  const char* cases[][2] = {{"x", "2*y"}, {"x", "-y"}, {"x^2", "y"}, {"y + x^2", "x - y^2"}, {"x+y", "y"}};
  for (auto& c : cases)
    for (auto s : {Rational(3), Rational(-1, 2), Rational(7, 5)}) {
      auto a = classify_at_origin(to_alg(P(c[0])), to_alg(P(c[1])), nullptr);
      auto b = classify_at_origin(to_alg(P(c[0]).scale(s)), to_alg(P(c[1]).scale(s)), nullptr);
      EXPECT_EQ(a.kind, b.kind) << c[0] << ", " << c[1];
      EXPECT_EQ(a.ratio, b.ratio);
    }
}

TEST(Classify, IrrationalPointsAreCertified) {
  // singular points at x^2 = 2 on y = 0
  auto pts = singular_points(field("x^2 - 2", "y"));
  int affine = 0;
  for (auto& s : pts)
    if (s.chart == 0) {
      affine += int(s.count);
      EXPECT_EQ(s.cls.kind, SingKind::reduced_nondegenerate);
      EXPECT_EQ(s.cls.certainty, Certainty::exact);
    }
  EXPECT_EQ(affine, 2);
}

TEST(Charts, PointsAtInfinity) {
  // (x, 2y): one affine point and two on the line at infinity
  auto pts = singular_points(field("x", "2*y"));
  ASSERT_EQ(pts.size(), 3u);
  int per_chart[3] = {0, 0, 0};
  for (auto& s : pts) per_chart[s.chart] += int(s.count);
  EXPECT_EQ(per_chart[0], 1);
  EXPECT_EQ(per_chart[1], 1);
  EXPECT_EQ(per_chart[2], 1);
  int non_reduced = 0;
  for (auto& s : pts) non_reduced += s.cls.kind == SingKind::non_reduced;
  EXPECT_EQ(non_reduced, 2);
}
