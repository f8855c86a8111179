#include <foliage/io.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace foliage;

namespace {

QPoly P(const char* s) { return parse_poly(s, xy_vars()); }

QPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-9, 9), e(0, 4), n(1, 6);
  QPoly p(xy_vars());
  for (int i = 0, k = n(rng); i < k; ++i)
    p = p + QPoly::monomial(xy_vars(), {e(rng), e(rng)}, Rational(long(c(rng)), long(n(rng))));
  return p;
}

}  // namespace

TEST(Json, PolynomialRoundTrip) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    QPoly p = random_poly(rng);
    json j = to_json(p);
    EXPECT_EQ(poly_from_json(json::parse(j.dump())), p);
    EXPECT_EQ(to_json(poly_from_json(j)).dump(), j.dump());
  }
  json doc = json::parse(R"({"vars": ["x","y"], "terms": [{"exp": [2,1], "coef": "3/2"}, {"exp": [0,0], "coef": "-1"}]})");
  EXPECT_EQ(poly_from_json(doc), P("3/2*x^2*y - 1"));
  EXPECT_EQ(poly_from_json(json("3/2*x^2*y - 1")), P("3/2*x^2*y - 1"));
}

TEST(Json, FoliationAndCurveRoundTrip) {
  Foliation F = lins_neto(Rational(-3, 2));
  Foliation G = foliation_from_json(json::parse(to_json(F).dump()));
  EXPECT_EQ(G.P, F.P);
  EXPECT_EQ(G.Q, F.Q);
  EXPECT_EQ(G.degree, 4);
  EXPECT_EQ(foliation_from_json(json::parse(R"({"foliation": {"P": "x", "Q": "2*y"}})")).degree, 1);

  PlaneCurve C = make_curve(P("y^2 - x^3"));
  C.delta = std::vector<int>{1};
  PlaneCurve D = curve_from_json(json::parse(to_json(C).dump()));
  EXPECT_EQ(D.f, C.f);
  ASSERT_TRUE(D.delta.has_value());
  EXPECT_EQ(genus(D), 0);
}

TEST(Json, OracleAndBoundReportRoundTrip) {
  PlurigeneraOracle o = oracle_from_json(json::parse(R"({"P": ["1","4","9","16"]})"));
  EXPECT_EQ(o.P.size(), 4u);
  EXPECT_EQ(oracle_from_json(to_json(o)).P, o.P);
  BoundReport r = first_integral_degree_bound(4, 2, o);
  json j = to_json(r);
  BoundReport s = bound_report_from_json(json::parse(j.dump()));
  EXPECT_EQ(to_json(s).dump(), j.dump());
  EXPECT_TRUE(trace_consistent(s));

  BoundReport h = first_integral_bound_from_height(3, 2, 2);
  EXPECT_EQ(to_json(bound_report_from_json(to_json(h))).dump(), to_json(h).dump());
}

TEST(Json, ErrorsCarryPathAndOffset) {
  try {
    parse_json("{\"P\": [1, 2,, 3]}", "oracle");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("byte 13"), std::string::npos) << e.what();
  }
  try {
    oracle_from_json(json::parse(R"({"P": ["1", "x"]})"));
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path, "/P/1");
  }
  try {
    poly_from_json(json::parse(R"({"vars": ["x","y"], "terms": [{"exp": [1], "coef": "1"}]})"));
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path, "/terms/0/exp");
  }
  EXPECT_THROW(foliation_from_json(json::parse(R"({"P": "x"})")), SchemaError);
  EXPECT_THROW(oracle_from_json(json::parse(R"({"P": ["1"], "height": 1})")), SchemaError);
}

TEST(Json, ReportsAreDeterministic) {
  Foliation F = lins_neto(Rational(2));
  std::string a = [&] {
    json arr = json::array();
    for (auto& p : singular_points(F)) arr.push_back(to_json(p, Rational(1, 1000)));
    return arr.dump();
  }();
  std::string b = [&] {
    json arr = json::array();
    for (auto& p : singular_points(F)) arr.push_back(to_json(p, Rational(1, 1000)));
    return arr.dump();
  }();
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_json(seidenberg_reduce(F)).dump(), to_json(seidenberg_reduce(F)).dump());
}

TEST(Json, NoFloatingPointNumbers) {
  Foliation F = make_foliation(P("x^2 - 2"), P("y"));
  json arr = json::array();
  for (auto& p : singular_points(F)) arr.push_back(to_json(p, Rational(1, 1000)));
  std::function<void(const json&)> walk = [&](const json& j) {
    EXPECT_FALSE(j.is_number_float()) << j.dump();
    if (j.is_structured())
      for (auto& v : j) walk(v);
  };
  walk(arr);
  walk(to_json(safe_resolution(F)));
}
