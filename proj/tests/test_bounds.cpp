#include <foliage/bounds.hpp>

#include <gtest/gtest.h>

using namespace foliage;

namespace {

// h^0 of the k-th power of the canonical bundle, by cases on deg = k(2g - 2)
long long rr_oracle(long long g, long long k) {
  long long deg = k * (2 * g - 2);
  if (deg < 0) return 0;                 // g = 0
  if (deg == 0) return 1;                // g = 1: trivial bundle
  if (k == 1) return g;                  // canonical: h^0 = g
  return deg - g + 1;                    // deg > 2g - 2: nonspecial
}

PlurigeneraOracle explicit_oracle(std::vector<long long> p) {
  PlurigeneraOracle o;
  o.P = std::move(p);
  return o;
}

PlurigeneraOracle squares(int n) {
  PlurigeneraOracle o;
  for (long long i = 1; i <= n; ++i) o.P.push_back(i * i);
  return o;
}

}  // namespace

TEST(RiemannRoch, MatchesOracle) {
  for (long long g = 0; g <= 8; ++g)
    for (long long k = 1; k <= 12; ++k) EXPECT_EQ(rr_sections(g, k), rr_oracle(g, k)) << g << "," << k;
  EXPECT_EQ(rr_sections(2, 2), 3);
  EXPECT_EQ(rr_sections(3, 3), 10);
  EXPECT_THROW(rr_sections(2, 0), InputError);
  EXPECT_THROW(rr_sections(-1, 2), InputError);
}

TEST(Gate, WorkedExample) {
  auto r = first_integral_degree_bound(4, 2, squares(10));
  EXPECT_EQ(r.n0, 2);
  EXPECT_EQ(r.bound, 6);
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_FALSE(r.trace[0].fired);
  EXPECT_TRUE(r.trace[1].fired);
  EXPECT_TRUE(trace_consistent(r));
}

TEST(Gate, SyntheticOracles) {
  struct Case {
    long long d, g;
    std::vector<long long> P;
    long long n0, bound;
  };
  std::vector<Case> cases = {
      {4, 2, {1, 4, 9, 16}, 2, 6},
      {5, 2, {0, 0, 6}, 3, 12},
      {3, 3, {1, 8, 27}, 2, 4},
      {6, 4, {0, 0, 0, 0, 30}, 5, 25},
      {2, 2, {3}, 1, 1},
      {7, 5, {5, 14}, 2, 12},
  };
  for (auto& c : cases) {
    auto r = first_integral_degree_bound(c.d, c.g, explicit_oracle(c.P));
    EXPECT_EQ(r.n0, c.n0) << c.d << "," << c.g;
    EXPECT_EQ(r.bound, c.bound) << c.d << "," << c.g;
    EXPECT_TRUE(trace_consistent(r));
  }
}

TEST(Gate, HeightOnlyOracle) {
  PlurigeneraOracle o;
  o.height = 2;
  auto r = first_integral_degree_bound(3, 2, o);
  // binom(m+2, 2) > 4m - 1 first holds at m = 5, i.e. n = 10
  EXPECT_EQ(r.n0, 10);
  EXPECT_EQ(r.bound, 20);
  EXPECT_TRUE(trace_consistent(r));
  for (auto& row : r.trace) EXPECT_EQ(row.lhs.has_value(), row.n % 2 == 0);
}

TEST(Gate, ExhaustedOracle) {
  EXPECT_THROW(first_integral_degree_bound(4, 2, explicit_oracle({1, 1, 1})), OracleExhausted);
  try {
    first_integral_degree_bound(4, 2, explicit_oracle({1, 1, 1}));
  } catch (const OracleExhausted& e) {
    EXPECT_NE(std::string(e.what()).find("increase oracle range"), std::string::npos);
  }
  EXPECT_THROW(first_integral_degree_bound(4, 1, squares(5)), InputError);
}

TEST(Gate, InconsistentOracleRejected) {
  PlurigeneraOracle o = explicit_oracle({1, 1});
  o.height = 1;  // would force P_1 >= 3
  EXPECT_THROW(first_integral_degree_bound(4, 2, o), InputError);
  EXPECT_THROW(first_integral_degree_bound(4, 2, explicit_oracle({-1, 5})), InputError);
}

TEST(Gate, SmallDegreeWarns) {
  auto r = first_integral_degree_bound(1, 2, squares(10));
  EXPECT_EQ(r.bound, 0);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Height, LowerBoundIsBinomial) {
  for (long long h = 1; h <= 4; ++h)
    for (long long n = 0; n <= 30; ++n)
      EXPECT_EQ(height_lower_bound(h, n), binomial(unsigned(n + 2), 2).get_si());
  EXPECT_THROW(height_lower_bound(0, 3), InputError);
}

TEST(Height, GridTerminatesAtMinimalIndex) {
  for (long long d = 2; d <= 6; ++d)
    for (long long g = 2; g <= 5; ++g)
      for (long long h = 1; h <= 4; ++h) {
        auto r = first_integral_bound_from_height(d, g, h);
        EXPECT_TRUE(trace_consistent(r));
        long long brute = 1;
        while ((brute + 2) * (brute + 1) / 2 <= rr_oracle(g, h * brute)) ++brute;
        EXPECT_EQ(r.n0, brute) << d << "," << g << "," << h;
        EXPECT_EQ(r.bound, h * brute * (d - 1));
      }
}

TEST(Height, BoundMonotone) {
  for (long long h = 1; h <= 3; ++h)
    for (long long g = 2; g <= 6; ++g)
      for (long long d = 2; d <= 6; ++d) {
        auto r = first_integral_bound_from_height(d, g, h);
        EXPECT_LE(r.bound, first_integral_bound_from_height(d, g + 1, h).bound);
        EXPECT_LE(r.bound, first_integral_bound_from_height(d + 1, g, h).bound);
      }
}

TEST(InvariantCurve, GateWithZ) {
  auto r = invariant_curve_degree_bound(4, 0, squares(20), 2);
  EXPECT_EQ(r.n0, 3);  // n^2 > 2n
  EXPECT_EQ(r.bound, 9);
  EXPECT_TRUE(trace_consistent(r));
  long long prev = 0;
  for (long long Z = 0; Z <= 12; ++Z) {
    auto s = invariant_curve_degree_bound(4, 1, squares(40), Z);
    EXPECT_GE(s.bound, prev);
    prev = s.bound;
  }
  EXPECT_THROW(invariant_curve_degree_bound(4, 1, squares(5), -1), InputError);
}

TEST(InvariantCurve, QuasiReducedWorstCase) {
  EXPECT_EQ(z_bound_quasi_reduced(1), 9);
  EXPECT_EQ(z_bound_quasi_reduced(4), 21 * 6);
  for (long long d = 1; d <= 10; ++d) EXPECT_EQ(z_bound_quasi_reduced(d), (d * d + d + 1) * (d + 2));
}
