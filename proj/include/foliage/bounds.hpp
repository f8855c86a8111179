#pragma once

#include "rational.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace foliage {

struct OracleExhausted : Undetermined {
  using Undetermined::Undetermined;
};

// h^0(C, (Omega^1_C)^k) for a curve of genus g.
inline long long rr_sections(long long g, long long k) {
  if (k <= 0) throw InputError("rr_sections: k must be positive");
  if (g < 0) throw InputError("rr_sections: genus must be nonnegative");
  if (g == 0) return 0;
  if (g == 1) return 1;
  if (k == 1) return g;
  return k * (2 * g - 2) - g + 1;
}

inline long long height_lower_bound(long long h, long long n) {
  if (h < 1) throw InputError("height must be at least 1");
  if (n < 0) throw InputError("height_lower_bound: n must be nonnegative");
  return (n + 2) * (n + 1) / 2;
}

// Plurigenera of the reduced model, as an explicit list P_1..P_N, a height, or both.
struct PlurigeneraOracle {
  std::vector<long long> P;  // P[0] is P_1
  std::optional<long long> height;
  long long scan_limit = 100000;  // largest index tried when only a height is given

  // Known lower bound for P_n, if any.
  std::optional<long long> value(long long n) const {
    if (n >= 1 && n <= (long long)P.size()) return P[std::size_t(n - 1)];
    if (height && n % *height == 0) return height_lower_bound(*height, n / *height);
    return std::nullopt;
  }
  long long range() const {
    if (height) return std::max<long long>(scan_limit, (long long)P.size());
    return (long long)P.size();
  }
  std::string describe() const {
    std::string s;
    if (!P.empty()) s += "explicit P_1..P_" + std::to_string(P.size());
    if (height) s += std::string(s.empty() ? "" : ", ") + "height " + std::to_string(*height);
    return s.empty() ? "empty" : s;
  }
};

// Rejects inconsistent oracles: explicit values must respect the height bound.
inline void validate(const PlurigeneraOracle& o) {
  for (auto v : o.P)
    if (v < 0) throw InputError("plurigenera must be nonnegative");
  if (!o.height) return;
  long long h = *o.height;
  if (h < 1) throw InputError("height must be at least 1");
  for (long long n = 0; h * n <= (long long)o.P.size(); ++n) {
    if (n == 0) continue;
    long long v = o.P[std::size_t(h * n - 1)];
    if (v < height_lower_bound(h, n))
      throw InputError("P_" + std::to_string(h * n) + " = " + std::to_string(v) + " violates the height bound " +
                       std::to_string(height_lower_bound(h, n)));
  }
}

struct GateRow {
  long long n = 0;
  std::optional<long long> lhs;  // P_n, if known
  long long rhs = 0;
  bool fired = false;
};

struct BoundReport {
  std::string kind;
  long long d = 0, g = 0;
  std::optional<long long> Z;
  std::optional<long long> h;
  std::string oracle;
  std::vector<GateRow> trace;
  long long n0 = 0;
  long long bound = 0;
  std::string hypothesis;
  std::vector<std::string> warnings;
};

namespace detail {

inline void degree_warnings(BoundReport& r) {
  if (r.d < 0) throw InputError("degree must be nonnegative");
  if (r.d <= 1)
    r.warnings.push_back("degree " + std::to_string(r.d) +
                         ": foliations of degree 0 or 1 are never of general type; bound reported as 0");
}

inline long long degree_factor(long long d) { return d <= 1 ? 0 : d - 1; }

// Scan n = 1, 2, ... for P_n > rhs(n).
template <class Rhs>
void scan_gate(BoundReport& r, const PlurigeneraOracle& o, Rhs rhs) {
  validate(o);
  long long N = o.range();
  for (long long n = 1; n <= N; ++n) {
    GateRow row;
    row.n = n;
    row.rhs = rhs(n);
    row.lhs = o.value(n);
    row.fired = row.lhs && *row.lhs > row.rhs;
    r.trace.push_back(row);
    if (row.fired) {
      r.n0 = n;
      r.bound = n * degree_factor(r.d);
      return;
    }
  }
  throw OracleExhausted("the gate never fires within the oracle range; increase oracle range");
}

}  // namespace detail

// Degree bound for a rational first integral whose generic leaf has genus g.
inline BoundReport first_integral_degree_bound(long long d, long long g, const PlurigeneraOracle& o) {
  if (g < 2) throw InputError("the generic leaf must have genus at least 2");
  BoundReport r;
  r.kind = "first-integral";
  r.d = d;
  r.g = g;
  r.oracle = o.describe();
  detail::degree_warnings(r);
  detail::scan_gate(r, o, [&](long long n) { return rr_sections(g, n); });
  return r;
}

// Same bound with P_{h n} >= binom(n+2, 2) in place of the plurigenera.
inline BoundReport first_integral_bound_from_height(long long d, long long g, long long h) {
  if (g < 2) throw InputError("the generic leaf must have genus at least 2");
  if (h < 1) throw InputError("height must be at least 1");
  BoundReport r;
  r.kind = "first-integral-height";
  r.d = d;
  r.g = g;
  r.h = h;
  r.oracle = "height " + std::to_string(h);
  detail::degree_warnings(r);
  for (long long n = 1;; ++n) {
    GateRow row;
    row.n = n;
    row.lhs = height_lower_bound(h, n);
    row.rhs = rr_sections(g, h * n);
    row.fired = *row.lhs > row.rhs;
    r.trace.push_back(row);
    if (row.fired) {
      r.n0 = n;
      r.bound = h * n * detail::degree_factor(d);
      return r;
    }
  }
}

// Worst case of Z(G, C) when every singularity is quasi-reduced.
inline long long z_bound_quasi_reduced(long long d) {
  if (d < 1) throw InputError("degree must be at least 1");
  return (d * d + d + 1) * (d + 2);
}

inline const char* quasi_reduced_tag() { return "quasi-reduced singularities"; }

// Degree bound for an invariant curve of genus g_C with Z(F, C) = Z.
inline BoundReport invariant_curve_degree_bound(long long d, long long gC, const PlurigeneraOracle& o, long long Z) {
  if (gC < 0) throw InputError("genus must be nonnegative");
  if (Z < 0) throw InputError("Z must be nonnegative");
  BoundReport r;
  r.kind = "invariant-curve";
  r.d = d;
  r.g = gC;
  r.Z = Z;
  r.oracle = o.describe();
  detail::degree_warnings(r);
  detail::scan_gate(r, o, [&](long long n) { return rr_sections(gC, n) + n * Z; });
  return r;
}

// Re-evaluates the trace: the gate fails before n0 and holds at n0.
inline bool trace_consistent(const BoundReport& r) {
  if (r.trace.empty() || r.trace.back().n != r.n0) return false;
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const auto& row = r.trace[i];
    if (row.n != (long long)i + 1) return false;
    bool fires = row.lhs && *row.lhs > row.rhs;
    if (fires != row.fired) return false;
    if (fires != (i + 1 == r.trace.size())) return false;
  }
  long long f = detail::degree_factor(r.d);
  long long expect = r.h ? *r.h * r.n0 * f : r.n0 * f;
  return r.bound == expect;
}

}  // namespace foliage
