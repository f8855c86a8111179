// Walks through the library on the Lins Neto pencil and a linear field.
#include <foliage/blowup.hpp>
#include <foliage/bounds.hpp>
#include <foliage/curves.hpp>
#include <foliage/families.hpp>

#include <iostream>

using namespace foliage;

int main() {
  auto ln = lins_neto_member(Rational(2));
  auto pts = singular_points(ln.F);
  std::cout << "Lins Neto (alpha = 2): degree " << ln.F.degree << ", " << pts.size()
            << " singular point classes, total Milnor number " << milnor_total(pts) << "\n";

  auto lin = linear_family(2, -3);
  auto fi = first_integral_search(lin.F, 6);
  if (fi.degree)
    std::cout << "x' = 2x, y' = -3y: first integral of degree " << *fi.degree << ": (" << fi.integral->first
              << ") / (" << fi.integral->second << ")\n";

  Foliation node = make_foliation(parse_poly("x", xy_vars()), parse_poly("2*y", xy_vars()));
  auto tree = seidenberg_reduce(node);
  auto s = summarize(tree);
  std::cout << "2:1 node: " << s.blowups << " blow-ups, " << s.dicritical_roots << " dicritical point(s)\n";

  PlurigeneraOracle squares;
  for (long long n = 1; n <= 12; ++n) squares.P.push_back(n * n);
  auto r = first_integral_degree_bound(4, 2, squares);
  std::cout << "d = 4, g = 2, P_n = n^2: n0 = " << r.n0 << ", degree bound " << r.bound << "\n";
}
