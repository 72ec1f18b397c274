#pragma once

#include <complex>
#include <vector>

#include "canht/qpoly.hpp"

namespace canht {

// Disk in C certified to contain exactly one root of the polynomial it was
// computed for; disks for distinct roots of the same polynomial are disjoint.
struct RootBox {
  std::complex<double> center;
  double radius = 0.0;
};

// Certified isolation of all complex roots of a squarefree f with deg f >= 1.
//
// Seeds come from the eigenvalues of the companion matrix, refined by
// simultaneous (Aberth) iteration in extended precision. Each root z_i is then
// certified by the Gershgorin inclusion for the Weierstrass corrections
// W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j)): the disks |z - z_i| <= n |W_i|
// contain all roots and, when pairwise disjoint, exactly one each. Rounding
// errors of the evaluation are folded into the radii. When that certificate
// misses eps, the roots are refined in 320-bit arithmetic and certified from
// exact rational residuals instead.
//
// Output order: real roots ascending, then complex roots by (re, im).
// Throws NotSquarefree, or NumericalFailure if radius <= eps cannot be reached.
std::vector<RootBox> complex_roots(const QPoly& f, double eps);

}  // namespace canht
