#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the code paths it is used to check.

#include <set>
#include <vector>

#include "canht/lattice.hpp"
#include "canht/qpoly.hpp"

namespace canht::oracle {

// Determinant by fraction-exact Gaussian elimination.
Rational determinant(std::vector<std::vector<Rational>> a);

// Determinant of the Sylvester matrix of f and g.
Rational sylvester_resultant(const QPoly& f, const QPoly& g);

// Phi_m from the recursive definition (x^m - 1) / prod_{d | m, d < m} Phi_d.
QPoly cyclotomic_by_division(int m);

// True when f (integer, monic or not) has a rational root, by the
// rational-root theorem.
bool has_rational_root(const QPoly& f);

// True when some monic integer quadratic with |coefficients| <= bound divides f.
bool has_small_quadratic_factor(const QPoly& f, int bound);

long long gcd_ll(long long a, long long b);

// Mahler measure from Jensen's formula: the mean of log|f| over n equally
// spaced points of the unit circle. Accurate when no root is near |z| = 1.
double mahler_by_jensen(const QPoly& f, int n);

// Rank over Q by Gaussian elimination.
int rank(std::vector<std::vector<Rational>> a);

// Every y in [0,1)^t with M y integral of the form h + B x mod 1, x in
// (1/M) Z^r. For saturated B this is all such points of the coset h + span B.
// Requires M h integral.
std::set<std::vector<Rational>> coset_points(const ZMatrix& basis, const std::vector<Rational>& h, int M);

}  // namespace canht::oracle
