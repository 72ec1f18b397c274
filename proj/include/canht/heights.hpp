#pragma once

// Logarithmic heights. Values are floating point with a rigorous absolute
// error bound; exact_zero is set only when vanishing is decided exactly.
//
// Places of K are normalized by n_v = [K_v : Q_v] with absolute values
// extending the standard ones on Q, and heights are divided by [K : Q], so
// every height below is independent of the field used to compute it.

#include <optional>
#include <vector>

#include "canht/matgroup.hpp"

namespace canht {

inline constexpr double kDefaultEps = 1e-12;

struct HeightValue {
  double value = 0.0;
  double abs_error = 0.0;
  bool exact_zero = false;

  static HeightValue zero() { return {0.0, 0.0, true}; }
  HeightValue& operator+=(const HeightValue& o);
  HeightValue scaled(double c) const;
};

// log|lc| + sum log+ |alpha| over the roots of the primitive integer model.
HeightValue mahler_measure(const QPoly& f, double eps = kDefaultEps);

// Absolute logarithmic Weil height h(a) = m(min_poly a) / deg.
HeightValue weil_height(const FieldElem& a, double eps = kDefaultEps);
// Height of any root of an irreducible f.
HeightValue weil_height_of_root(const QPoly& f, double eps = kDefaultEps);

// h([mu_0 : ... : mu_n]) over a monogenic K. The archimedean places come from
// the embeddings; the finite places are collapsed into the index of the
// Z-module generated by the mu_i * theta^j in Z[theta]. Throws
// AllCoordinatesZero, NotMonogenic, FieldMismatch.
HeightValue projective_height(const NumberField& K, const std::vector<FieldElem>& mu, double eps = kDefaultEps);

// Height attached to the boundary divisor of (P^1)^t on G_m^t:
// 2 * sum h(lambda_i). Throws ZeroCoordinate.
HeightValue torus_dinfty_height(const std::vector<FieldElem>& lambda, double eps = kDefaultEps);
// Sum of the previous height over the t! coordinate permutations.
HeightValue weyl_invariant_height(const std::vector<FieldElem>& lambda, double eps = kDefaultEps);

// 2 * t! * sum h(lambda_i) over the eigenvalues of g with multiplicity.
// Exactly zero iff every eigenvalue is a root of unity. Throws SingularMatrix.
HeightValue canonical_height_glt(const MatrixK& g, double eps = kDefaultEps);

// h_t([1 : lambda_1 : ... : lambda_t]) when the characteristic polynomial
// splits over the field of g (or over `splitting`, which must contain it);
// otherwise the bounds ĥ_G / (2 t! t) <= ĥ_B <= ĥ_G / t.
struct BreuillardResult {
  bool exact = false;
  HeightValue value;  // meaningful when exact
  HeightValue lower;
  HeightValue upper;
  // Eigenvalues with multiplicity, as text in the field used, when exact.
  std::vector<FieldElem> eigenvalues;
};
BreuillardResult breuillard_height(const MatrixK& g, const std::optional<NumberField>& splitting = std::nullopt,
                                   double eps = kDefaultEps);

// Evaluates ĥ_G / (2 t!) <= t ĥ_B <= ĥ_G. Throws InvalidArgument when ĥ_B is
// not exactly computable.
struct SandwichReport {
  HeightValue lower;   // ĥ_G / (2 t!)
  HeightValue middle;  // t ĥ_B
  HeightValue upper;   // ĥ_G
  bool holds = false;
  // Equalities up to the aggregated error.
  bool lower_equality = false;
  bool upper_equality = false;
};
SandwichReport check_sandwich(const MatrixK& g, const std::optional<NumberField>& splitting = std::nullopt,
                              double eps = kDefaultEps);

}  // namespace canht
