#pragma once

// The conjugation quotient of GL_t, read off from characteristic polynomial
// coefficients, together with the finite intersection calculus for diagonal
// one-parameter families in GL_2 and for torsion cosets in G_m^t.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "canht/lattice.hpp"
#include "canht/matgroup.hpp"

namespace canht {

// e_1, ..., e_t of the eigenvalues: e_1 is the trace and e_t the
// determinant. det(x - g) = x^t - e_1 x^(t-1) + ... + (-1)^t e_t.
struct FiberInvariant {
  std::vector<FieldElem> coefficients;
  bool det_nonzero = true;

  const FieldElem& trace() const { return coefficients.front(); }
  const FieldElem& det() const { return coefficients.back(); }
  friend bool operator==(const FiberInvariant& a, const FiberInvariant& b) {
    return a.coefficients == b.coefficients;
  }
};

// Throws SingularMatrix.
FiberInvariant pi_invariants(const MatrixK& g);
// Throws SingularMatrix, FieldMismatch, and InvalidArgument on a size mismatch.
bool same_fiber(const MatrixK& g, const MatrixK& h);
// The semisimple part of g, which spans the unique closed class in its fiber.
MatrixK closed_class_representative(const MatrixK& g);

enum class Sl2Fiber { TorsionDense, CentralUnipotentFiber, NoTorsion };
std::string to_string(Sl2Fiber f);
// Fiber of the trace map on SL_2 over tau.
Sl2Fiber sl2_fiber_classify(const FieldElem& tau);

// (trace, det) of diag(lam^k, lam). Throws ZeroParameter, InvalidArgument for k < 2.
std::pair<FieldElem, FieldElem> special_curve_point(int k, const FieldElem& lam);
// pi(diag(lam^a_1, ..., lam^a_t)); exponents may be negative. Throws ZeroParameter.
FiberInvariant one_parameter_point(const std::vector<int>& exponents, const FieldElem& lam);

struct CurvePoint {
  FieldElem trace;
  FieldElem det;
  // Smallest k with zeta_L^k mapping to this point on the first curve.
  long long lambda_exponent;
};

// Intersection in the quotient of the images of lam -> diag(lam^k1, lam) and
// mu -> diag(mu^k2, mu). It is the image of the roots of unity of the two
// orders below, computed in Q(zeta_L) with L their lcm.
struct SpecialCurveIntersection {
  int k1 = 0, k2 = 0;
  // {k1 k2 - 1, |k1 - k2|}
  std::vector<long long> orders;
  NumberField field;
  long long L = 1;
  // Distinct points, sorted by their textual (trace, det).
  std::vector<CurvePoint> points;
};
SpecialCurveIntersection intersect_special_curves(int k1, int k2);

enum class IntersectionFiber { TorsionDenseFiber, SparseTorsionFiber };
std::string to_string(IntersectionFiber f);
// Fiber over the point of diag(lam^k, lam). Sparse exactly when both
// eigenvalues coincide, so that the fiber holds one central torsion point
// and one non-semisimple class. Throws NotRootOfUnity.
IntersectionFiber classify_intersection_fiber(int k, const FieldElem& lam);

// Columns of `basis` (t x r) span a saturated sublattice of Z^t, the
// cocharacter lattice of a subtorus.
struct SubtorusLattice {
  int ambient_rank = 0;
  ZMatrix basis;

  int rank() const { return basis.empty() ? 0 : static_cast<int>(basis.front().size()); }
  // Throws InvalidLattice.
  static SubtorusLattice make(int ambient_rank, ZMatrix basis);
};

// h * S with h = (exp(2 pi i q_1), ..., exp(2 pi i q_t)), q_j in [0, 1).
struct TorsionCoset {
  SubtorusLattice lattice;
  std::vector<Rational> translate;

  // Throws InvalidArgument when the translate has the wrong length.
  static TorsionCoset make(SubtorusLattice lattice, std::vector<Rational> translate);
  // Exact test for exponent vectors of torsion points.
  bool contains(const std::vector<Rational>& point) const;
};

// Reduces every coordinate into [0, 1).
std::vector<Rational> reduce_mod_one(std::vector<Rational> q);

// Connected components of c1 ∩ c2, each a torsion coset of the subtorus
// with cocharacter lattice L1 ∩ L2. Empty when the cosets are disjoint.
// Components are sorted by translate. Throws RankMismatch.
std::vector<TorsionCoset> intersect_torsion_cosets(const TorsionCoset& c1, const TorsionCoset& c2);

}  // namespace canht
