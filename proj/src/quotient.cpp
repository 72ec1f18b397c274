#include "canht/quotient.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "canht/error.hpp"

namespace canht {

FiberInvariant pi_invariants(const MatrixK& g) {
  if (g.det().is_zero()) fail(ErrorKind::SingularMatrix, "conjugation invariants need an invertible matrix");
  KPoly c = char_poly(g);
  const int t = g.size();
  FiberInvariant inv;
  for (int k = 1; k <= t; ++k) inv.coefficients.push_back(k % 2 ? -c[t - k] : c[t - k]);
  inv.det_nonzero = true;
  return inv;
}

bool same_fiber(const MatrixK& g, const MatrixK& h) {
  if (!(g.field() == h.field())) fail(ErrorKind::FieldMismatch, "matrices over different fields");
  if (g.size() != h.size()) fail(ErrorKind::InvalidArgument, "matrices of different sizes");
  return pi_invariants(g) == pi_invariants(h);
}

MatrixK closed_class_representative(const MatrixK& g) { return jordan_chevalley(g).semisimple_part; }

std::string to_string(Sl2Fiber f) {
  switch (f) {
    case Sl2Fiber::TorsionDense:
      return "TorsionDense";
    case Sl2Fiber::CentralUnipotentFiber:
      return "CentralUnipotentFiber";
    case Sl2Fiber::NoTorsion:
      return "NoTorsion";
  }
  return "";
}

Sl2Fiber sl2_fiber_classify(const FieldElem& tau) {
  const NumberField& K = tau.field();
  if (tau == FieldElem(K, Rational(2)) || tau == FieldElem(K, Rational(-2))) return Sl2Fiber::CentralUnipotentFiber;
  // Eigenvalues of the companion matrix are the two roots of x^2 - tau x + 1.
  FieldElem zero(K), one(K, Rational(1));
  MatrixK c(K, {{zero, -one}, {one, tau}});
  return is_unipotent_torsion(c) ? Sl2Fiber::TorsionDense : Sl2Fiber::NoTorsion;
}

std::pair<FieldElem, FieldElem> special_curve_point(int k, const FieldElem& lam) {
  if (k < 2) fail(ErrorKind::InvalidArgument, "curve index must be at least 2");
  if (lam.is_zero()) fail(ErrorKind::ZeroParameter, "curve parameter must be nonzero");
  FieldElem lk = lam.pow(k);
  return {lk + lam, lk * lam};
}

FiberInvariant one_parameter_point(const std::vector<int>& exponents, const FieldElem& lam) {
  if (lam.is_zero()) fail(ErrorKind::ZeroParameter, "curve parameter must be nonzero");
  if (exponents.empty()) fail(ErrorKind::InvalidArgument, "need at least one exponent");
  std::vector<FieldElem> d;
  for (int a : exponents) d.push_back(lam.pow(a));
  return pi_invariants(MatrixK::diagonal(lam.field(), d));
}

SpecialCurveIntersection intersect_special_curves(int k1, int k2) {
  if (k1 < 2 || k2 < 2 || k1 == k2) fail(ErrorKind::InvalidArgument, "need distinct curve indices >= 2");
  SpecialCurveIntersection r;
  r.k1 = k1;
  r.k2 = k2;
  const long long n1 = static_cast<long long>(k1) * k2 - 1, n2 = std::abs(k1 - k2);
  r.orders = {n1, n2};
  r.L = std::lcm(n1, n2);
  r.field = NumberField::cyclotomic(static_cast<int>(r.L));
  FieldElem z = FieldElem::generator(r.field);
  std::map<std::pair<std::string, std::string>, CurvePoint> seen;
  for (long long j = 0; j < r.L; ++j) {
    if ((j * n1) % r.L != 0 && (j * n2) % r.L != 0) continue;
    auto [tr, det] = special_curve_point(k1, z.pow(j));
    auto key = std::make_pair(tr.str(), det.str());
    if (!seen.count(key)) seen.emplace(key, CurvePoint{tr, det, j});
  }
  for (auto& [key, p] : seen) r.points.push_back(std::move(p));
  return r;
}

std::string to_string(IntersectionFiber f) {
  return f == IntersectionFiber::TorsionDenseFiber ? "TorsionDenseFiber" : "SparseTorsionFiber";
}

IntersectionFiber classify_intersection_fiber(int k, const FieldElem& lam) {
  if (k < 2) fail(ErrorKind::InvalidArgument, "curve index must be at least 2");
  if (!is_root_of_unity(lam)) fail(ErrorKind::NotRootOfUnity, "fiber parameter must be a root of unity");
  return lam.pow(k) == lam ? IntersectionFiber::SparseTorsionFiber : IntersectionFiber::TorsionDenseFiber;
}

SubtorusLattice SubtorusLattice::make(int ambient_rank, ZMatrix basis) {
  if (ambient_rank < 1) fail(ErrorKind::InvalidLattice, "ambient rank must be positive");
  if (basis.empty()) basis.assign(ambient_rank, {});
  if (static_cast<int>(basis.size()) != ambient_rank) fail(ErrorKind::InvalidLattice, "basis has the wrong number of rows");
  for (const auto& row : basis)
    if (row.size() != basis.front().size()) fail(ErrorKind::InvalidLattice, "ragged basis matrix");
  if (!is_saturated_basis(basis, ambient_rank))
    fail(ErrorKind::InvalidLattice, "basis columns must be independent and span a saturated lattice");
  return {ambient_rank, std::move(basis)};
}

std::vector<Rational> reduce_mod_one(std::vector<Rational> q) {
  for (auto& x : q) x = x.frac();
  return q;
}

TorsionCoset TorsionCoset::make(SubtorusLattice lattice, std::vector<Rational> translate) {
  if (static_cast<int>(translate.size()) != lattice.ambient_rank)
    fail(ErrorKind::InvalidArgument, "translate length differs from the ambient rank");
  return {std::move(lattice), reduce_mod_one(std::move(translate))};
}

namespace {

// Rows are a basis of the characters vanishing on the subtorus.
ZMatrix character_rows(const SubtorusLattice& s) {
  const std::size_t t = static_cast<std::size_t>(s.ambient_rank);
  ZMatrix x = integer_kernel(ztranspose(s.basis, t), t);
  return ztranspose(x, 0);
}

std::vector<Rational> act(const ZMatrix& a, const std::vector<Rational>& v) {
  std::vector<Rational> out;
  for (const auto& row : a) {
    Rational s;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (row[j] != 0) s += Rational(row[j]) * v[j];
    out.push_back(s);
  }
  return out;
}

}  // namespace

bool TorsionCoset::contains(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != lattice.ambient_rank) fail(ErrorKind::RankMismatch, "point of the wrong rank");
  std::vector<Rational> diff;
  for (std::size_t i = 0; i < point.size(); ++i) diff.push_back(point[i] - translate[i]);
  for (const auto& v : act(character_rows(lattice), diff))
    if (!v.is_integer()) return false;
  return true;
}

std::vector<TorsionCoset> intersect_torsion_cosets(const TorsionCoset& c1, const TorsionCoset& c2) {
  const int t = c1.lattice.ambient_rank;
  if (t != c2.lattice.ambient_rank) fail(ErrorKind::RankMismatch, "cosets live in tori of different rank");
  // Points y with chi(y) = chi(h_i) for every character chi killing S_i.
  ZMatrix a = character_rows(c1.lattice);
  std::vector<Rational> c = act(a, c1.translate);
  ZMatrix a2 = character_rows(c2.lattice);
  for (auto& v : act(a2, c2.translate)) c.push_back(v);
  for (auto& row : a2) a.push_back(std::move(row));

  const std::size_t n = static_cast<std::size_t>(t);
  SmithForm s = smith_normal_form(a, n);
  std::vector<Rational> uc = act(s.U, c);
  for (std::size_t i = s.rank; i < uc.size(); ++i)
    if (!uc[i].is_integer()) return {};

  ZMatrix kernel(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = s.rank; j < n; ++j) kernel[i].push_back(s.V[i][j]);
  SubtorusLattice lat{t, kernel};

  // One component per residue vector j with 0 <= j_i < d_i.
  BigInt count = 1;
  for (const auto& d : s.divisors) count *= d;
  if (count > 1000000) fail(ErrorKind::InvalidArgument, "intersection has too many components");
  std::vector<TorsionCoset> out;
  std::vector<BigInt> j(s.rank, 0);
  while (true) {
    std::vector<Rational> z(n);
    for (std::size_t i = 0; i < s.rank; ++i) z[i] = (uc[i] + Rational(j[i])) / Rational(s.divisors[i]);
    out.push_back(TorsionCoset{lat, reduce_mod_one(act(s.V, z))});
    std::size_t i = 0;
    while (i < s.rank && ++j[i] == s.divisors[i]) j[i++] = 0;
    if (i == s.rank) break;
  }
  std::sort(out.begin(), out.end(), [](const TorsionCoset& x, const TorsionCoset& y) {
    return std::lexicographical_compare(x.translate.begin(), x.translate.end(), y.translate.begin(), y.translate.end());
  });
  return out;
}

}  // namespace canht
