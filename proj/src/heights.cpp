#include "canht/heights.hpp"

#include <cfloat>
#include <cmath>

#include "canht/error.hpp"
#include "canht/factor.hpp"
#include "canht/lattice.hpp"

namespace canht {

namespace {

constexpr double kUlp = DBL_EPSILON;

double log_abs(const BigInt& z) {
  long exp = 0;
  double m = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(exp) * std::log(2.0);
}

double factorial(int t) {
  double f = 1;
  for (int i = 2; i <= t; ++i) f *= i;
  return f;
}

// Interval of log+ |z| over the disk |z - c| <= r.
std::pair<double, double> log_plus_range(std::complex<double> c, double r) {
  double a = std::abs(c);
  double lo = a - r, hi = a + r;
  auto lp = [](double x) { return x > 1 ? std::log(x) : 0.0; };
  return {lo > 0 ? lp(lo) : 0.0, lp(hi)};
}

bool kronecker_vanishing(const std::vector<BigInt>& z) {
  if (abs(z.back()) != 1) return false;
  if (abs(z.front()) > 1) return false;
  for (const auto& [g, e] : factor_rational(from_integers(z)).factors)
    if (g != QPoly::x() && cyclotomic_index(g) == 0) return false;
  return true;
}

}  // namespace

HeightValue& HeightValue::operator+=(const HeightValue& o) {
  value += o.value;
  abs_error += o.abs_error + std::fabs(value) * kUlp;
  exact_zero = exact_zero && o.exact_zero;
  return *this;
}

HeightValue HeightValue::scaled(double c) const {
  if (exact_zero) return zero();
  return {value * c, abs_error * std::fabs(c) + std::fabs(value * c) * kUlp, false};
}

HeightValue mahler_measure(const QPoly& f, double eps) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "Mahler measure of the zero polynomial");
  auto [content, z] = primitive_part(f);
  if (f.degree() == 0) return HeightValue::zero();
  if (kronecker_vanishing(z)) return HeightValue::zero();
  HeightValue h;
  h.value = log_abs(z.back());
  h.abs_error = 4 * kUlp * std::fabs(h.value);
  double terms = std::fabs(h.value);
  for (const auto& [part, mult] : squarefree_decomposition(from_integers(z))) {
    for (const auto& box : complex_roots(part, eps)) {
      auto [lo, hi] = log_plus_range(box.center, box.radius);
      double mid = 0.5 * (lo + hi);
      h.value += mult * mid;
      h.abs_error += mult * (0.5 * (hi - lo) + 4 * kUlp * hi);
      terms += mult * hi;
    }
  }
  h.abs_error += 4 * kUlp * terms;
  if (h.value < 0) h.value = 0;  // m(f) >= 0 for integer f
  return h;
}

HeightValue weil_height_of_root(const QPoly& f, double eps) {
  if (f.degree() < 1 || !is_irreducible(f)) fail(ErrorKind::InvalidArgument, "algebraic number must be given by an irreducible polynomial");
  return mahler_measure(f, eps).scaled(1.0 / f.degree());
}

HeightValue weil_height(const FieldElem& a, double eps) {
  if (a.is_zero() || is_root_of_unity(a)) return HeightValue::zero();
  QPoly m = min_poly_over_Q(a);
  HeightValue h = mahler_measure(m, eps).scaled(1.0 / m.degree());
  h.exact_zero = false;
  return h;
}

HeightValue projective_height(const NumberField& K, const std::vector<FieldElem>& mu, double eps) {
  if (mu.empty()) fail(ErrorKind::InvalidArgument, "projective point needs at least one coordinate");
  for (const auto& m : mu)
    if (!(m.field() == K)) fail(ErrorKind::FieldMismatch, "coordinate from a different number field");
  if (!K.monogenic()) fail(ErrorKind::NotMonogenic, "finite places need Z[theta] to be the maximal order");
  const FieldElem* pivot = nullptr;
  for (const auto& m : mu)
    if (!m.is_zero()) {
      pivot = &m;
      break;
    }
  if (!pivot) fail(ErrorKind::AllCoordinatesZero, "projective point with all coordinates zero");

  // Zero exactly when every ratio to a nonzero coordinate is 0 or a root of unity.
  bool all_units = true;
  FieldElem pinv = pivot->inverse();
  for (const auto& m : mu)
    if (!m.is_zero() && !is_root_of_unity(m * pinv)) {
      all_units = false;
      break;
    }
  if (all_units) return HeightValue::zero();

  const int d = K.degree();
  BigInt den = 1;
  for (const auto& m : mu)
    for (int i = 0; i < d; ++i) den = lcm(den, m.coeff(i).denominator());
  // Scaling to a primitive integral vector makes the result independent of
  // any rational multiple of mu, bit for bit, up to a global sign.
  BigInt content = 0;
  for (const auto& m : mu)
    for (int i = 0; i < d; ++i) content = gcd(content, m.coeff(i).numerator() * (den / m.coeff(i).denominator()));
  FieldElem scale(K, Rational(den, content));
  std::vector<FieldElem> nu;
  for (const auto& m : mu)
    if (!m.is_zero()) nu.push_back(m * scale);

  HeightValue h;
  double terms = 0;
  for (const auto& box : embeddings(K, eps)) {
    double lo = 0, hi = 0;
    for (const auto& v : nu) {
      ComplexBall b = evaluate(v, box);
      double a = std::abs(b.center);
      lo = std::max(lo, a - b.radius - a * kUlp);
      hi = std::max(hi, a + b.radius + a * kUlp);
    }
    if (!(lo > 0)) fail(ErrorKind::NumericalFailure, "could not separate an embedded coordinate from zero");
    double l0 = std::log(lo), l1 = std::log(hi);
    h.value += 0.5 * (l0 + l1);
    h.abs_error += 0.5 * (l1 - l0) + 2 * kUlp * std::fabs(l1);
    terms += std::fabs(l1);
  }

  ZMatrix rows;
  FieldElem theta = FieldElem::generator(K);
  for (const auto& v : nu) {
    FieldElem w = v;
    for (int j = 0; j < d; ++j) {
      std::vector<BigInt> row;
      for (int i = 0; i < d; ++i) row.push_back(w.coeff(i).numerator());
      rows.push_back(std::move(row));
      if (j + 1 < d) w *= theta;
    }
  }
  BigInt index = lattice_index(rows, static_cast<std::size_t>(d));
  double fin = log_abs(index);
  h.value -= fin;
  terms += fin;
  h.abs_error += 4 * kUlp * terms;
  h.value /= d;
  h.abs_error = h.abs_error / d + kUlp * std::fabs(h.value);
  if (h.value < 0) h.value = 0;
  return h;
}

HeightValue torus_dinfty_height(const std::vector<FieldElem>& lambda, double eps) {
  HeightValue sum = HeightValue::zero();
  for (const auto& l : lambda) {
    if (l.is_zero()) fail(ErrorKind::ZeroCoordinate, "torus coordinates must be nonzero");
    sum += weil_height(l, eps);
  }
  return sum.scaled(2.0);
}

HeightValue weyl_invariant_height(const std::vector<FieldElem>& lambda, double eps) {
  return torus_dinfty_height(lambda, eps).scaled(factorial(static_cast<int>(lambda.size())));
}

HeightValue canonical_height_glt(const MatrixK& g, double eps) {
  if (g.det().is_zero()) fail(ErrorKind::SingularMatrix, "matrix is singular");
  EigenvalueData data = eigen_minpolys(g);
  HeightValue sum = HeightValue::zero();
  for (const auto& [f, mult] : data.factors) {
    if (cyclotomic_index(f) != 0) continue;
    sum += mahler_measure(f, eps).scaled(mult);
  }
  const int t = g.size();
  return sum.scaled(2.0 * factorial(t) / g.field().degree());
}

namespace {

MatrixK change_field(const MatrixK& g, const NumberField& L) {
  const NumberField& K = g.field();
  if (K == L) return g;
  MatrixK out(L, g.size());
  if (K.is_rationals()) {
    for (int i = 0; i < g.size(); ++i)
      for (int j = 0; j < g.size(); ++j) out(i, j) = FieldElem(L, g(i, j).coeff(0));
    return out;
  }
  auto roots = roots_in_field(KPoly(L, K.defining_poly()));
  if (roots.empty()) fail(ErrorKind::InvalidArgument, "splitting field does not contain the field of the matrix");
  const FieldElem& r = roots.front().first;
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) out(i, j) = eval_at(g(i, j).to_poly(), r);
  return out;
}

}  // namespace

BreuillardResult breuillard_height(const MatrixK& g, const std::optional<NumberField>& splitting, double eps) {
  if (g.det().is_zero()) fail(ErrorKind::SingularMatrix, "matrix is singular");
  MatrixK h = splitting ? change_field(g, *splitting) : g;
  const int t = h.size();
  BreuillardResult res;
  int found = 0;
  auto roots = roots_in_field(char_poly(h));
  for (const auto& [r, e] : roots) found += e;
  if (found == t) {
    std::vector<FieldElem> point{FieldElem(h.field(), Rational(1))};
    for (const auto& [r, e] : roots)
      for (int k = 0; k < e; ++k) {
        point.push_back(r);
        res.eigenvalues.push_back(r);
      }
    res.exact = true;
    res.value = projective_height(h.field(), point, eps);
    res.lower = res.upper = res.value;
    return res;
  }
  HeightValue hg = canonical_height_glt(g, eps);
  res.lower = hg.scaled(1.0 / (2.0 * factorial(t) * t));
  res.upper = hg.scaled(1.0 / t);
  return res;
}

SandwichReport check_sandwich(const MatrixK& g, const std::optional<NumberField>& splitting, double eps) {
  BreuillardResult b = breuillard_height(g, splitting, eps);
  if (!b.exact) fail(ErrorKind::InvalidArgument, "characteristic polynomial does not split; the middle term is not exactly computable");
  const int t = g.size();
  HeightValue hg = canonical_height_glt(g, eps);
  SandwichReport r;
  r.upper = hg;
  r.lower = hg.scaled(1.0 / (2.0 * factorial(t)));
  r.middle = b.value.scaled(t);
  auto le = [](const HeightValue& a, const HeightValue& c) {
    if (a.exact_zero) return true;
    return a.value <= c.value + a.abs_error + c.abs_error;
  };
  auto eq = [](const HeightValue& a, const HeightValue& c) {
    if (a.exact_zero && c.exact_zero) return true;
    return std::fabs(a.value - c.value) <= a.abs_error + c.abs_error;
  };
  r.holds = le(r.lower, r.middle) && le(r.middle, r.upper);
  r.lower_equality = eq(r.lower, r.middle);
  r.upper_equality = eq(r.middle, r.upper);
  return r;
}

}  // namespace canht
