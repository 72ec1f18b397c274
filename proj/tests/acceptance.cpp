// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "canht/borel.hpp"
#include "canht/factor.hpp"
#include "canht/heights.hpp"
#include "canht/quotient.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace canht;
using canht::testing::conjugate;
using canht::testing::exact_order_triples;
using canht::testing::primitive_root;
using canht::testing::random_invertible;
using canht::testing::random_small;
using canht::testing::upper_with;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first few failures and keeps counting the rest.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << ", " << checks_ << " checks";
    if (failures_) s << ", " << failures_ << " failed: " << notes_;
    return {failures_ == 0, s.str()};
  }

 private:
  long checks_ = 0, failures_ = 0;
  std::string notes_;
};

FieldElem q(const NumberField& K, Rational r) { return FieldElem(K, r); }

// Matrices over Q and Q(zeta_12) in GL_2 and GL_3: diagonals of roots of
// unity and of non-torsion values, with and without unipotent blocks, plus
// random conjugates and a few non-split rational matrices.
std::vector<MatrixK> height_corpus() {
  std::vector<MatrixK> out;
  std::mt19937_64 rng(2718);
  NumberField Q;
  NumberField K12 = NumberField::cyclotomic(12);
  for (const NumberField& K : {Q, K12}) {
    std::vector<FieldElem> torsion, other;
    if (K.is_rationals()) {
      torsion = {q(K, 1), q(K, -1)};
      other = {q(K, 2), q(K, Rational(1, 2)), q(K, -3)};
    } else {
      FieldElem z = FieldElem::generator(K);
      torsion = {z, z.pow(3), z.pow(4), z.pow(7), q(K, -1)};
      other = {q(K, 2), z + q(K, 1), q(K, Rational(1, 3)) * z};
    }
    std::uniform_int_distribution<std::size_t> pick_t(0, torsion.size() - 1), pick_o(0, other.size() - 1);
    for (int trial = 0; trial < 24; ++trial) {
      int t = 2 + trial % 2;
      std::vector<FieldElem> diag;
      for (int i = 0; i < t; ++i) diag.push_back(torsion[pick_t(rng)]);
      // Two in three stay torsion; the rest get a non-torsion eigenvalue.
      if (trial % 3 == 2) diag[trial % t] = other[pick_o(rng)];
      // Equal neighbours become Jordan blocks when the superdiagonal is 1.
      if (trial % 4 < 2) diag[1] = diag[0];
      MatrixK g = upper_with(diag, q(K, trial % 2));
      out.push_back(trial % 3 == 1 ? g : conjugate(g, random_invertible(K, t, rng)));
    }
  }
  out.push_back(MatrixK::from_rationals(Q, {{0, -1}, {1, 3}}));
  out.push_back(MatrixK::from_rationals(Q, {{0, -1}, {1, 1}}));
  out.push_back(MatrixK::from_rationals(Q, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
  out.push_back(MatrixK::from_rationals(Q, {{2, 0}, {0, Rational(1, 2)}}));
  return out;
}

Outcome height_torsion_dichotomy() {
  Tally tally;
  auto corpus = height_corpus();
  int zeros = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    HeightValue h = canonical_height_glt(corpus[i]);
    bool ut = is_unipotent_torsion(corpus[i]).has_value();
    zeros += ut;
    tally.expect(h.exact_zero == ut, "matrix " + std::to_string(i) + " " + corpus[i].str());
    if (!ut) tally.expect(h.value > h.abs_error, "matrix " + std::to_string(i) + " not separated from 0");
  }
  tally.expect(corpus.size() >= 50, "corpus too small");
  return tally.outcome(std::to_string(corpus.size()) + " matrices, " + std::to_string(zeros) + " unipotent-torsion");
}

Outcome sandwich_inequality() {
  Tally tally;
  int exact = 0;
  for (const auto& g : height_corpus()) {
    if (!breuillard_height(g).exact) continue;
    ++exact;
    SandwichReport r = check_sandwich(g);
    tally.expect(r.holds, "sandwich fails for " + g.str());
    for (const HeightValue* h : {&r.lower, &r.middle, &r.upper})
      tally.expect(h->abs_error <= 1e-9, "abs_error above 1e-9 for " + g.str());
  }
  NumberField Q;
  SandwichReport top = check_sandwich(MatrixK::from_rationals(Q, {{2, 0}, {0, Rational(1, 2)}}));
  std::ostringstream s;
  s.precision(12);
  s << "diag(2,1/2): t*hB = " << top.middle.value << ", hG = " << top.upper.value << ", top equality required";
  tally.expect(top.upper_equality, s.str());
  return tally.outcome(std::to_string(exact) + " matrices with exact hB");
}

Outcome gl2_intersection_example() {
  Tally tally;
  SpecialCurveIntersection r = intersect_special_curves(3, 5);
  tally.expect(r.orders == std::vector<long long>{14, 2}, "orders differ from {14, 2}");

  // Double enumeration: every pair (l, m) of 14th roots of unity with
  // {l^3, l} = {m^5, m}, projected to (trace, det).
  FieldElem z = FieldElem::generator(r.field);
  std::set<std::pair<std::string, std::string>> brute, got;
  for (int i = 0; i < 14; ++i)
    for (int j = 0; j < 14; ++j) {
      FieldElem l = z.pow(i), m = z.pow(j);
      FieldElem a1 = l.pow(3), a2 = m.pow(5);
      if ((a1 == a2 && l == m) || (a1 == m && l == a2)) brute.insert({(a1 + l).str(), (a1 * l).str()});
    }
  for (const auto& p : r.points) got.insert({p.trace.str(), p.det.str()});
  tally.expect(got == brute, "point set differs from the double enumeration");
  tally.expect(got.size() == r.points.size(), "duplicate points");

  int sparse = 0;
  for (const auto& p : r.points) {
    FieldElem lam = z.pow(p.lambda_exponent);
    bool pm1 = lam == q(r.field, 1) || lam == q(r.field, -1);
    bool s = classify_intersection_fiber(3, lam) == IntersectionFiber::SparseTorsionFiber;
    sparse += s;
    tally.expect(s == pm1, "fiber class wrong at lambda = " + lam.str());
  }
  return tally.outcome(std::to_string(r.points.size()) + " points, " + std::to_string(sparse) + " sparse fibers");
}

Outcome borel_strata() {
  Tally tally;
  const std::vector<Rational> grid = {0, 1, -1, Rational(1, 2), Rational(-1, 2), 2};
  long cases = 0, torsion = 0;
  for (int L = 1; L <= 12; ++L) {
    FieldElem z = primitive_root(L);
    const NumberField& K = z.field();
    for (const auto& [i, j, k] : exact_order_triples(L)) {
      FieldElem l = z.pow(i), m = z.pow(j), e = z.pow(k);
      // Oracle diagonal order: the first n with all three powers equal to 1.
      long long d = 1;
      while (!(l.pow(d).is_one() && m.pow(d).is_one() && e.pow(d).is_one())) ++d;
      BorelElement base{FieldElem(K), FieldElem(K), FieldElem(K), l, m, e};
      std::optional<TorsionDiagonal> diag = classify_diagonal(base);
      for (const auto& a : grid)
        for (const auto& b : grid)
          for (const auto& c : grid) {
            BorelElement p = base.with_unipotent(q(K, a), q(K, b), q(K, c));
            auto s = borel_is_torsion_strata(p, diag);
            auto f = borel_is_torsion_bruteforce(p, 2 * d);
            ++cases;
            torsion += f.has_value();
            tally.expect(s == f, "disagreement at L = " + std::to_string(L));
          }
    }
  }
  return tally.outcome(std::to_string(cases) + " elements, " + std::to_string(torsion) + " torsion");
}

Outcome jordan_chevalley_invariants() {
  Tally tally;
  std::mt19937_64 rng(1729);
  NumberField Q;
  NumberField K12 = NumberField::cyclotomic(12);
  for (int trial = 0; trial < 200; ++trial) {
    const NumberField& K = trial % 4 == 3 ? K12 : Q;
    int t = 2 + trial % 2;
    MatrixK g = random_invertible(K, t, rng, trial % 8 != 7);
    // Half of the sample has a repeated eigenvalue with a nontrivial unipotent part.
    if (trial % 2 == 1) {
      std::vector<FieldElem> diag(t, q(K, Rational(1 + trial % 5, 1 + trial % 3)));
      if (t == 3) diag[2] = q(K, -2);
      g = conjugate(upper_with(diag, q(K, 1)), g);
    }
    JordanPair jp = jordan_chevalley(g);
    const MatrixK& s = jp.semisimple_part;
    const MatrixK& u = jp.unipotent_part;
    std::string id = "matrix " + std::to_string(trial);
    tally.expect(u * s == g && s * u == g, id + ": product or commutation");
    KPoly ms = min_poly_matrix(s);
    tally.expect(gcd(ms, ms.derivative()).degree() == 0, id + ": semisimple part not squarefree");
    tally.expect((u - MatrixK::identity(K, t)).pow(t).is_zero(), id + ": unipotent part");
    tally.expect(char_poly(s) == char_poly(g), id + ": characteristic polynomial");
  }
  return tally.outcome("200 matrices");
}

Outcome projective_heights() {
  Tally tally;
  NumberField Q;
  std::mt19937_64 rng(31415);
  std::uniform_int_distribution<long long> c(-10000, 10000);
  for (int trial = 0; trial < 100; ++trial) {
    long long a = c(rng), b = c(rng);
    if (a == 0 && b == 0) b = 1;
    long long g = oracle::gcd_ll(std::llabs(a), std::llabs(b));
    double expected = std::log(static_cast<double>(std::max(std::llabs(a), std::llabs(b)) / g));
    HeightValue h = projective_height(Q, {q(Q, a), q(Q, b)});
    tally.expect(std::fabs(h.value - expected) <= 1e-10, "[" + std::to_string(a) + ":" + std::to_string(b) + "]");
  }
  for (int m : {5, 7, 12}) {
    NumberField K = NumberField::cyclotomic(m);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<FieldElem> mu = {random_small(K, rng), random_small(K, rng), q(K, 1)};
      HeightValue h = projective_height(K, mu);
      for (Rational s : {Rational(7), Rational(-3, 4), Rational(2, 11)}) {
        std::vector<FieldElem> scaled;
        for (const auto& x : mu) scaled.push_back(q(K, s) * x);
        HeightValue hs = projective_height(K, scaled);
        tally.expect(hs.value == h.value && hs.exact_zero == h.exact_zero, "scaling changed the height");
      }
    }
  }
  int roots = 0;
  for (int m = 1; m <= 30; ++m) {
    FieldElem z = primitive_root(m);
    const NumberField& K = z.field();
    for (int k = 0; k < m; ++k) {
      FieldElem w = z.pow(k);
      ++roots;
      tally.expect(weil_height(w).exact_zero, "h(zeta_" + std::to_string(m) + "^" + std::to_string(k) + ") not 0");
      tally.expect(projective_height(K, {q(K, 1), w}).exact_zero, "projective height of a root of unity not 0");
    }
    for (int trial = 0; trial < 3 && K.degree() <= 12; ++trial) {
      FieldElem x = random_small(K, rng);
      if (x.is_zero() || is_root_of_unity(x)) continue;
      HeightValue h = weil_height(x);
      tally.expect(!h.exact_zero && h.value > h.abs_error, "non-torsion element with zero height");
    }
  }
  return tally.outcome("100 rational pairs, " + std::to_string(roots) + " roots of unity");
}

Outcome torsion_cosets() {
  Tally tally;
  std::mt19937_64 rng(161803);
  std::uniform_int_distribution<int> entry(-2, 2);
  auto random_lattice = [&](int t, int r) {
    while (true) {
      ZMatrix b(t, std::vector<BigInt>(r));
      for (auto& row : b)
        for (auto& v : row) v = entry(rng);
      if (r == 0 || is_saturated_basis(b, t)) return SubtorusLattice::make(t, b);
    }
  };
  int nonempty = 0, components = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int t = 1 + trial % 4;
    int r1 = static_cast<int>(rng() % t), r2 = static_cast<int>(rng() % (t + 1));
    int N = 1 + static_cast<int>(rng() % 12);
    std::vector<Rational> h1, h2;
    for (int i = 0; i < t; ++i) {
      h1.emplace_back(static_cast<long long>(rng() % N), N);
      h2.emplace_back(static_cast<long long>(rng() % N), N);
    }
    TorsionCoset c1 = TorsionCoset::make(random_lattice(t, r1), h1);
    TorsionCoset c2 = TorsionCoset::make(random_lattice(t, r2), h2);
    auto out = intersect_torsion_cosets(c1, c2);
    // Denominator bound: N and every translate denominator, times the
    // largest of 12, 6, 2, 1 that keeps the enumeration below 3e5 points.
    BigInt M = N;
    for (const auto& comp : out)
      for (const auto& x : comp.translate) M = lcm(M, x.denominator());
    int rmax = std::max(r1, r2);
    int m = static_cast<int>(M.get_si());
    for (int k : {12, 6, 2, 1})
      if (std::pow(static_cast<double>(m) * k, rmax) <= 3e5) {
        m *= k;
        break;
      }
    auto first = oracle::coset_points(c1.lattice.basis, c1.translate, m);
    auto second = oracle::coset_points(c2.lattice.basis, c2.translate, m);
    std::set<std::vector<Rational>> expected, got;
    for (const auto& y : first)
      if (second.count(y)) expected.insert(y);
    for (const auto& comp : out) {
      auto pts = oracle::coset_points(comp.lattice.basis, comp.translate, m);
      got.insert(pts.begin(), pts.end());
    }
    std::string id = "pair " + std::to_string(trial);
    tally.expect(got == expected, id + ": torsion points differ");
    for (const auto& comp : out)
      tally.expect(c1.contains(comp.translate) && c2.contains(comp.translate), id + ": translate outside a coset");
    if (out.empty()) {
      tally.expect(expected.empty(), id + ": reported empty");
      continue;
    }
    ++nonempty;
    components += static_cast<int>(out.size());
    auto columns = [&](std::initializer_list<const ZMatrix*> ms) {
      std::vector<std::vector<Rational>> rows(t);
      for (const ZMatrix* z : ms)
        for (int i = 0; i < t; ++i)
          for (const auto& v : (*z)[i]) rows[i].emplace_back(v);
      return rows;
    };
    const ZMatrix& b = out[0].lattice.basis;
    int rb = out[0].lattice.rank();
    int r12 = oracle::rank(columns({&c1.lattice.basis, &c2.lattice.basis}));
    tally.expect(rb == r1 + r2 - r12, id + ": lattice rank");
    tally.expect(oracle::rank(columns({&c1.lattice.basis, &b})) == r1, id + ": lattice not in L1");
    tally.expect(oracle::rank(columns({&c2.lattice.basis, &b})) == r2, id + ": lattice not in L2");
    tally.expect(rb == 0 || is_saturated_basis(b, t), id + ": lattice not saturated");
  }
  return tally.outcome("100 pairs, " + std::to_string(nonempty) + " nonempty, " + std::to_string(components) +
                       " components");
}

Outcome factorization_round_trip() {
  Tally tally;
  std::mt19937_64 rng(577);
  std::uniform_int_distribution<int> coeff(-6, 6), deg(1, 6), count(1, 4);
  int built = 0;
  while (built < 200) {
    QPoly f{1};
    for (int k = count(rng); k > 0; --k) {
      QPoly g;
      do {
        std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& a : c) a = coeff(rng);
        if (c.back().is_zero()) c.back() = 1;
        g = QPoly(c);
      } while (!is_irreducible(g));
      f *= g;
    }
    f *= QPoly{Rational(1 + built % 5, 1 + built % 3)};
    if (f.is_zero()) continue;
    ++built;
    tally.expect(factor_rational(f).expand() == f, "random product " + f.str('x'));
  }
  for (int m = 1; m <= 105; ++m) {
    QPoly phi = cyclotomic(m);
    Factorization fac = factor_rational(phi);
    tally.expect(fac.expand() == phi && fac.factors.size() == 1, "Phi_" + std::to_string(m));
    QPoly xm1 = pow(QPoly::x(), m) - QPoly{1};
    tally.expect(factor_rational(xm1).expand() == xm1, "x^" + std::to_string(m) + " - 1");
  }
  return tally.outcome("200 products, Phi_m for m <= 105");
}

Outcome sl2_fibers() {
  Tally tally;
  for (int m = 3; m <= 30; ++m) {
    FieldElem z = primitive_root(m);
    tally.expect(sl2_fiber_classify(z + z.inverse()) == Sl2Fiber::TorsionDense, "m = " + std::to_string(m));
  }
  NumberField Q;
  tally.expect(sl2_fiber_classify(q(Q, 2)) == Sl2Fiber::CentralUnipotentFiber, "tau = 2");
  tally.expect(sl2_fiber_classify(q(Q, -2)) == Sl2Fiber::CentralUnipotentFiber, "tau = -2");
  tally.expect(sl2_fiber_classify(q(Q, 3)) == Sl2Fiber::NoTorsion, "tau = 3");
  tally.expect(sl2_fiber_classify(q(Q, Rational(5, 2))) == Sl2Fiber::NoTorsion, "tau = 5/2");
  NumberField K = NumberField::create(QPoly{-2, 0, 1}, true);
  Sl2Fiber r = sl2_fiber_classify(FieldElem::generator(K));
  tally.expect(r == Sl2Fiber::NoTorsion, "tau = sqrt 2 (a^2 = 2) expected NoTorsion, got " + to_string(r));
  return tally.outcome("28 cyclotomic traces and 5 fixed traces");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const double none = 0;
  std::vector<Criterion> criteria = {
      {1, "canonical height vanishes exactly on unipotent torsion", 10, height_torsion_dichotomy},
      {2, "sandwich inequality and its top equality case", 10, sandwich_inequality},
      {3, "GL2 special curve intersection (3, 5)", 5, gl2_intersection_example},
      {4, "Borel strata against brute-force powers", 60, borel_strata},
      {5, "Jordan-Chevalley invariants", none, jordan_chevalley_invariants},
      {6, "projective height correctness", none, projective_heights},
      {7, "torsion coset intersection", none, torsion_cosets},
      {8, "factorization round trip", none, factorization_round_trip},
      {9, "SL2 fiber classification", none, sl2_fibers},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail += ", over the time limit";
    }
    failed += !o.pass;
    std::printf("criterion %d %s: %s (%s, %.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
