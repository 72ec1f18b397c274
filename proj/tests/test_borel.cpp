#include <numeric>
#include <random>

#include "canht/borel.hpp"
#include "canht/error.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace canht;
using canht::testing::exact_order_triples;
using canht::testing::primitive_root;
using canht::testing::random_small;

namespace {

NumberField Q;

FieldElem q(const NumberField& K, Rational r) { return FieldElem(K, r); }

BorelElement unipotent(const NumberField& K, Rational a, Rational b, Rational c) {
  FieldElem one = q(K, 1);
  return BorelElement(q(K, a), q(K, b), q(K, c), one, one, one);
}

// Order of x by repeated multiplication, up to `bound`; 0 if larger.
long long order_by_powers(const FieldElem& x, long long bound) {
  FieldElem y = x;
  for (long long n = 1; n <= bound; ++n) {
    if (y.is_one()) return n;
    y *= x;
  }
  return 0;
}

const std::vector<Rational> kCoordinateGrid = {0, 1, -1, Rational(1, 2), Rational(-1, 2), 2};

// Strata agree with the brute-force power oracle on every diagonal of
// common order L and every coordinate triple from the grid.
int grid_disagreements(int L) {
  FieldElem z = primitive_root(L);
  const NumberField& K = z.field();
  int bad = 0;
  for (const auto& [i, j, k] : exact_order_triples(L)) {
    FieldElem l = z.pow(i), m = z.pow(j), e = z.pow(k);
    long long n_max = 2 * std::lcm(order_by_powers(l, L), std::lcm(order_by_powers(m, L), order_by_powers(e, L)));
    BorelElement base{FieldElem(K), FieldElem(K), FieldElem(K), l, m, e};
    auto diag = classify_diagonal(base);
    for (const auto& a : kCoordinateGrid)
      for (const auto& b : kCoordinateGrid)
        for (const auto& c : kCoordinateGrid) {
          BorelElement p = base.with_unipotent(q(K, a), q(K, b), q(K, c));
          if (borel_is_torsion_strata(p, diag) != borel_is_torsion_bruteforce(p, n_max)) ++bad;
        }
  }
  return bad;
}

}  // namespace

TEST_CASE("borel_mul examples") {
  BorelElement id = BorelElement::identity(Q);
  CHECK(borel_mul(id, id).is_identity());
  BorelElement p = unipotent(Q, 1, 0, 0), r = unipotent(Q, 0, 0, 1);
  CHECK(borel_mul(p, r) == unipotent(Q, 1, 1, 1));
  CHECK(borel_mul(r, p) == unipotent(Q, 1, 0, 1));
  CHECK_THROWS_AS(borel_mul(id, BorelElement::identity(NumberField::cyclotomic(3))), DomainError);
  CHECK_THROWS_AS(BorelElement(q(Q, 0), q(Q, 0), q(Q, 0), q(Q, 1), q(Q, 0), q(Q, 1)), DomainError);
  NumberField K3 = NumberField::cyclotomic(3);
  FieldElem z = FieldElem::generator(K3);
  BorelElement d{FieldElem(K3), FieldElem(K3), FieldElem(K3), z, q(K3, 1), z};
  BorelElement w = d.with_unipotent(q(K3, 1), z, q(K3, 2));
  CHECK(w == BorelElement(q(K3, 1), z, q(K3, 2), z, q(K3, 1), z));
  CHECK(w.theta() == z);
  CHECK(w.eta() == z.inverse());
  CHECK_THROWS_AS(d.with_unipotent(q(Q, 1), q(Q, 0), q(Q, 0)), DomainError);
}

TEST_CASE("borel_mul agrees with the matrix product") {
  NumberField K = NumberField::cyclotomic(6);
  std::mt19937_64 rng(83);
  auto nonzero = [&] {
    FieldElem x = random_small(K, rng);
    while (x.is_zero()) x = random_small(K, rng);
    return x;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    BorelElement p(random_small(K, rng), random_small(K, rng), random_small(K, rng), nonzero(), nonzero(), nonzero());
    BorelElement r(random_small(K, rng), random_small(K, rng), random_small(K, rng), nonzero(), nonzero(), nonzero());
    BorelElement pr = borel_mul(p, r);
    REQUIRE(pr.to_matrix() == p.to_matrix() * r.to_matrix());
    CHECK(BorelElement::from_matrix(pr.to_matrix()) == pr);
    if (trial % 10 == 0) {
      CHECK(borel_mul(p, borel_inverse(p)).is_identity());
      CHECK(pr.theta() == pr.lambda() * pr.mu().inverse());
      CHECK(pr.eta() == pr.mu() * pr.epsilon().inverse());
    }
  }
}

TEST_CASE("borel_pow") {
  CHECK(borel_pow(BorelElement::identity(Q), 7).is_identity());
  CHECK(borel_pow(unipotent(Q, 1, 0, 0), 5) == unipotent(Q, 5, 0, 0));
  NumberField K3 = NumberField::cyclotomic(3);
  FieldElem z = FieldElem::generator(K3), one = q(K3, 1);
  BorelElement p(one, FieldElem(K3), FieldElem(K3), z, one, one);
  CHECK(borel_pow(p, 2).a() == one + z);
  CHECK(borel_pow(p, 3).a().is_zero());
  CHECK(borel_pow(p, 3).is_identity());
  CHECK_THROWS_AS(borel_pow(p, 0), DomainError);

  NumberField K12 = NumberField::cyclotomic(12);
  std::mt19937_64 rng(89);
  BorelElement g(random_small(K12, rng), random_small(K12, rng), random_small(K12, rng), FieldElem::generator(K12),
                 q(K12, 2), q(K12, Rational(-1, 3)));
  BorelElement acc = g;
  for (long long n = 1; n <= 20; ++n) {
    CHECK(borel_pow(g, n) == acc);
    CHECK(borel_pow(g, n).to_matrix() == g.to_matrix().pow(n));
    acc = borel_mul(acc, g);
  }
}

TEST_CASE("borel_is_torsion_bruteforce examples") {
  CHECK(borel_is_torsion_bruteforce(BorelElement::identity(Q), 5) == 1);
  NumberField K3 = NumberField::cyclotomic(3);
  FieldElem z = FieldElem::generator(K3), one = q(K3, 1);
  CHECK(borel_is_torsion_bruteforce(BorelElement(one, FieldElem(K3), FieldElem(K3), z, one, one), 10) == 3);
  CHECK_FALSE(borel_is_torsion_bruteforce(unipotent(Q, 1, 0, 0), 200).has_value());
  CHECK_FALSE(borel_is_torsion_bruteforce(BorelElement(one, FieldElem(K3), FieldElem(K3), z, one, one), 2).has_value());
}

TEST_CASE("borel_is_torsion_strata examples") {
  CHECK(borel_is_torsion_strata(BorelElement::identity(Q)) == 1);
  NumberField K3 = NumberField::cyclotomic(3);
  FieldElem z = FieldElem::generator(K3), one = q(K3, 1), zero(K3);

  BorelElement s1(q(K3, 2), q(K3, -1), zero, z, one, one);
  REQUIRE(classify_diagonal(s1).has_value());
  CHECK(classify_diagonal(s1)->stratum == BorelStratum::S1);
  CHECK(borel_is_torsion_strata(s1) == 3);
  CHECK_FALSE(borel_is_torsion_strata(BorelElement(q(K3, 2), q(K3, -1), one, z, one, one)).has_value());

  // (1 - zeta_3) * 1 - 1 * 1 = -zeta_3 is nonzero.
  BorelElement s3(one, one, one, z, one, z);
  CHECK(classify_diagonal(s3)->stratum == BorelStratum::S3);
  CHECK_FALSE(borel_is_torsion_strata(s3).has_value());
  CHECK_FALSE(borel_is_torsion_bruteforce(s3, 60).has_value());
  BorelElement s3t(one, (one - z).inverse(), one, z, one, z);
  CHECK(borel_is_torsion_strata(s3t) == 3);
  CHECK(borel_is_torsion_bruteforce(s3t, 6) == 3);

  CHECK_FALSE(borel_is_torsion_strata(BorelElement(zero, zero, zero, q(K3, 2), one, one)).has_value());
  CHECK_FALSE(classify_diagonal(BorelElement(zero, zero, zero, one, one, q(K3, Rational(1, 2)))).has_value());
}

TEST_CASE("strata partition the root-of-unity diagonals") {
  for (int L = 1; L <= 12; ++L) {
    FieldElem z = primitive_root(L);
    const NumberField& K = z.field();
    for (const auto& [i, j, k] : exact_order_triples(L)) {
      FieldElem l = z.pow(i), m = z.pow(j), e = z.pow(k);
      // The defining equalities among lambda, mu, epsilon.
      bool s0 = l == m && m == e;
      bool s1 = !(l == m) && m == e;
      bool s2 = !(e == l) && l == m;
      bool s3 = !(m == e) && e == l;
      bool s4 = !(l == m) && !(m == e) && !(e == l);
      REQUIRE(s0 + s1 + s2 + s3 + s4 == 1);
      auto d = classify_diagonal(BorelElement(FieldElem(K), FieldElem(K), FieldElem(K), l, m, e));
      REQUIRE(d.has_value());
      BorelStratum expected = s0 ? BorelStratum::S0
                              : s1 ? BorelStratum::S1
                              : s2 ? BorelStratum::S2
                              : s3 ? BorelStratum::S3
                                   : BorelStratum::S4;
      CHECK(d->stratum == expected);
      CHECK(d->order == L);
    }
  }
}

TEST_CASE("strata agree with brute force on small diagonal orders") {
  for (int L = 1; L <= 6; ++L) CHECK(grid_disagreements(L) == 0);
}

TEST_CASE("torsion is closed under inversion and diagonal torsion conjugation") {
  for (int L : {2, 3, 4, 6}) {
    FieldElem z = primitive_root(L);
    const NumberField& K = z.field();
    FieldElem zero(K);
    BorelElement d(zero, zero, zero, z, z.pow(L - 1), q(K, 1));
    BorelElement d_inv = borel_inverse(d);
    for (const auto& [i, j, k] : exact_order_triples(L)) {
      for (const auto& a : kCoordinateGrid)
        for (const auto& c : kCoordinateGrid) {
          BorelElement p(q(K, a), q(K, 1), q(K, c), z.pow(i), z.pow(j), z.pow(k));
          auto n = borel_is_torsion_strata(p);
          CHECK(borel_is_torsion_strata(borel_inverse(p)) == n);
          CHECK(borel_is_torsion_strata(borel_mul(borel_mul(d, p), d_inv)) == n);
        }
    }
  }
}

TEST_CASE("borel_closure_equation") {
  // The two factors satisfy the equation but their product does not.
  BorelElement p = unipotent(Q, 1, 0, 0), r = unipotent(Q, 0, 0, 1);
  CHECK(borel_closure_equation(p));
  CHECK(borel_closure_equation(r));
  CHECK_FALSE(borel_closure_equation(borel_mul(p, r)));
  NumberField K4 = NumberField::cyclotomic(4);
  FieldElem i = FieldElem::generator(K4), one = q(K4, 1);
  // On lambda = epsilon the equation is the S3 torsion condition.
  BorelElement s(one + i, (one + i) * (one - i).inverse(), one, i, one, i);
  CHECK(borel_closure_equation(s));
  CHECK(borel_is_torsion_strata(s) == 4);
}
