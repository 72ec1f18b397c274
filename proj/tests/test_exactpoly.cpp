#include <cmath>
#include <random>

#include "canht/error.hpp"
#include "canht/factor.hpp"
#include "canht/qpoly.hpp"
#include "canht/roots.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace canht;

namespace {

QPoly X() { return QPoly::x(); }
QPoly C(long long c) { return QPoly::constant(c); }

Rational random_rational(std::mt19937_64& rng, bool huge) {
  std::uniform_int_distribution<long long> small(-1000, 1000);
  if (!huge) {
    long long d = small(rng);
    return Rational(small(rng), d == 0 ? 1 : d);
  }
  std::uniform_int_distribution<long long> big(-(1LL << 62), 1LL << 62);
  long long d = big(rng);
  return Rational(big(rng), d == 0 ? 7 : d);
}

}  // namespace

TEST_CASE("rational fast path agrees with GMP") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 4000; ++i) {
    Rational a = random_rational(rng, i % 3 == 0), b = random_rational(rng, i % 5 == 0);
    mpq_class qa = a.to_mpq(), qb = b.to_mpq();
    CHECK((a + b).to_mpq() == qa + qb);
    CHECK((a - b).to_mpq() == qa - qb);
    CHECK((a * b).to_mpq() == qa * qb);
    if (!b.is_zero()) CHECK((a / b).to_mpq() == qa / qb);
    CHECK(((a <=> b) < 0) == (qa < qb));
    // Products of large values overflow into GMP and demote back when small.
    if (!b.is_zero()) CHECK(a * b * b.inverse() == a);
  }
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse(" -6/4 ") == Rational(-3, 2));
  CHECK(Rational::parse("12345678901234567890123/3").str() == "4115226300411522630041");
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("a"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/-2"), ParseError);
  CHECK(Rational(7, 3).frac() == Rational(1, 3));
  CHECK(Rational(-7, 3).frac() == Rational(2, 3));
  CHECK(Rational(-7, 3).floor() == -3);
}

TEST_CASE("poly_arith") {
  CHECK((X() + C(1)) + (X() - C(1)) == QPoly{0, 2});
  CHECK((X() - C(1)) * (X() + C(1)) == QPoly{-1, 0, 1});
  auto [q, r] = divrem(QPoly{-1, 0, 1}, X() - C(1));
  CHECK(q == X() + C(1));
  CHECK(r.is_zero());
  CHECK_THROWS_AS(divrem(X(), QPoly()), DomainError);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> a(7), b(4);
    for (auto& c : a) c = coeff(rng);
    for (auto& c : b) c = Rational(coeff(rng), 1 + (trial % 3));
    b.back() = 3;
    QPoly f(a), g(b);
    auto [qq, rr] = divrem(f, g);
    CHECK(qq * g + rr == f);
    CHECK(rr.degree() < g.degree());
  }
}

TEST_CASE("poly_gcd") {
  CHECK(gcd(QPoly{-1, 0, 1}, X() - C(1)) == X() - C(1));
  CHECK(gcd(QPoly{1, 0, 1}, QPoly{-1, 0, 1}) == C(1));
  QPoly a = pow(X() - C(2), 2) * (X() + C(3));
  QPoly b = (X() - C(2)) * (X() + C(5));
  QPoly g = gcd(a, b);
  // Division oracle: g divides both and the cofactors share no root.
  auto [qa, ra] = divrem(a, g);
  auto [qb, rb] = divrem(b, g);
  CHECK(ra.is_zero());
  CHECK(rb.is_zero());
  CHECK(g == X() - C(2));
  CHECK(qa.eval(-5) != Rational());
  CHECK(qb.eval(2) != Rational());
  CHECK(qb.eval(-3) != Rational());
  CHECK_THROWS_AS(gcd(QPoly(), QPoly()), DomainError);
}

TEST_CASE("squarefree_part") {
  CHECK(squarefree_part(pow(X() - C(1), 3)) == X() - C(1));
  CHECK(squarefree_part(QPoly{-1, 0, 1}) == QPoly{-1, 0, 1});
  QPoly s = QPoly{-2, 0, 1};
  QPoly f = pow(s, 2) * (X() - C(1));
  QPoly expected = s * (X() - C(1));
  CHECK(squarefree_part(f) == expected);
  // Expansion oracle: expected^2 / (x - 1) reproduces f.
  CHECK(divrem(expected * expected, X() - C(1)).first == f);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    QPoly p{coeff(rng), coeff(rng), 1};
    QPoly q{coeff(rng), 1};
    QPoly h = pow(p, 2) * pow(q, 3) * QPoly{coeff(rng) | 1, 2};
    QPoly sf = squarefree_part(h);
    CHECK(divrem(h, sf).second.is_zero());
    CHECK(gcd(sf, sf.derivative()) == C(1));
  }
}

TEST_CASE("factor_rational examples") {
  auto fac = factor_rational(QPoly{-1, 0, 0, 0, 1});
  REQUIRE(fac.factors.size() == 3);
  CHECK(fac.factors[0] == std::pair{X() - C(1), 1});
  CHECK(fac.factors[1] == std::pair{X() + C(1), 1});
  CHECK(fac.factors[2] == std::pair{QPoly{1, 0, 1}, 1});
  CHECK(fac.expand() == QPoly{-1, 0, 0, 0, 1});
  // Oracle: the degree-2 factor has no rational root, so it is irreducible.
  CHECK_FALSE(oracle::has_rational_root(fac.factors[2].first));

  auto f2 = factor_rational(QPoly{-2, 0, 1});
  REQUIRE(f2.factors.size() == 1);
  CHECK(f2.factors[0].first == QPoly{-2, 0, 1});
  CHECK_FALSE(oracle::has_rational_root(QPoly{-2, 0, 1}));

  QPoly phi12{1, 0, -1, 0, 1};
  CHECK(is_irreducible(phi12));
  CHECK_FALSE(oracle::has_rational_root(phi12));
  CHECK_FALSE(oracle::has_small_quadratic_factor(phi12, 10));
}

TEST_CASE("factor_rational content and multiplicities") {
  QPoly f = pow(QPoly{1, 0, 1}, 2) * pow(X() - C(3), 3) * C(-6);
  auto fac = factor_rational(f.scaled(Rational(1, 5)));
  CHECK(fac.content == Rational(-6, 5));
  CHECK(fac.expand() == f.scaled(Rational(1, 5)));
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0] == std::pair{X() - C(3), 3});
  CHECK(fac.factors[1] == std::pair{QPoly{1, 0, 1}, 2});
  // x divides
  auto fx = factor_rational(X() * QPoly{-2, 0, 1});
  REQUIRE(fx.factors.size() == 2);
  CHECK(fx.factors[0].first == X());
}

TEST_CASE("factor_rational: Swinnerton-Dyer style polynomial splits into many modular factors") {
  // (x^2-2)(x^2-3) factors... and x^4 - 10x^2 + 1 is irreducible yet splits
  // into linear/quadratic factors mod every prime.
  QPoly sd{1, 0, -10, 0, 1};
  CHECK(is_irreducible(sd));
  QPoly g = QPoly{-2, 0, 1} * QPoly{-3, 0, 1} * sd;
  auto fac = factor_rational(g);
  CHECK(fac.factors.size() == 3);
  CHECK(fac.expand() == g);
}

TEST_CASE("factor_rational round trip on random products") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coeff(-5, 5), deg(1, 4), count(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    QPoly f = C(1);
    for (int k = count(rng); k > 0; --k) {
      std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& a : c) a = coeff(rng);
      c.back() = coeff(rng) == 0 ? 1 : 2;
      f *= QPoly(c);
    }
    if (f.is_zero()) continue;
    auto fac = factor_rational(f);
    CHECK(fac.expand() == f);
    for (const auto& [g, e] : fac.factors) {
      CHECK(g.is_monic());
      if (g.degree() >= 2) CHECK_FALSE(oracle::has_rational_root(g));
    }
  }
}

TEST_CASE("prime selection is the smallest good prime >= 5") {
  // x^2 + 1 mod 5 is squarefree, lc 1.
  CHECK(detail::choose_prime({1, 0, 1}) == 5);
  // 5 divides the leading coefficient, 7 does not.
  CHECK(detail::choose_prime({1, 0, 5}) == 7);
  // x^2 - 5 is not squarefree mod 5.
  CHECK(detail::choose_prime({-5, 0, 1}) == 7);
}

TEST_CASE("resultant") {
  CHECK(resultant(X() - C(2), X() - C(3)) == Rational(-1));
  CHECK(resultant(QPoly{-2, 0, 1}, QPoly{-3, 0, 1}) == Rational(1));
  QPoly f{3, -1, 0, 2};
  CHECK(resultant(f, f).is_zero());

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coeff(-6, 6), deg(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> a(static_cast<std::size_t>(deg(rng)) + 1), b(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& c : a) c = coeff(rng);
    for (auto& c : b) c = Rational(coeff(rng), 2);
    a.back() = 1 + trial % 3;
    b.back() = Rational(-1, 3);
    QPoly p(a), q(b);
    if (trial % 4 == 0) {
      p *= X() - C(1);
      q *= X() - C(1);
    }
    Rational r = resultant(p, q);
    CHECK(r == oracle::sylvester_resultant(p, q));
    CHECK(r.is_zero() == (gcd(p, q).degree() >= 1));
  }
}

TEST_CASE("cyclotomic") {
  CHECK(cyclotomic(1) == X() - C(1));
  CHECK(cyclotomic(4) == QPoly{1, 0, 1});
  CHECK(cyclotomic(12) == oracle::cyclotomic_by_division(12));
  CHECK(cyclotomic(12) == QPoly{1, 0, -1, 0, 1});
  for (int m = 1; m <= 60; ++m) {
    QPoly phi = cyclotomic(m);
    CHECK(phi.degree() == euler_phi(m));
    CHECK(divrem(QPoly::monomial(1, m) - C(1), phi).second.is_zero());
    CHECK(cyclotomic_index(phi) == m);
  }
  CHECK(cyclotomic(105) == oracle::cyclotomic_by_division(105));
  CHECK(cyclotomic_index(QPoly{-1, -1, 1}) == 0);
  CHECK(cyclotomic_index(QPoly{1, 1, 1, 1}) == 0);
}

TEST_CASE("complex_roots") {
  auto r = complex_roots(QPoly{1, 0, 1}, 1e-12);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0].center - std::complex<double>(0, -1)) <= 1e-12);
  CHECK(std::abs(r[1].center - std::complex<double>(0, 1)) <= 1e-12);
  for (const auto& b : r) CHECK(b.radius <= 1e-12);

  auto g = complex_roots(QPoly{-1, -1, 1}, 1e-12);
  REQUIRE(g.size() == 2);
  CHECK(std::abs(g[0].center.real() - (1 - std::sqrt(5.0)) / 2) <= 1e-12);
  CHECK(std::abs(g[1].center.real() - (1 + std::sqrt(5.0)) / 2) <= 1e-12);

  auto z5 = complex_roots(cyclotomic(5), 1e-12);
  REQUIRE(z5.size() == 4);
  for (const auto& b : z5) CHECK(std::abs(std::abs(b.center) - 1.0) <= 1e-10);

  CHECK_THROWS_AS(complex_roots(pow(X() - C(1), 2), 1e-12), DomainError);
}

TEST_CASE("complex_roots invariants") {
  std::vector<QPoly> polys = {cyclotomic(71), cyclotomic(105), QPoly{-1, 0, 0, 0, 0, 0, 0, 2},
                              QPoly{1, 0, -10, 0, 1}, QPoly{Rational(1, 3), 7, -1, 0, 5}};
  for (const auto& f : polys) {
    auto boxes = complex_roots(f, 1e-12);
    CHECK(static_cast<int>(boxes.size()) == f.degree());
    std::complex<double> sum = 0;
    double radii = 0;
    for (const auto& b : boxes) {
      sum += b.center;
      radii += b.radius;
      CHECK(b.radius <= 1e-12);
    }
    double expected = (-f[f.degree() - 1] / f.lc()).to_double();
    CHECK(std::abs(sum - expected) <= radii + 1e-12);
    for (std::size_t i = 0; i < boxes.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        CHECK(std::abs(boxes[i].center - boxes[j].center) > boxes[i].radius + boxes[j].radius);
    // Conjugate symmetry.
    for (const auto& b : boxes) {
      double best = 1e9;
      for (const auto& c : boxes) best = std::min(best, std::abs(std::conj(b.center) - c.center));
      CHECK(best <= 1e-11);
    }
  }
}
