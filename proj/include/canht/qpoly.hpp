#pragma once

// Dense univariate polynomials over Q, lowest-degree coefficient first.

#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "canht/rational.hpp"

namespace canht {

class QPoly {
 public:
  QPoly() = default;
  QPoly(std::initializer_list<Rational> coeffs);
  explicit QPoly(std::vector<Rational> coeffs);

  static QPoly constant(const Rational& c);
  static QPoly x();
  static QPoly monomial(const Rational& c, int degree);

  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back().is_one(); }
  const Rational& lc() const;
  // Coefficient of x^i; zero beyond the degree.
  Rational operator[](int i) const;
  std::span<const Rational> coeffs() const noexcept { return c_; }

  Rational eval(const Rational& x) const;
  QPoly derivative() const;
  QPoly monic() const;
  QPoly scaled(const Rational& c) const;
  // p(x) -> x^deg p(1/x)
  QPoly reversed() const;
  bool has_integer_coeffs() const;

  QPoly& operator+=(const QPoly& rhs);
  QPoly& operator-=(const QPoly& rhs);
  QPoly& operator*=(const QPoly& rhs);
  QPoly operator-() const;
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly&, const QPoly&) = default;

  // Human-readable form in the variable `var`, highest degree first.
  std::string str(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// f = q*g + r with deg r < deg g. Throws DivisionByZero if g == 0.
std::pair<QPoly, QPoly> divrem(const QPoly& f, const QPoly& g);
QPoly pow(const QPoly& f, unsigned n);

// Monic gcd; gcd(0, 0) is rejected.
QPoly gcd(const QPoly& f, const QPoly& g);
// Monic lcm of two nonzero polynomials.
QPoly lcm(const QPoly& f, const QPoly& g);
QPoly squarefree_part(const QPoly& f);
// Yun decomposition: monic squarefree, pairwise coprime s_i with f = lc * prod s_i^i.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& f);

// res(f, g) = lc(f)^deg g * prod g(alpha) over roots alpha of f.
Rational resultant(const QPoly& f, const QPoly& g);

// Primitive integer model: f = content * primitive, primitive has integer
// coefficients with gcd 1 and positive leading coefficient.
std::pair<Rational, std::vector<BigInt>> primitive_part(const QPoly& f);
QPoly from_integers(std::span<const BigInt> coeffs);

QPoly cyclotomic(int m);
// m with f == Phi_m, or 0 when f is not cyclotomic. f must be monic.
int cyclotomic_index(const QPoly& f);
// Euler's totient.
long long euler_phi(long long m);

}  // namespace canht
