#pragma once

// Number fields K = Q[x]/(f) for monic irreducible integer f, with elements
// stored as coefficient vectors in the power basis 1, a, ..., a^(d-1).

#include <boost/container/small_vector.hpp>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "canht/qpoly.hpp"
#include "canht/roots.hpp"

namespace canht {

namespace detail {
struct FieldData;
}

class NumberField {
 public:
  // Q itself, presented as Q[x]/(x - 1).
  NumberField();

  // Rejects non-monic or non-integral f (InvalidDefiningPolynomial) and
  // reducible f (ReducibleDefiningPolynomial).
  static NumberField create(const QPoly& f, bool monogenic);
  // Q(zeta_m) presented by Phi_m. Shared handle per m.
  static NumberField cyclotomic(int m);

  int degree() const noexcept;
  const QPoly& defining_poly() const noexcept;
  bool monogenic() const noexcept;
  // m when built by cyclotomic(m), 0 otherwise.
  int cyclotomic_order() const noexcept;
  bool is_rationals() const noexcept { return degree() == 1; }

  friend bool operator==(const NumberField& a, const NumberField& b) noexcept;

  const detail::FieldData& data() const noexcept { return *data_; }

 private:
  explicit NumberField(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

class FieldElem {
 public:
  // Zero of K.
  explicit FieldElem(const NumberField& K);
  FieldElem(const NumberField& K, const Rational& c);
  // Any polynomial in the generator; reduced modulo the defining polynomial.
  FieldElem(const NumberField& K, const QPoly& p);

  FieldElem(const FieldElem& other);
  FieldElem(FieldElem&&) noexcept;
  FieldElem& operator=(const FieldElem& other);
  FieldElem& operator=(FieldElem&&) noexcept;
  ~FieldElem();

  static FieldElem generator(const NumberField& K);
  // Expression in the generator symbol `a` with + - * / ^ and parentheses,
  // e.g. "a^2 - 1/2" or "3*(a+1)^-1". Throws ParseError.
  static FieldElem parse(const NumberField& K, std::string_view text);

  const NumberField& field() const noexcept { return K_; }
  Rational coeff(int i) const;
  QPoly to_poly() const;
  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  // Some element of Q.
  bool is_rational() const noexcept;

  FieldElem inverse() const;
  // Negative exponents go through the inverse.
  FieldElem pow(long long n) const;

  FieldElem& operator+=(const FieldElem& rhs);
  FieldElem& operator-=(const FieldElem& rhs);
  FieldElem& operator*=(const FieldElem& rhs);
  FieldElem& operator/=(const FieldElem& rhs);
  FieldElem operator-() const;
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
  friend bool operator==(const FieldElem& a, const FieldElem& b);

  // Canonical text in `a`, highest power first; parse(K, str()) == *this.
  std::string str() const;

 private:
  struct Big;
  using SmallVec = boost::container::small_vector<std::int64_t, 12>;

  void set_from_poly(const QPoly& p);
  void to_big(Big& out) const;
  void assign_big(Big&& b);
  static bool mul_small(const FieldElem& a, const FieldElem& b, FieldElem& out);
  static void mul_big(const FieldElem& a, const FieldElem& b, FieldElem& out);
  bool add_small(const FieldElem& rhs, int sign);

  NumberField K_;
  // Value is num_[i] / den_ per coefficient, gcd(all num, den) = 1, den > 0,
  // unless big_ is set, in which case big_ holds the value and num_ is empty.
  SmallVec num_;
  std::int64_t den_ = 1;
  std::unique_ptr<Big> big_;
};

// Complex disk containing the image of an element under one embedding.
struct ComplexBall {
  std::complex<double> center;
  double radius = 0.0;
};

// Certified images of the generator, one per complex embedding, in the
// order returned by complex_roots.
std::vector<RootBox> embeddings(const NumberField& K, double eps);

// Image of a under the embedding a -> root, with propagated error.
ComplexBall evaluate(const FieldElem& a, const RootBox& root);
std::vector<ComplexBall> evaluate_all(const FieldElem& a, double eps);

// p(a) computed exactly in K.
FieldElem eval_at(const QPoly& p, const FieldElem& a);

// Matrix of x -> a*x on the power basis, column j = coordinates of a*a^j.
std::vector<std::vector<Rational>> multiplication_matrix(const FieldElem& a);
Rational norm(const FieldElem& a);

QPoly min_poly_over_Q(const FieldElem& a);

// Exact multiplicative order when a is a root of unity.
std::optional<int> is_root_of_unity(const FieldElem& a);

// Polynomials in one variable with coefficients in a single number field.
class KPoly {
 public:
  explicit KPoly(const NumberField& K) : K_(K) {}
  KPoly(const NumberField& K, std::vector<FieldElem> coeffs);
  // Coefficients of p taken as constants of K.
  KPoly(const NumberField& K, const QPoly& p);

  static KPoly x(const NumberField& K);

  const NumberField& field() const noexcept { return K_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const FieldElem& lc() const;
  FieldElem operator[](int i) const;
  const std::vector<FieldElem>& coeffs() const noexcept { return c_; }

  FieldElem eval(const FieldElem& x) const;
  KPoly derivative() const;
  KPoly monic() const;
  // p(x + s)
  KPoly shifted(const FieldElem& s) const;
  // Defined when every coefficient is rational.
  std::optional<QPoly> to_qpoly() const;

  KPoly& operator+=(const KPoly& rhs);
  KPoly& operator-=(const KPoly& rhs);
  friend KPoly operator+(KPoly a, const KPoly& b) { return a += b; }
  friend KPoly operator-(KPoly a, const KPoly& b) { return a -= b; }
  friend KPoly operator*(const KPoly& a, const KPoly& b);
  friend bool operator==(const KPoly& a, const KPoly& b);

  std::string str(char var = 'x') const;

 private:
  void trim();
  NumberField K_;
  std::vector<FieldElem> c_;
};

std::pair<KPoly, KPoly> divrem(const KPoly& f, const KPoly& g);
// Monic gcd; gcd(0, 0) is rejected.
KPoly gcd(const KPoly& f, const KPoly& g);
KPoly lcm(const KPoly& f, const KPoly& g);
KPoly squarefree_part(const KPoly& f);
std::vector<std::pair<KPoly, int>> squarefree_decomposition(const KPoly& f);

// N(chi)(y) = Res_x(f(x), chi_x(y)): the product of the conjugates of chi
// over all embeddings of K.
QPoly norm_poly(const KPoly& chi);

// Roots of chi lying in K with multiplicities, by Trager's norm method.
// Ordered by their canonical text.
std::vector<std::pair<FieldElem, int>> roots_in_field(const KPoly& chi);

}  // namespace canht
