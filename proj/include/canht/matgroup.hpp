#pragma once

// Square matrices over a number field and the structure of single elements
// of GL_t: characteristic and minimal polynomials, the multiplicative
// Jordan decomposition, and torsion tests.

#include <optional>
#include <string>
#include <vector>

#include "canht/numfield.hpp"

namespace canht {

class MatrixK {
 public:
  // Zero matrix.
  MatrixK(const NumberField& K, int t);
  MatrixK(const NumberField& K, std::vector<std::vector<FieldElem>> rows);

  static MatrixK identity(const NumberField& K, int t);
  static MatrixK diagonal(const NumberField& K, const std::vector<FieldElem>& d);
  static MatrixK from_rationals(const NumberField& K, const std::vector<std::vector<Rational>>& rows);

  const NumberField& field() const noexcept { return K_; }
  int size() const noexcept { return t_; }
  const FieldElem& operator()(int i, int j) const { return e_[index(i, j)]; }
  FieldElem& operator()(int i, int j) { return e_[index(i, j)]; }

  FieldElem trace() const;
  FieldElem det() const;
  // Throws SingularMatrix.
  MatrixK inverse() const;
  MatrixK pow(long long n) const;
  bool is_identity() const;
  bool is_zero() const;

  MatrixK& operator+=(const MatrixK& rhs);
  MatrixK& operator-=(const MatrixK& rhs);
  friend MatrixK operator+(MatrixK a, const MatrixK& b) { return a += b; }
  friend MatrixK operator-(MatrixK a, const MatrixK& b) { return a -= b; }
  friend MatrixK operator*(const MatrixK& a, const MatrixK& b);
  friend MatrixK operator*(const FieldElem& c, const MatrixK& a);
  friend bool operator==(const MatrixK& a, const MatrixK& b);

  std::string str() const;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * t_ + j); }
  NumberField K_;
  int t_;
  std::vector<FieldElem> e_;
};

// p(g) by Horner's rule.
MatrixK eval_poly(const KPoly& p, const MatrixK& g);

// det(x I - g), by Faddeev-LeVerrier.
KPoly char_poly(const MatrixK& g);
// Monic annihilator of least degree, from the Krylov sequences of the
// standard basis vectors.
KPoly min_poly_matrix(const MatrixK& g);

// (g - I)^t = 0
bool is_unipotent(const MatrixK& g);
// Minimal polynomial squarefree.
bool is_semisimple(const MatrixK& g);

// g = g_u * g_s = g_s * g_u with g_s semisimple and g_u unipotent.
struct JordanPair {
  MatrixK semisimple_part;
  MatrixK unipotent_part;
};
// Newton iteration s <- s - q(s) q'(s)^-1 on the squarefree part q of the
// characteristic polynomial, ceil(log2 t) + 1 steps from s = g. Throws
// SingularMatrix.
JordanPair jordan_chevalley(const MatrixK& g);

// The Q-factorization of the norm of the characteristic polynomial: the
// Q-conjugacy classes of eigenvalues over every embedding of K.
struct EigenvalueData {
  std::vector<std::pair<QPoly, int>> factors;
  int total_degree() const;
};
EigenvalueData eigen_minpolys(const MatrixK& g);

// Exact order of g, present iff g is semisimple with root-of-unity
// eigenvalues. Throws SingularMatrix.
std::optional<long long> is_torsion(const MatrixK& g);
// Least n with g^n unipotent, present iff every eigenvalue is a root of
// unity. Throws SingularMatrix.
std::optional<long long> is_unipotent_torsion(const MatrixK& g);

}  // namespace canht
