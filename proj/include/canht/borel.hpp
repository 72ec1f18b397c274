#pragma once

// Upper-triangular GL_3 as H ⋊ T. The element (a, b, c; lambda, mu, epsilon)
// is the pair (A, S) with A = [[1, a, b], [0, 1, c], [0, 0, 1]] and
// S = diag(lambda, mu, epsilon), i.e. the matrix A * S, and
// (A, S) (A', S') = (A S A' S^-1, S S').

#include <optional>
#include <string>

#include "canht/matgroup.hpp"

namespace canht {

class BorelElement {
 public:
  // Throws ZeroParameter for a zero diagonal entry, FieldMismatch.
  BorelElement(FieldElem a, FieldElem b, FieldElem c, FieldElem lambda, FieldElem mu, FieldElem epsilon);
  static BorelElement identity(const NumberField& K);
  // Throws InvalidArgument unless m is 3x3 upper triangular and invertible.
  static BorelElement from_matrix(const MatrixK& m);

  const NumberField& field() const { return a_.field(); }
  const FieldElem& a() const { return a_; }
  const FieldElem& b() const { return b_; }
  const FieldElem& c() const { return c_; }
  const FieldElem& lambda() const { return lambda_; }
  const FieldElem& mu() const { return mu_; }
  const FieldElem& epsilon() const { return epsilon_; }
  // lambda / mu and mu / epsilon.
  const FieldElem& theta() const { return theta_; }
  const FieldElem& eta() const { return eta_; }

  // Same diagonal, new unipotent coordinates. Throws FieldMismatch.
  BorelElement with_unipotent(FieldElem a, FieldElem b, FieldElem c) const;

  MatrixK to_matrix() const;
  bool is_identity() const;
  friend bool operator==(const BorelElement& p, const BorelElement& q);

  friend BorelElement borel_mul(const BorelElement& p, const BorelElement& q);

 private:
  struct Raw {};
  BorelElement(Raw, FieldElem a, FieldElem b, FieldElem c, FieldElem lambda, FieldElem mu, FieldElem epsilon,
               FieldElem theta, FieldElem eta);
  FieldElem a_, b_, c_, lambda_, mu_, epsilon_, theta_, eta_;
};

// Throws FieldMismatch.
BorelElement borel_mul(const BorelElement& p, const BorelElement& q);
// n >= 1, by square and multiply. Throws InvalidArgument for n < 1.
BorelElement borel_pow(const BorelElement& p, long long n);
BorelElement borel_inverse(const BorelElement& p);

// Cases by (theta, eta) for a root-of-unity diagonal:
//   S0  theta = 1,  eta = 1           torsion iff a = b = c = 0
//   S1  theta != 1, eta = 1           torsion iff c = 0
//   S2  theta = 1,  eta != 1          torsion iff a = 0
//   S3  theta, eta != 1, theta eta = 1   torsion iff (1 - theta) b = a c
//   S4  theta, eta, theta eta != 1    always torsion
enum class BorelStratum { S0, S1, S2, S3, S4 };
std::string to_string(BorelStratum s);

// The part of the classification that depends only on the diagonal.
struct TorsionDiagonal {
  long long order = 1;  // lcm of the orders of lambda, mu, epsilon
  BorelStratum stratum = BorelStratum::S0;
};
// Empty unless lambda, mu, epsilon are all roots of unity.
std::optional<TorsionDiagonal> classify_diagonal(const BorelElement& p);

// Order of p read off from its stratum condition. When the condition holds
// the diagonal order d is confirmed by p^d = 1, falling back to 2d; failure
// of both throws InternalError.
std::optional<long long> borel_is_torsion_strata(const BorelElement& p);
// Same, reusing classify_diagonal(p) computed for an element with the same diagonal.
std::optional<long long> borel_is_torsion_strata(const BorelElement& p, const std::optional<TorsionDiagonal>& diag);

// Smallest n <= n_max with p^n = 1. Throws InvalidArgument for n_max < 1.
std::optional<long long> borel_is_torsion_bruteforce(const BorelElement& p, long long n_max);

// (1 - lambda / mu) b = a c, the closure of the torsion points when epsilon = lambda.
bool borel_closure_equation(const BorelElement& p);

}  // namespace canht
