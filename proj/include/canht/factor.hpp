#pragma once

#include <vector>

#include "canht/qpoly.hpp"

namespace canht {

struct Factorization {
  // Equal to the leading coefficient of the input, since factors are monic.
  Rational content;
  // Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
  std::vector<std::pair<QPoly, int>> factors;

  QPoly expand() const;
};

// Complete factorization over Q: squarefree decomposition, then Zassenhaus
// (modular factorization, Hensel lifting, recombination) on each part.
Factorization factor_rational(const QPoly& f);

bool is_irreducible(const QPoly& f);

namespace detail {
// Irreducible factors of a squarefree primitive integer polynomial of
// degree >= 1, each primitive with positive leading coefficient.
std::vector<std::vector<BigInt>> zassenhaus(const std::vector<BigInt>& f);
// The smallest prime p >= max(5, from) with p not dividing lc(f) and
// f mod p squarefree, for squarefree primitive f.
unsigned long choose_prime(const std::vector<BigInt>& f, unsigned long from = 5);
}  // namespace detail

}  // namespace canht
