#pragma once

// Integer matrices and lattices in Z^n. Matrices are row-major; a lattice
// given by a "basis matrix" has its basis vectors as columns.

#include <vector>

#include "canht/rational.hpp"

namespace canht {

using ZMatrix = std::vector<std::vector<BigInt>>;

ZMatrix zidentity(std::size_t n);
ZMatrix zmul(const ZMatrix& a, const ZMatrix& b);
ZMatrix ztranspose(const ZMatrix& a, std::size_t cols_if_empty = 0);

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SmithForm {
  ZMatrix U, D, V;
  std::size_t rank = 0;
  // The nonzero diagonal entries d_1, ..., d_rank.
  std::vector<BigInt> divisors;
};
SmithForm smith_normal_form(const ZMatrix& a, std::size_t cols);

// Row Hermite normal form: nonzero rows only, positive pivots, entries above
// each pivot reduced into [0, pivot).
ZMatrix hermite_normal_form(ZMatrix a, std::size_t cols);

// [Z^cols : row span of a], or 0 when the rows do not have full rank.
BigInt lattice_index(const ZMatrix& rows, std::size_t cols);

// Columns form a basis of {x in Z^cols : a x = 0}; the result is saturated.
ZMatrix integer_kernel(const ZMatrix& a, std::size_t cols);

// Columns of basis (n x r) independent and Z^n / span torsion-free.
bool is_saturated_basis(const ZMatrix& basis, std::size_t n);

}  // namespace canht
