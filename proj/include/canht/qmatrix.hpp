#pragma once

// Dense square matrices over Q, used for characteristic polynomials of
// multiplication maps and block matrices.

#include <vector>

#include "canht/qpoly.hpp"

namespace canht {

using QMatrix = std::vector<std::vector<Rational>>;

// det(x I - A), via similarity reduction to Hessenberg form.
QPoly charpoly(QMatrix a);
Rational determinant(QMatrix a);

}  // namespace canht
