#include "canht/qmatrix.hpp"

#include <utility>

namespace canht {

QPoly charpoly(QMatrix h) {
  const std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1].is_zero()) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (auto& row : h) std::swap(row[i], row[m]);
    }
    Rational pivot_inv = h[m][m - 1].inverse();
    for (std::size_t j = m + 1; j < n; ++j) {
      if (h[j][m - 1].is_zero()) continue;
      Rational u = h[j][m - 1] * pivot_inv;
      for (std::size_t k = m - 1; k < n; ++k)
        if (!h[m][k].is_zero()) h[j][k] -= u * h[m][k];
      for (std::size_t k = 0; k < n; ++k)
        if (!h[k][j].is_zero()) h[k][m] += u * h[k][j];
    }
  }
  // p[k] = charpoly of the leading k x k block.
  std::vector<QPoly> p(n + 1);
  p[0] = QPoly::constant(1);
  for (std::size_t m = 1; m <= n; ++m) {
    p[m] = (QPoly::x() - QPoly::constant(h[m - 1][m - 1])) * p[m - 1];
    Rational t = 1;
    for (std::size_t i = m - 1; i-- > 0;) {
      t *= h[i + 1][i];
      if (t.is_zero()) break;
      if (!h[i][m - 1].is_zero()) p[m] -= p[i].scaled(t * h[i][m - 1]);
    }
  }
  return p[n];
}

Rational determinant(QMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return Rational();
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Rational inv = a[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Rational f = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c)
        if (!a[col][c].is_zero()) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

}  // namespace canht
