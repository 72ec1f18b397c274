#include "canht/lattice.hpp"

#include <utility>

#include "canht/error.hpp"

namespace canht {

ZMatrix zidentity(std::size_t n) {
  ZMatrix m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ZMatrix zmul(const ZMatrix& a, const ZMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  ZMatrix c(a.size(), std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

ZMatrix ztranspose(const ZMatrix& a, std::size_t cols_if_empty) {
  const std::size_t cols = a.empty() ? cols_if_empty : a[0].size();
  ZMatrix t(cols, std::vector<BigInt>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

namespace {

void row_addmul(ZMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += q * m[src][j];
}

void col_addmul(ZMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  if (q == 0) return;
  for (auto& row : m) row[dst] += q * row[src];
}

void col_swap(ZMatrix& m, std::size_t i, std::size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

}  // namespace

SmithForm smith_normal_form(const ZMatrix& a, std::size_t cols) {
  const std::size_t m = a.size(), n = cols;
  SmithForm s;
  s.D = a;
  s.U = zidentity(m);
  s.V = zidentity(n);
  ZMatrix& D = s.D;
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = m, pj = n;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (D[i][j] != 0 && (pi == m || abs(D[i][j]) < abs(D[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == m) return s.rank = k, s;
      std::swap(D[pi], D[k]);
      std::swap(s.U[pi], s.U[k]);
      col_swap(D, pj, k);
      col_swap(s.V, pj, k);

      bool clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), D[i][k].get_mpz_t(), D[k][k].get_mpz_t());
        row_addmul(D, i, k, -q);
        row_addmul(s.U, i, k, -q);
        if (D[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), D[k][j].get_mpz_t(), D[k][k].get_mpz_t());
        col_addmul(D, j, k, -q);
        col_addmul(s.V, j, k, -q);
        if (D[k][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility of the rest of the block by the pivot.
      std::size_t bad = m;
      for (std::size_t i = k + 1; i < m && bad == m; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (D[i][j] % D[k][k] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_addmul(D, k, bad, 1);
      row_addmul(s.U, k, bad, 1);
    }
    if (D[k][k] < 0) {
      for (auto& v : D[k]) v = -v;
      for (auto& v : s.U[k]) v = -v;
    }
    s.divisors.push_back(D[k][k]);
    s.rank = k + 1;
  }
  return s;
}

ZMatrix hermite_normal_form(ZMatrix a, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    // Euclid down column c on rows r.. until one nonzero entry remains.
    while (true) {
      std::size_t piv = a.size();
      for (std::size_t i = r; i < a.size(); ++i)
        if (a[i][c] != 0 && (piv == a.size() || abs(a[i][c]) < abs(a[piv][c]))) piv = i;
      if (piv == a.size()) break;
      std::swap(a[piv], a[r]);
      bool done = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        row_addmul(a, i, r, -q);
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r >= a.size() || a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (auto& v : a[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      row_addmul(a, i, r, -q);
    }
    ++r;
  }
  a.resize(r);
  return a;
}

BigInt lattice_index(const ZMatrix& rows, std::size_t cols) {
  ZMatrix h = hermite_normal_form(rows, cols);
  if (h.size() < cols) return 0;
  BigInt idx = 1;
  for (std::size_t i = 0; i < cols; ++i) {
    std::size_t c = 0;
    while (h[i][c] == 0) ++c;
    idx *= h[i][c];
  }
  return idx;
}

ZMatrix integer_kernel(const ZMatrix& a, std::size_t cols) {
  SmithForm s = smith_normal_form(a, cols);
  ZMatrix k(cols);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = s.rank; j < cols; ++j) k[i].push_back(s.V[i][j]);
  return k;
}

bool is_saturated_basis(const ZMatrix& basis, std::size_t n) {
  if (basis.size() != n) return false;
  std::size_t r = n == 0 ? 0 : basis[0].size();
  SmithForm s = smith_normal_form(basis, r);
  if (s.rank != r) return false;
  for (const auto& d : s.divisors)
    if (d != 1) return false;
  return true;
}

}  // namespace canht
