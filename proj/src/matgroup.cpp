#include "canht/matgroup.hpp"

#include <numeric>

#include "canht/error.hpp"
#include "canht/factor.hpp"

namespace canht {

MatrixK::MatrixK(const NumberField& K, int t)
    : K_(K), t_(t), e_(static_cast<std::size_t>(t * t), FieldElem(K)) {
  if (t < 1) fail(ErrorKind::InvalidArgument, "matrix size must be positive");
}

MatrixK::MatrixK(const NumberField& K, std::vector<std::vector<FieldElem>> rows)
    : MatrixK(K, static_cast<int>(rows.size())) {
  for (int i = 0; i < t_; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != t_) fail(ErrorKind::InvalidArgument, "matrix must be square");
    for (int j = 0; j < t_; ++j) {
      if (!(row[static_cast<std::size_t>(j)].field() == K))
        fail(ErrorKind::FieldMismatch, "matrix entry from a different number field");
      (*this)(i, j) = std::move(row[static_cast<std::size_t>(j)]);
    }
  }
}

MatrixK MatrixK::identity(const NumberField& K, int t) {
  MatrixK m(K, t);
  for (int i = 0; i < t; ++i) m(i, i) = FieldElem(K, Rational(1));
  return m;
}

MatrixK MatrixK::diagonal(const NumberField& K, const std::vector<FieldElem>& d) {
  MatrixK m(K, static_cast<int>(d.size()));
  for (int i = 0; i < m.t_; ++i) {
    if (!(d[static_cast<std::size_t>(i)].field() == K)) fail(ErrorKind::FieldMismatch, "diagonal entry from a different number field");
    m(i, i) = d[static_cast<std::size_t>(i)];
  }
  return m;
}

MatrixK MatrixK::from_rationals(const NumberField& K, const std::vector<std::vector<Rational>>& rows) {
  MatrixK m(K, static_cast<int>(rows.size()));
  for (int i = 0; i < m.t_; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.t_) fail(ErrorKind::InvalidArgument, "matrix must be square");
    for (int j = 0; j < m.t_; ++j) m(i, j) = FieldElem(K, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return m;
}

FieldElem MatrixK::trace() const {
  FieldElem s(K_);
  for (int i = 0; i < t_; ++i) s += (*this)(i, i);
  return s;
}

FieldElem MatrixK::det() const {
  MatrixK a(*this);
  FieldElem det(K_, Rational(1));
  for (int c = 0; c < t_; ++c) {
    int p = c;
    while (p < t_ && a(p, c).is_zero()) ++p;
    if (p == t_) return FieldElem(K_);
    if (p != c) {
      for (int j = 0; j < t_; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    FieldElem inv = a(c, c).inverse();
    for (int r = c + 1; r < t_; ++r) {
      if (a(r, c).is_zero()) continue;
      FieldElem f = a(r, c) * inv;
      for (int j = c; j < t_; ++j)
        if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

MatrixK MatrixK::inverse() const {
  MatrixK a(*this), inv = identity(K_, t_);
  for (int c = 0; c < t_; ++c) {
    int p = c;
    while (p < t_ && a(p, c).is_zero()) ++p;
    if (p == t_) fail(ErrorKind::SingularMatrix, "matrix is singular");
    if (p != c)
      for (int j = 0; j < t_; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    FieldElem pinv = a(c, c).inverse();
    for (int j = 0; j < t_; ++j) {
      a(c, j) *= pinv;
      inv(c, j) *= pinv;
    }
    for (int r = 0; r < t_; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      FieldElem f = a(r, c);
      for (int j = 0; j < t_; ++j) {
        if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
        if (!inv(c, j).is_zero()) inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

MatrixK MatrixK::pow(long long n) const {
  if (n < 0) return inverse().pow(-n);
  MatrixK result = identity(K_, t_), base(*this);
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

bool MatrixK::is_identity() const {
  for (int i = 0; i < t_; ++i)
    for (int j = 0; j < t_; ++j)
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

bool MatrixK::is_zero() const {
  for (const auto& e : e_)
    if (!e.is_zero()) return false;
  return true;
}

MatrixK& MatrixK::operator+=(const MatrixK& rhs) {
  if (t_ != rhs.t_) fail(ErrorKind::InvalidArgument, "matrix sizes differ");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += rhs.e_[i];
  return *this;
}

MatrixK& MatrixK::operator-=(const MatrixK& rhs) {
  if (t_ != rhs.t_) fail(ErrorKind::InvalidArgument, "matrix sizes differ");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= rhs.e_[i];
  return *this;
}

MatrixK operator*(const MatrixK& a, const MatrixK& b) {
  if (a.t_ != b.t_) fail(ErrorKind::InvalidArgument, "matrix sizes differ");
  if (!(a.K_ == b.K_)) fail(ErrorKind::FieldMismatch, "matrices over different number fields");
  MatrixK c(a.K_, a.t_);
  for (int i = 0; i < a.t_; ++i)
    for (int k = 0; k < a.t_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < a.t_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

MatrixK operator*(const FieldElem& s, const MatrixK& a) {
  MatrixK c(a);
  for (auto& e : c.e_) e = s * e;
  return c;
}

bool operator==(const MatrixK& a, const MatrixK& b) { return a.t_ == b.t_ && a.K_ == b.K_ && a.e_ == b.e_; }

std::string MatrixK::str() const {
  std::string out = "[";
  for (int i = 0; i < t_; ++i) {
    out += i ? ", [" : "[";
    for (int j = 0; j < t_; ++j) out += (j ? ", " : "") + (*this)(i, j).str();
    out += "]";
  }
  return out + "]";
}

MatrixK eval_poly(const KPoly& p, const MatrixK& g) {
  MatrixK r(g.field(), g.size());
  MatrixK id = MatrixK::identity(g.field(), g.size());
  for (int i = p.degree(); i >= 0; --i) {
    r = r * g;
    if (!p[i].is_zero()) r += p[i] * id;
  }
  return r;
}

KPoly char_poly(const MatrixK& g) {
  const NumberField& K = g.field();
  const int t = g.size();
  std::vector<FieldElem> c(static_cast<std::size_t>(t + 1), FieldElem(K));
  c[static_cast<std::size_t>(t)] = FieldElem(K, Rational(1));
  MatrixK m(K, t);
  MatrixK id = MatrixK::identity(K, t);
  for (int k = 1; k <= t; ++k) {
    m = g * m + c[static_cast<std::size_t>(t - k + 1)] * id;
    c[static_cast<std::size_t>(t - k)] = (g * m).trace() * FieldElem(K, Rational(-1, k));
  }
  return KPoly(K, std::move(c));
}

KPoly min_poly_matrix(const MatrixK& g) {
  const NumberField& K = g.field();
  const int t = g.size();
  auto apply = [&](const std::vector<FieldElem>& v) {
    std::vector<FieldElem> w(static_cast<std::size_t>(t), FieldElem(K));
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j)
        if (!v[static_cast<std::size_t>(j)].is_zero()) w[static_cast<std::size_t>(i)] += g(i, j) * v[static_cast<std::size_t>(j)];
    return w;
  };
  KPoly result(K, QPoly::constant(1));
  for (int e = 0; e < t; ++e) {
    // Each entry: pivot column, reduced vector, polynomial p with vector = p(g) e_e.
    struct Row {
      int pivot;
      std::vector<FieldElem> vec;
      KPoly poly;
    };
    std::vector<Row> basis;
    std::vector<FieldElem> v(static_cast<std::size_t>(t), FieldElem(K));
    v[static_cast<std::size_t>(e)] = FieldElem(K, Rational(1));
    KPoly xk(K, QPoly::constant(1));
    for (int k = 0; k <= t; ++k) {
      std::vector<FieldElem> w = v;
      KPoly p = xk;
      for (const auto& row : basis) {
        const FieldElem& lead = w[static_cast<std::size_t>(row.pivot)];
        if (lead.is_zero()) continue;
        FieldElem f = lead / row.vec[static_cast<std::size_t>(row.pivot)];
        for (int i = 0; i < t; ++i) w[static_cast<std::size_t>(i)] -= f * row.vec[static_cast<std::size_t>(i)];
        p -= KPoly(K, std::vector<FieldElem>{f}) * row.poly;
      }
      int pivot = 0;
      while (pivot < t && w[static_cast<std::size_t>(pivot)].is_zero()) ++pivot;
      if (pivot == t) {
        result = lcm(result, p);
        break;
      }
      basis.push_back({pivot, std::move(w), std::move(p)});
      v = apply(v);
      xk = xk * KPoly::x(K);
    }
  }
  return result.monic();
}

bool is_unipotent(const MatrixK& g) {
  MatrixK n = g - MatrixK::identity(g.field(), g.size());
  return n.pow(g.size()).is_zero();
}

bool is_semisimple(const MatrixK& g) {
  KPoly m = min_poly_matrix(g);
  return gcd(m, m.derivative()).degree() == 0;
}

namespace {
void require_invertible(const MatrixK& g) {
  if (g.det().is_zero()) fail(ErrorKind::SingularMatrix, "matrix is singular");
}
}  // namespace

JordanPair jordan_chevalley(const MatrixK& g) {
  require_invertible(g);
  const int t = g.size();
  KPoly q = squarefree_part(char_poly(g));
  KPoly dq = q.derivative();
  int steps = 1;
  while ((1 << (steps - 1)) < t) ++steps;  // ceil(log2 t) + 1
  MatrixK s = g;
  for (int i = 0; i < steps; ++i) {
    MatrixK qs = eval_poly(q, s);
    if (qs.is_zero()) break;
    MatrixK d = eval_poly(dq, s);
    if (d.det().is_zero()) fail(ErrorKind::NonInvertibleDerivative, "q'(s) is singular during Newton iteration");
    s = s - qs * d.inverse();
  }
  if (!eval_poly(q, s).is_zero()) fail(ErrorKind::InternalError, "Newton iteration did not reach a root of the squarefree part");
  MatrixK u = g * s.inverse();
  return {std::move(s), std::move(u)};
}

int EigenvalueData::total_degree() const {
  int n = 0;
  for (const auto& [f, e] : factors) n += f.degree() * e;
  return n;
}

EigenvalueData eigen_minpolys(const MatrixK& g) {
  EigenvalueData out;
  out.factors = factor_rational(norm_poly(char_poly(g))).factors;
  return out;
}

namespace {

// lcm of the cyclotomic indices, or nothing if some factor is not cyclotomic.
std::optional<long long> cyclotomic_lcm(const EigenvalueData& data) {
  long long n = 1;
  for (const auto& [f, e] : data.factors) {
    int m = cyclotomic_index(f);
    if (m == 0) return std::nullopt;
    n = std::lcm(n, static_cast<long long>(m));
  }
  return n;
}

}  // namespace

std::optional<long long> is_torsion(const MatrixK& g) {
  require_invertible(g);
  auto n = cyclotomic_lcm(eigen_minpolys(g));
  if (!n || !is_semisimple(g)) return std::nullopt;
  if (!g.pow(*n).is_identity()) fail(ErrorKind::InternalError, "semisimple matrix with root-of-unity eigenvalues is not of the expected order");
  return n;
}

std::optional<long long> is_unipotent_torsion(const MatrixK& g) {
  require_invertible(g);
  auto n = cyclotomic_lcm(eigen_minpolys(g));
  if (!n) return std::nullopt;
  if (!is_unipotent(g.pow(*n))) fail(ErrorKind::InternalError, "power of a matrix with root-of-unity eigenvalues is not unipotent");
  return n;
}

}  // namespace canht
