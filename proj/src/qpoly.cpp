#include "canht/qpoly.hpp"

#include <map>
#include <mutex>

#include "canht/error.hpp"

namespace canht {

QPoly::QPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::x() { return QPoly{0, 1}; }

QPoly QPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rational& QPoly::lc() const {
  if (c_.empty()) fail(ErrorKind::ZeroPolynomial, "leading coefficient of the zero polynomial");
  return c_.back();
}

Rational QPoly::operator[](int i) const {
  if (i < 0 || i > degree()) return Rational();
  return c_[static_cast<std::size_t>(i)];
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long long>(i));
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (c_.empty()) fail(ErrorKind::ZeroPolynomial, "monic of the zero polynomial");
  if (c_.back().is_one()) return *this;
  return scaled(c_.back().inverse());
}

QPoly QPoly::scaled(const Rational& c) const {
  if (c.is_zero()) return {};
  std::vector<Rational> v(c_);
  for (auto& a : v) a *= c;
  return QPoly(std::move(v));
}

QPoly QPoly::reversed() const {
  std::vector<Rational> v(c_.rbegin(), c_.rend());
  return QPoly(std::move(v));
}

bool QPoly::has_integer_coeffs() const {
  for (const auto& a : c_)
    if (!a.is_integer()) return false;
  return true;
}

QPoly& QPoly::operator+=(const QPoly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size());
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size());
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& rhs) { return *this = *this * rhs; }

QPoly QPoly::operator-() const {
  QPoly r(*this);
  for (auto& a : r.c_) a = -a;
  return r;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      v[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return QPoly(std::move(v));
}

std::string QPoly::str(char var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& a = c_[static_cast<std::size_t>(i)];
    if (a.is_zero()) continue;
    Rational mag = a.abs();
    if (out.empty()) {
      if (a.sign() < 0) out += "-";
    } else {
      out += a.sign() < 0 ? " - " : " + ";
    }
    bool unit = mag.is_one();
    if (i == 0 || !unit) out += mag.str();
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::pair<QPoly, QPoly> divrem(const QPoly& f, const QPoly& g) {
  if (g.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  int dg = g.degree();
  if (f.degree() < dg) return {QPoly(), f};
  std::vector<Rational> r(f.coeffs().begin(), f.coeffs().end());
  std::vector<Rational> q(static_cast<std::size_t>(f.degree() - dg) + 1);
  Rational inv_lc = g.lc().inverse();
  auto gc = g.coeffs();
  for (int i = f.degree(); i >= dg; --i) {
    Rational& top = r[static_cast<std::size_t>(i)];
    if (top.is_zero()) continue;
    Rational c = top * inv_lc;
    for (int j = 0; j <= dg; ++j) {
      if (gc[static_cast<std::size_t>(j)].is_zero()) continue;
      r[static_cast<std::size_t>(i - dg + j)] -= c * gc[static_cast<std::size_t>(j)];
    }
    q[static_cast<std::size_t>(i - dg)] = std::move(c);
  }
  r.resize(static_cast<std::size_t>(dg));
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly pow(const QPoly& f, unsigned n) {
  QPoly result = QPoly::constant(1);
  QPoly base = f;
  while (n) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n) base *= base;
  }
  return result;
}

QPoly gcd(const QPoly& f, const QPoly& g) {
  if (f.is_zero() && g.is_zero()) fail(ErrorKind::ZeroPolynomial, "gcd(0, 0) is undefined");
  QPoly a = f.is_zero() ? g.monic() : f.monic();
  QPoly b = f.is_zero() ? QPoly() : (g.is_zero() ? QPoly() : g.monic());
  while (!b.is_zero()) {
    QPoly r = divrem(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? QPoly() : r.monic();
  }
  return a;
}

QPoly lcm(const QPoly& f, const QPoly& g) {
  return divrem(f * g, gcd(f, g)).first.monic();
}

QPoly squarefree_part(const QPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "squarefree part of zero");
  if (f.degree() == 0) return QPoly::constant(1);
  return divrem(f, gcd(f, f.derivative())).first.monic();
}

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "squarefree decomposition of zero");
  std::vector<std::pair<QPoly, int>> out;
  if (f.degree() == 0) return out;
  QPoly fm = f.monic();
  QPoly d1 = fm.derivative();
  QPoly a0 = gcd(fm, d1);
  QPoly b = divrem(fm, a0).first;
  QPoly c = divrem(d1, a0).first;
  QPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    QPoly a = gcd(b, d);
    QPoly bn = divrem(b, a).first;
    QPoly cn = divrem(d, a).first;
    if (a.degree() > 0) out.emplace_back(a, i);
    b = std::move(bn);
    d = cn - b.derivative();
  }
  return out;
}

Rational resultant(const QPoly& f0, const QPoly& g0) {
  if (f0.is_zero() || g0.is_zero()) fail(ErrorKind::ZeroPolynomial, "resultant with the zero polynomial");
  QPoly f = f0, g = g0;
  Rational acc = 1;
  for (;;) {
    int m = f.degree(), n = g.degree();
    if (n == 0) {
      Rational p = 1;
      for (int i = 0; i < m; ++i) p *= g.lc();
      return acc * p;
    }
    if (m == 0) {
      Rational p = 1;
      for (int i = 0; i < n; ++i) p *= f.lc();
      return acc * p;
    }
    QPoly r = divrem(f, g).second;
    if (r.is_zero()) return Rational();
    if ((m * n) % 2 == 1) acc = -acc;
    for (int i = 0; i < m - r.degree(); ++i) acc *= g.lc();
    f = std::move(g);
    g = std::move(r);
  }
}

std::pair<Rational, std::vector<BigInt>> primitive_part(const QPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "primitive part of zero");
  BigInt den = 1;
  for (const auto& a : f.coeffs()) den = lcm(den, a.denominator());
  std::vector<BigInt> z;
  z.reserve(f.coeffs().size());
  BigInt g = 0;
  for (const auto& a : f.coeffs()) {
    BigInt v = a.numerator() * (den / a.denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    z.push_back(std::move(v));
  }
  if (f.lc().sign() < 0) g = -g;
  for (auto& v : z) v /= g;
  return {Rational(g, den), std::move(z)};
}

QPoly from_integers(std::span<const BigInt> coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (const auto& c : coeffs) v.emplace_back(c);
  return QPoly(std::move(v));
}

long long euler_phi(long long m) {
  if (m <= 0) fail(ErrorKind::InvalidArgument, "totient of a nonpositive integer");
  long long result = m;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

int moebius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

QPoly cyclotomic_uncached(int m) {
  // Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}; multiply first, then divide.
  std::vector<BigInt> p{1};
  std::vector<int> divide_by;
  for (int d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    int mu = moebius(m / d);
    if (mu == 1) {
      std::vector<BigInt> q(p.size() + static_cast<std::size_t>(d));
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i + static_cast<std::size_t>(d)] += p[i];
        q[i] -= p[i];
      }
      p = std::move(q);
    } else if (mu == -1) {
      divide_by.push_back(d);
    }
  }
  for (int d : divide_by) {
    auto ud = static_cast<std::size_t>(d);
    std::vector<BigInt> q(p.size() - ud);
    for (std::size_t i = p.size() - 1; i >= ud; --i) {
      q[i - ud] = p[i];
      p[i - ud] += p[i];
      p[i] = 0;
    }
    p = std::move(q);
  }
  return from_integers(p);
}

}  // namespace

QPoly cyclotomic(int m) {
  if (m < 1) fail(ErrorKind::InvalidArgument, "cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<int, QPoly> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  QPoly phi = cyclotomic_uncached(m);
  std::lock_guard lock(mu);
  cache.emplace(m, phi);
  return phi;
}

int cyclotomic_index(const QPoly& f) {
  if (!f.is_monic() || !f.has_integer_coeffs()) return 0;
  const int d = f.degree();
  if (d == 1) {
    if (f[0] == Rational(-1)) return 1;
    if (f[0] == Rational(1)) return 2;
    return 0;
  }
  if (d % 2 != 0 || !f[0].is_one()) return 0;
  // phi(m) >= sqrt(m/2) bounds the search.
  const long long bound = 2LL * d * d;
  for (long long m = 3; m <= bound; ++m) {
    if (euler_phi(m) != d) continue;
    if (cyclotomic(static_cast<int>(m)) == f) return static_cast<int>(m);
  }
  return 0;
}

}  // namespace canht
