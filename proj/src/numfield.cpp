#include "canht/numfield.hpp"

#include <algorithm>
#include <cctype>
#include <cfloat>
#include <climits>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "canht/error.hpp"
#include "canht/factor.hpp"
#include "canht/qmatrix.hpp"

namespace canht {

namespace detail {

struct FieldData {
  QPoly f;
  int d = 1;
  bool monogenic = true;
  int cyclotomic = 0;
  // Nonzero f_j for j < d; x^d = -sum f_j x^j.
  std::vector<std::pair<int, std::int64_t>> sparse;
  std::vector<std::pair<int, BigInt>> sparse_big;
  // |f_j| < 2^31 for all j, so the small multiplication path applies.
  bool small_ok = true;

  mutable std::mutex mu;
  mutable std::vector<std::pair<double, std::vector<RootBox>>> embeddings;
};

}  // namespace detail

namespace {

using detail::FieldData;
using i128 = __int128;
using u128 = unsigned __int128;

std::shared_ptr<FieldData> make_data(const QPoly& f, bool monogenic, int cyc) {
  auto data = std::make_shared<FieldData>();
  data->f = f;
  data->d = f.degree();
  data->monogenic = monogenic;
  data->cyclotomic = cyc;
  for (int j = 0; j < data->d; ++j) {
    if (f[j].is_zero()) continue;
    BigInt v = f[j].numerator();
    data->sparse_big.emplace_back(j, v);
    if (v.fits_slong_p() && abs(v) < BigInt(1L << 31))
      data->sparse.emplace_back(j, v.get_si());
    else
      data->small_ok = false;
  }
  return data;
}

bool fits64(i128 v) { return v >= INT64_MIN && v <= INT64_MAX; }

u128 uabs(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0)
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

struct FieldElem::Big {
  std::vector<BigInt> num;
  BigInt den = 1;
};

// NumberField --------------------------------------------------------------

NumberField::NumberField() {
  static const std::shared_ptr<const FieldData> q = make_data(QPoly{-1, 1}, true, 1);
  data_ = q;
}

NumberField NumberField::create(const QPoly& f, bool monogenic) {
  if (f.degree() < 1 || !f.is_monic() || !f.has_integer_coeffs())
    fail(ErrorKind::InvalidDefiningPolynomial, "defining polynomial must be monic with integer coefficients: " + f.str());
  if (f.degree() == 1) {
    if (f == QPoly{-1, 1}) return NumberField();
    return NumberField(make_data(f, monogenic, 0));
  }
  if (!is_irreducible(f))
    fail(ErrorKind::ReducibleDefiningPolynomial, "defining polynomial is reducible over Q: " + f.str());
  int m = cyclotomic_index(f);
  if (m > 0) return cyclotomic(m);
  return NumberField(make_data(f, monogenic, 0));
}

NumberField NumberField::cyclotomic(int m) {
  if (m < 1) fail(ErrorKind::InvalidArgument, "cyclotomic field needs m >= 1");
  // Q(zeta_m) = Q(zeta_2m) for odd m; the presentation follows m as given.
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const FieldData>> cache;
  if (m <= 2) return NumberField();
  std::lock_guard lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, make_data(canht::cyclotomic(m), true, m)).first;
  return NumberField(it->second);
}

int NumberField::degree() const noexcept { return data_->d; }
const QPoly& NumberField::defining_poly() const noexcept { return data_->f; }
bool NumberField::monogenic() const noexcept { return data_->monogenic; }
int NumberField::cyclotomic_order() const noexcept { return data_->cyclotomic; }

bool operator==(const NumberField& a, const NumberField& b) noexcept {
  return a.data_ == b.data_ || a.data_->f == b.data_->f;
}

// FieldElem construction ---------------------------------------------------

FieldElem::FieldElem(const NumberField& K) : K_(K), num_(static_cast<std::size_t>(K.degree()), 0) {}

FieldElem::FieldElem(const NumberField& K, const Rational& c) : FieldElem(K) {
  if (c.is_small()) {
    num_[0] = c.numerator().get_si();
    den_ = c.denominator().get_si();
  } else {
    set_from_poly(QPoly::constant(c));
  }
}

FieldElem::FieldElem(const NumberField& K, const QPoly& p) : FieldElem(K) { set_from_poly(p); }

FieldElem::FieldElem(const FieldElem& other)
    : K_(other.K_), num_(other.num_), den_(other.den_), big_(other.big_ ? std::make_unique<Big>(*other.big_) : nullptr) {}

FieldElem& FieldElem::operator=(const FieldElem& other) {
  if (this != &other) {
    K_ = other.K_;
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<Big>(*other.big_) : nullptr;
  }
  return *this;
}

FieldElem::~FieldElem() = default;
FieldElem::FieldElem(FieldElem&&) noexcept = default;
FieldElem& FieldElem::operator=(FieldElem&&) noexcept = default;

FieldElem FieldElem::generator(const NumberField& K) { return FieldElem(K, QPoly::x()); }

void FieldElem::set_from_poly(const QPoly& p) {
  const int d = K_.degree();
  QPoly r = p.degree() >= d ? divrem(p, K_.defining_poly()).second : p;
  Big b;
  b.num.assign(static_cast<std::size_t>(d), 0);
  BigInt den = 1;
  for (const auto& c : r.coeffs()) den = lcm(den, c.denominator());
  for (int i = 0; i <= r.degree(); ++i) {
    const Rational& c = r.coeffs()[static_cast<std::size_t>(i)];
    b.num[static_cast<std::size_t>(i)] = c.numerator() * (den / c.denominator());
  }
  b.den = den;
  assign_big(std::move(b));
}

void FieldElem::to_big(Big& out) const {
  if (big_) {
    out = *big_;
    return;
  }
  out.num.clear();
  for (auto v : num_) out.num.emplace_back(static_cast<long>(v));
  out.den = static_cast<long>(den_);
}

void FieldElem::assign_big(Big&& b) {
  BigInt g = b.den;
  for (const auto& v : b.num) {
    if (g == 1) break;
    g = gcd(g, v);
  }
  if (g != 1) {
    for (auto& v : b.num) v /= g;
    b.den /= g;
  }
  bool small = b.den.fits_slong_p();
  for (const auto& v : b.num) small = small && v.fits_slong_p();
  if (small) {
    big_.reset();
    num_.resize(b.num.size());
    for (std::size_t i = 0; i < b.num.size(); ++i) num_[i] = b.num[i].get_si();
    den_ = b.den.get_si();
  } else {
    num_.clear();
    den_ = 1;
    big_ = std::make_unique<Big>(std::move(b));
  }
}

// Accepts results computed in 128-bit arithmetic; false if they do not fit.
namespace {
template <class Vec>
bool normalize128(const i128* p, std::size_t n, u128 den, Vec& num, std::int64_t& den_out) {
  if (den != 1) {
    u128 g = den;
    for (std::size_t i = 0; i < n && g != 1; ++i)
      if (p[i] != 0) g = gcd128(g, uabs(p[i]));
    if (g != 1) {
      den = (den >> 64) == 0 && (g >> 64) == 0 ? static_cast<std::uint64_t>(den) / static_cast<std::uint64_t>(g) : den / g;
      for (std::size_t i = 0; i < n; ++i)
        if (p[i] != 0) {
          // Division of a signed value by a positive divisor of its magnitude.
          u128 a = uabs(p[i]);
          u128 m = (a >> 64) == 0 && (g >> 64) == 0 ? static_cast<std::uint64_t>(a) / static_cast<std::uint64_t>(g) : a / g;
          if (m > static_cast<u128>(INT64_MAX)) return false;
          num[i] = p[i] < 0 ? -static_cast<std::int64_t>(m) : static_cast<std::int64_t>(m);
        } else {
          num[i] = 0;
        }
      if (den > static_cast<u128>(INT64_MAX)) return false;
      den_out = static_cast<std::int64_t>(den);
      return true;
    }
  }
  if (den > static_cast<u128>(INT64_MAX)) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!fits64(p[i])) return false;
    num[i] = static_cast<std::int64_t>(p[i]);
  }
  den_out = static_cast<std::int64_t>(den);
  return true;
}
}  // namespace

// FieldElem arithmetic -----------------------------------------------------

bool FieldElem::is_zero() const noexcept {
  if (big_) return false;
  for (auto v : num_)
    if (v != 0) return false;
  return true;
}

bool FieldElem::is_one() const noexcept {
  if (big_ || den_ != 1 || num_.empty() || num_[0] != 1) return false;
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

bool FieldElem::is_rational() const noexcept {
  if (big_) {
    for (std::size_t i = 1; i < big_->num.size(); ++i)
      if (big_->num[i] != 0) return false;
    return true;
  }
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

Rational FieldElem::coeff(int i) const {
  if (i < 0 || i >= K_.degree()) return Rational();
  auto k = static_cast<std::size_t>(i);
  if (big_) return Rational(big_->num[k], big_->den);
  return Rational(num_[k], den_);
}

QPoly FieldElem::to_poly() const {
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(K_.degree()));
  for (int i = 0; i < K_.degree(); ++i) c.push_back(coeff(i));
  return QPoly(std::move(c));
}

namespace {
void check_same(const FieldElem& a, const FieldElem& b) {
  if (!(a.field() == b.field())) fail(ErrorKind::FieldMismatch, "elements belong to different number fields");
}
}  // namespace

bool FieldElem::add_small(const FieldElem& rhs, int sign) {
  if (rhs.is_zero()) return true;
  if (sign > 0 && is_zero()) {
    num_ = rhs.num_;
    den_ = rhs.den_;
    return true;
  }
  const std::size_t n = num_.size();
  boost::container::small_vector<i128, 12> p(n);
  u128 den;
  if (den_ == rhs.den_) {
    for (std::size_t i = 0; i < n; ++i)
      p[i] = static_cast<i128>(num_[i]) + sign * static_cast<i128>(rhs.num_[i]);
    den = static_cast<u128>(den_);
  } else {
    std::int64_t g = std::gcd(den_, rhs.den_);
    i128 ma = rhs.den_ / g, mb = den_ / g;
    for (std::size_t i = 0; i < n; ++i) {
      i128 x = static_cast<i128>(num_[i]) * ma;
      i128 y = static_cast<i128>(rhs.num_[i]) * mb;
      // |x|, |y| < 2^126, so the sum cannot overflow.
      p[i] = x + sign * y;
    }
    den = static_cast<u128>(static_cast<i128>(den_) * ma);
  }
  SmallVec out(n);
  std::int64_t out_den;
  if (!normalize128(p.data(), n, den, out, out_den)) return false;
  num_ = std::move(out);
  den_ = out_den;
  return true;
}

FieldElem& FieldElem::operator+=(const FieldElem& rhs) {
  check_same(*this, rhs);
  if (!big_ && !rhs.big_ && add_small(rhs, 1)) return *this;
  Big a, b;
  to_big(a);
  rhs.to_big(b);
  Big r;
  r.den = a.den * b.den;
  r.num.resize(a.num.size());
  for (std::size_t i = 0; i < a.num.size(); ++i) r.num[i] = a.num[i] * b.den + b.num[i] * a.den;
  assign_big(std::move(r));
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& rhs) {
  check_same(*this, rhs);
  if (!big_ && !rhs.big_ && add_small(rhs, -1)) return *this;
  return *this += -rhs;
}

FieldElem FieldElem::operator-() const {
  FieldElem r(*this);
  if (r.big_) {
    for (auto& v : r.big_->num) v = -v;
  } else {
    for (auto& v : r.num_) {
      if (v == INT64_MIN) {
        Big b;
        to_big(b);
        for (auto& w : b.num) w = -w;
        r.assign_big(std::move(b));
        return r;
      }
      v = -v;
    }
  }
  return r;
}

bool FieldElem::mul_small(const FieldElem& a, const FieldElem& b, FieldElem& out) {
  const FieldData& F = a.K_.data();
  if (!F.small_ok) return false;
  const int d = F.d;
  boost::container::small_vector<i128, 24> p(static_cast<std::size_t>(2 * d - 1), 0);
  for (int i = 0; i < d; ++i) {
    std::int64_t x = a.num_[static_cast<std::size_t>(i)];
    if (x == 0) continue;
    for (int j = 0; j < d; ++j) {
      std::int64_t y = b.num_[static_cast<std::size_t>(j)];
      if (y == 0) continue;
      if (__builtin_add_overflow(p[static_cast<std::size_t>(i + j)], static_cast<i128>(x) * y,
                                 &p[static_cast<std::size_t>(i + j)]))
        return false;
    }
  }
  for (int k = 2 * d - 2; k >= d; --k) {
    i128 c = p[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    for (const auto& [j, fj] : F.sparse) {
      i128 t;
      if (__builtin_mul_overflow(c, static_cast<i128>(fj), &t)) return false;
      if (__builtin_sub_overflow(p[static_cast<std::size_t>(k - d + j)], t, &p[static_cast<std::size_t>(k - d + j)]))
        return false;
    }
  }
  u128 den = static_cast<u128>(a.den_) * static_cast<u128>(b.den_);
  out.num_.resize(static_cast<std::size_t>(d));
  return normalize128(p.data(), static_cast<std::size_t>(d), den, out.num_, out.den_);
}

void FieldElem::mul_big(const FieldElem& a, const FieldElem& b, FieldElem& out) {
  const FieldData& F = a.K_.data();
  const int d = F.d;
  Big x, y;
  a.to_big(x);
  b.to_big(y);
  std::vector<BigInt> p(static_cast<std::size_t>(2 * d - 1));
  for (int i = 0; i < d; ++i) {
    if (x.num[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < d; ++j)
      p[static_cast<std::size_t>(i + j)] += x.num[static_cast<std::size_t>(i)] * y.num[static_cast<std::size_t>(j)];
  }
  for (int k = 2 * d - 2; k >= d; --k) {
    const BigInt& c = p[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    for (const auto& [j, fj] : F.sparse_big) p[static_cast<std::size_t>(k - d + j)] -= c * fj;
  }
  p.resize(static_cast<std::size_t>(d));
  Big r;
  r.num = std::move(p);
  r.den = x.den * y.den;
  out.assign_big(std::move(r));
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  check_same(a, b);
  if (!a.big_ && !b.big_) {
    if (a.is_zero() || b.is_one()) return a;
    if (b.is_zero() || a.is_one()) return b;
  }
  FieldElem out(a.K_);
  if (!a.big_ && !b.big_ && FieldElem::mul_small(a, b, out)) return out;
  FieldElem::mul_big(a, b, out);
  return out;
}

FieldElem& FieldElem::operator*=(const FieldElem& rhs) { return *this = *this * rhs; }

FieldElem& FieldElem::operator/=(const FieldElem& rhs) { return *this = *this * rhs.inverse(); }

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (!(a.K_ == b.K_)) return false;
  if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_)) return false;
  if (a.big_) return a.big_->den == b.big_->den && a.big_->num == b.big_->num;
  return a.den_ == b.den_ && a.num_ == b.num_;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero field element");
  if (is_rational()) return FieldElem(K_, coeff(0).inverse());
  // Extended Euclid: track s with s*a = r (mod f).
  QPoly r0 = K_.defining_poly(), r1 = to_poly();
  QPoly s0, s1 = QPoly::constant(1);
  while (r1.degree() > 0) {
    auto [q, r] = divrem(r0, r1);
    QPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.is_zero()) fail(ErrorKind::InternalError, "element shares a factor with an irreducible modulus");
  return FieldElem(K_, s1.scaled(r1[0].inverse()));
}

FieldElem FieldElem::pow(long long n) const {
  if (n < 0) return inverse().pow(-n);
  FieldElem result(K_, Rational(1));
  FieldElem base(*this);
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::string FieldElem::str() const { return to_poly().str('a'); }

// Parsing ------------------------------------------------------------------

namespace {

class ElemParser {
 public:
  ElemParser(const NumberField& K, std::string_view s) : K_(K), s_(s) {}

  FieldElem run() {
    FieldElem v = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& msg) {
    throw ParseError("field element \"" + std::string(s_) + "\": " + msg + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool at_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'a' || c == '(';
  }

  FieldElem expr() {
    FieldElem v = term();
    while (true) {
      if (accept('+'))
        v += term();
      else if (accept('-'))
        v -= term();
      else
        return v;
    }
  }
  FieldElem term() {
    if (accept('-')) return -term();
    if (accept('+')) return term();
    FieldElem v = power();
    while (true) {
      if (accept('*')) {
        v *= power();
      } else if (accept('/')) {
        FieldElem den = power();
        if (den.is_zero()) error("division by zero");
        v /= den;
      } else if (at_primary()) {
        v *= power();  // juxtaposition such as 2a or 3(a+1)
      } else {
        return v;
      }
    }
  }
  FieldElem power() {
    FieldElem base = primary();
    if (!accept('^')) return base;
    skip();
    bool neg = false;
    if (accept('-')) neg = true;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 9) error("expected a small integer exponent");
    long long e = std::stoll(std::string(s_.substr(start, pos_ - start)));
    if (neg && base.is_zero()) error("division by zero");
    return base.pow(neg ? -e : e);
  }
  FieldElem primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElem v = expr();
      if (!accept(')')) error("expected ')'");
      return v;
    }
    if (c == 'a') {
      ++pos_;
      return FieldElem::generator(K_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return FieldElem(K_, Rational(BigInt(std::string(s_.substr(start, pos_ - start)))));
    }
    error("unexpected character");
  }

  NumberField K_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElem FieldElem::parse(const NumberField& K, std::string_view text) { return ElemParser(K, text).run(); }

// Embeddings -----------------------------------------------------------------

std::vector<RootBox> embeddings(const NumberField& K, double eps) {
  const FieldData& F = K.data();
  {
    std::lock_guard lock(F.mu);
    for (const auto& [e, boxes] : F.embeddings)
      if (e <= eps) return boxes;
  }
  std::vector<RootBox> boxes = complex_roots(F.f, eps);
  std::lock_guard lock(F.mu);
  F.embeddings.emplace_back(eps, boxes);
  return boxes;
}

ComplexBall evaluate(const FieldElem& a, const RootBox& root) {
  using cld = std::complex<long double>;
  const int d = a.field().degree();
  const long double u = LDBL_EPSILON / 2;
  cld z(root.center.real(), root.center.imag());
  long double az = std::abs(z), r = root.radius;
  cld p = 0;
  long double abs_at = 0, abs_wide = 0, coef_err = 0;
  for (int k = d - 1; k >= 0; --k) {
    Rational c = a.coeff(k);
    long double cv = c.is_small() ? static_cast<long double>(c.numerator().get_si()) /
                                        static_cast<long double>(c.denominator().get_si())
                                  : static_cast<long double>(c.to_double());
    long double cerr = c.is_small() ? std::fabs(cv) * 2 * u : std::fabs(cv) * 2 * DBL_EPSILON;
    p = p * z + cv;
    abs_at = abs_at * az + std::fabs(cv);
    abs_wide = abs_wide * (az + r) + std::fabs(cv) + cerr;
    coef_err = coef_err * (az + r) + cerr;
  }
  // Moving the point inside the root disk changes the value by at most
  // sum |c_k| ((|z|+r)^k - |z|^k); rounding adds gamma_{4d} * sum |c_k||z|^k.
  long double move = abs_wide - abs_at;
  long double gamma = (4.0L * d + 8) * u / (1 - (4.0L * d + 8) * u);
  long double rad = move + coef_err + gamma * abs_at * 2;
  std::complex<double> c(static_cast<double>(p.real()), static_cast<double>(p.imag()));
  rad += std::abs(p - cld(c.real(), c.imag()));
  rad *= 1 + 16 * u;
  return {c, std::nextafter(static_cast<double>(rad), HUGE_VAL)};
}

std::vector<ComplexBall> evaluate_all(const FieldElem& a, double eps) {
  std::vector<ComplexBall> out;
  for (const auto& box : embeddings(a.field(), eps)) out.push_back(evaluate(a, box));
  return out;
}

FieldElem eval_at(const QPoly& p, const FieldElem& a) {
  FieldElem r(a.field());
  for (int i = p.degree(); i >= 0; --i) {
    r *= a;
    if (!p[i].is_zero()) r += FieldElem(a.field(), p[i]);
  }
  return r;
}

QMatrix multiplication_matrix(const FieldElem& a) {
  const int d = a.field().degree();
  QMatrix m(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
  FieldElem col = a;
  FieldElem gen = FieldElem::generator(a.field());
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.coeff(i);
    if (j + 1 < d) col *= gen;
  }
  return m;
}

Rational norm(const FieldElem& a) {
  if (a.is_rational()) return a.coeff(0).is_zero() ? Rational() : pow(QPoly::constant(a.coeff(0)), static_cast<unsigned>(a.field().degree()))[0];
  return determinant(multiplication_matrix(a));
}

QPoly min_poly_over_Q(const FieldElem& a) {
  if (a.is_rational()) return QPoly{-a.coeff(0), 1};
  // The characteristic polynomial of x -> a*x is min_poly^[K:Q(a)], so its
  // squarefree part is the minimal polynomial.
  QPoly m = squarefree_part(charpoly(multiplication_matrix(a)));
  if (!eval_at(m, a).is_zero()) fail(ErrorKind::InternalError, "minimal polynomial does not annihilate its element");
  return m;
}

std::optional<int> is_root_of_unity(const FieldElem& a) {
  if (a.is_zero()) return std::nullopt;
  if (a.is_rational()) {
    Rational c = a.coeff(0);
    if (c == Rational(1)) return 1;
    if (c == Rational(-1)) return 2;
    return std::nullopt;
  }
  QPoly m = min_poly_over_Q(a);
  if (!m.has_integer_coeffs() || !m[0].abs().is_one()) return std::nullopt;
  int order = cyclotomic_index(m);
  if (order == 0) return std::nullopt;
  if (!a.pow(order).is_one()) fail(ErrorKind::InternalError, "cyclotomic minimal polynomial without matching power");
  for (int p = 2, rest = order; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    if (a.pow(order / p).is_one()) fail(ErrorKind::InternalError, "root of unity has smaller order than its cyclotomic index");
  }
  return order;
}

// KPoly ----------------------------------------------------------------------

KPoly::KPoly(const NumberField& K, std::vector<FieldElem> coeffs) : K_(K), c_(std::move(coeffs)) {
  for (const auto& c : c_) check_same(FieldElem(K_), c);
  trim();
}

KPoly::KPoly(const NumberField& K, const QPoly& p) : K_(K) {
  for (const auto& c : p.coeffs()) c_.emplace_back(K, c);
}

KPoly KPoly::x(const NumberField& K) { return KPoly(K, QPoly::x()); }

void KPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const FieldElem& KPoly::lc() const {
  if (c_.empty()) fail(ErrorKind::ZeroPolynomial, "leading coefficient of the zero polynomial");
  return c_.back();
}

FieldElem KPoly::operator[](int i) const {
  if (i < 0 || i > degree()) return FieldElem(K_);
  return c_[static_cast<std::size_t>(i)];
}

FieldElem KPoly::eval(const FieldElem& x) const {
  FieldElem r(K_);
  for (int i = degree(); i >= 0; --i) r = r * x + c_[static_cast<std::size_t>(i)];
  return r;
}

KPoly KPoly::derivative() const {
  std::vector<FieldElem> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(c_[static_cast<std::size_t>(i)] * FieldElem(K_, Rational(i)));
  return KPoly(K_, std::move(d));
}

KPoly KPoly::monic() const {
  if (c_.empty()) fail(ErrorKind::ZeroPolynomial, "monic of the zero polynomial");
  if (lc().is_one()) return *this;
  FieldElem inv = lc().inverse();
  std::vector<FieldElem> m;
  for (const auto& c : c_) m.push_back(c * inv);
  return KPoly(K_, std::move(m));
}

KPoly KPoly::shifted(const FieldElem& s) const {
  KPoly lin(K_, std::vector<FieldElem>{s, FieldElem(K_, Rational(1))});
  KPoly r(K_);
  for (int i = degree(); i >= 0; --i) r = r * lin + KPoly(K_, std::vector<FieldElem>{c_[static_cast<std::size_t>(i)]});
  return r;
}

std::optional<QPoly> KPoly::to_qpoly() const {
  std::vector<Rational> q;
  for (const auto& c : c_) {
    if (!c.is_rational()) return std::nullopt;
    q.push_back(c.coeff(0));
  }
  return QPoly(std::move(q));
}

KPoly& KPoly::operator+=(const KPoly& rhs) {
  if (!(K_ == rhs.K_)) fail(ErrorKind::FieldMismatch, "polynomials over different number fields");
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), FieldElem(K_));
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
  trim();
  return *this;
}

KPoly& KPoly::operator-=(const KPoly& rhs) {
  if (!(K_ == rhs.K_)) fail(ErrorKind::FieldMismatch, "polynomials over different number fields");
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), FieldElem(K_));
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
  trim();
  return *this;
}

KPoly operator*(const KPoly& a, const KPoly& b) {
  if (!(a.K_ == b.K_)) fail(ErrorKind::FieldMismatch, "polynomials over different number fields");
  if (a.is_zero() || b.is_zero()) return KPoly(a.K_);
  std::vector<FieldElem> p(static_cast<std::size_t>(a.degree() + b.degree() + 1), FieldElem(a.K_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) p[i + j] += a.c_[i] * b.c_[j];
  }
  return KPoly(a.K_, std::move(p));
}

bool operator==(const KPoly& a, const KPoly& b) { return a.K_ == b.K_ && a.c_ == b.c_; }

std::string KPoly::str(char var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const FieldElem& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = c.str();
    if (i == 0) {
      out += c.is_rational() ? cs : "(" + cs + ")";
      continue;
    }
    if (!c.is_one()) out += "(" + cs + ")*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::pair<KPoly, KPoly> divrem(const KPoly& f, const KPoly& g) {
  if (g.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  const NumberField& K = f.field();
  int dg = g.degree();
  if (f.degree() < dg) return {KPoly(K), f};
  std::vector<FieldElem> r = f.coeffs();
  std::vector<FieldElem> q(static_cast<std::size_t>(f.degree() - dg + 1), FieldElem(K));
  FieldElem inv = g.lc().inverse();
  for (int i = f.degree(); i >= dg; --i) {
    if (r[static_cast<std::size_t>(i)].is_zero()) continue;
    FieldElem c = r[static_cast<std::size_t>(i)] * inv;
    for (int j = 0; j <= dg; ++j)
      if (!g.coeffs()[static_cast<std::size_t>(j)].is_zero())
        r[static_cast<std::size_t>(i - dg + j)] -= c * g.coeffs()[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(i - dg)] = std::move(c);
  }
  r.erase(r.begin() + dg, r.end());
  return {KPoly(K, std::move(q)), KPoly(K, std::move(r))};
}

KPoly gcd(const KPoly& f, const KPoly& g) {
  if (f.is_zero() && g.is_zero()) fail(ErrorKind::ZeroPolynomial, "gcd of two zero polynomials");
  KPoly a = f, b = g;
  while (!b.is_zero()) {
    KPoly r = divrem(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? std::move(r) : r.monic();
  }
  return a.monic();
}

KPoly lcm(const KPoly& f, const KPoly& g) { return divrem(f * g, gcd(f, g)).first.monic(); }

KPoly squarefree_part(const KPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "squarefree part of the zero polynomial");
  if (f.degree() == 0) return KPoly(f.field(), QPoly::constant(1));
  return divrem(f, gcd(f, f.derivative())).first.monic();
}

std::vector<std::pair<KPoly, int>> squarefree_decomposition(const KPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "squarefree decomposition of the zero polynomial");
  std::vector<std::pair<KPoly, int>> out;
  if (f.degree() == 0) return out;
  KPoly fm = f.monic();
  KPoly a = gcd(fm, fm.derivative());
  KPoly b = divrem(fm, a).first;
  KPoly c = divrem(fm.derivative(), a).first;
  KPoly dd = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    KPoly g = gcd(b, dd);
    if (g.degree() > 0) out.emplace_back(g, i);
    KPoly nb = divrem(b, g).first;
    c = divrem(dd, g).first;
    b = std::move(nb);
    dd = c - b.derivative();
  }
  return out;
}

QPoly norm_poly(const KPoly& chi) {
  if (chi.is_zero()) fail(ErrorKind::ZeroPolynomial, "norm of the zero polynomial");
  const NumberField& K = chi.field();
  if (auto q = chi.to_qpoly(); q && K.is_rationals()) return *q;
  const int d = K.degree(), t = chi.degree();
  Rational lc_norm = norm(chi.lc());
  if (t == 0) return QPoly::constant(lc_norm);
  KPoly m = chi.monic();
  // Companion matrix of m with each entry replaced by its d x d
  // multiplication block; its characteristic polynomial is N(m).
  const auto n = static_cast<std::size_t>(t * d);
  QMatrix big(n, std::vector<Rational>(n));
  for (int i = 1; i < t; ++i)
    for (int k = 0; k < d; ++k)
      big[static_cast<std::size_t>(i * d + k)][static_cast<std::size_t>((i - 1) * d + k)] = 1;
  for (int i = 0; i < t; ++i) {
    QMatrix blk = multiplication_matrix(-m[i]);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        big[static_cast<std::size_t>(i * d + r)][static_cast<std::size_t>((t - 1) * d + c)] =
            blk[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return charpoly(std::move(big)).scaled(lc_norm);
}

namespace {

// Roots in K of a monic squarefree h.
std::vector<FieldElem> roots_squarefree(const KPoly& h) {
  const NumberField& K = h.field();
  std::vector<FieldElem> roots;
  if (h.degree() == 1) {
    roots.push_back(-h[0] / h[1]);
    return roots;
  }
  if (auto q = h.to_qpoly(); q && K.is_rationals()) {
    for (const auto& [g, e] : factor_rational(*q).factors)
      if (g.degree() == 1) roots.emplace_back(K, -g[0]);
    return roots;
  }
  FieldElem theta = FieldElem::generator(K);
  for (int step = 0;; ++step) {
    // s = 0, 1, -1, 2, -2, ...
    int s = (step + 1) / 2 * (step % 2 == 1 ? 1 : -1);
    FieldElem shift = theta * FieldElem(K, Rational(s));
    KPoly hs = h.shifted(-shift);  // hs(y) = h(y - s*theta)
    QPoly n = norm_poly(hs);
    if (gcd(n, n.derivative()).degree() > 0) {
      if (step > 4 * h.degree() * K.degree() + 8)
        fail(ErrorKind::InternalError, "no squarefree norm found for Trager factorization");
      continue;
    }
    for (const auto& [F, e] : factor_rational(n).factors) {
      if (F.degree() > K.degree()) continue;
      KPoly g = gcd(hs, KPoly(K, F));
      if (g.degree() == 1) roots.push_back(-g[0] - shift);
    }
    return roots;
  }
}

}  // namespace

std::vector<std::pair<FieldElem, int>> roots_in_field(const KPoly& chi) {
  if (chi.is_zero()) fail(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<std::pair<FieldElem, int>> out;
  for (const auto& [part, mult] : squarefree_decomposition(chi))
    for (auto& r : roots_squarefree(part)) out.emplace_back(std::move(r), mult);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first.str() < y.first.str(); });
  return out;
}

}  // namespace canht
