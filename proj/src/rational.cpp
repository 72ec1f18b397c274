#include "canht/rational.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <numeric>
#include <ostream>

#include "canht/error.hpp"

namespace canht {

namespace {

constexpr __int128 kSmallMax = INT64_MAX;

bool fits_small(__int128 v) { return v >= -kSmallMax && v <= kSmallMax; }

unsigned __int128 uabs(__int128 v) {
  return v < 0 ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0)
      return gcd_u64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    unsigned __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

void mpz_from_i128(mpz_t z, __int128 v) {
  unsigned __int128 u = uabs(v);
  mpz_set_ui(z, static_cast<unsigned long>(u >> 64));
  mpz_mul_2exp(z, z, 64);
  mpz_add_ui(z, z, static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  if (v < 0) mpz_neg(z, z);
}

bool mpz_small(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) && z != LONG_MIN;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  set_i128(num, den);
}

Rational::Rational(const BigInt& n) { set_big(mpq_class(n)); }

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  set_big(std::move(q));
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  set_big(std::move(c));
}

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
  if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_)
    big_ = std::make_unique<mpq_class>(*other.big_);
  else
    big_.reset();
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  std::size_t digits = 0, slashes = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++digits;
    } else if (c == '/') {
      ++slashes;
    } else if (c == '-' && i == 0) {
    } else {
      throw ParseError("malformed rational literal '" + s + "'");
    }
  }
  if (digits == 0 || slashes > 1 || s.back() == '/' || s.front() == '/' ||
      (slashes == 1 && s[s.find('/') + 1] == '-'))
    throw ParseError("malformed rational literal '" + s + "'");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  Rational r;
  r.set_big(std::move(q));
  return r;
}

void Rational::set_i128(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  unsigned __int128 g = gcd_u128(uabs(num), static_cast<unsigned __int128>(den));
  if (g != 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  if (fits_small(num) && fits_small(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q;
  mpz_from_i128(q.get_num_mpz_t(), num);
  mpz_from_i128(q.get_den_mpz_t(), den);
  big_ = std::make_unique<mpq_class>(std::move(q));
}

void Rational::set_big(mpq_class q) {
  if (mpz_small(q.get_num()) && mpz_small(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
    return;
  }
  if (big_)
    *big_ = std::move(q);
  else
    big_ = std::make_unique<mpq_class>(std::move(q));
}

bool Rational::is_integer() const noexcept {
  return big_ ? big_->get_den() == 1 : den_ == 1;
}

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

BigInt Rational::numerator() const { return big_ ? BigInt(big_->get_num()) : BigInt(num_); }
BigInt Rational::denominator() const { return big_ ? BigInt(big_->get_den()) : BigInt(den_); }

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(BigInt(num_), BigInt(den_));
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

double Rational::log_abs() const {
  if (is_zero()) fail(ErrorKind::InvalidArgument, "log of zero");
  if (!big_) return std::log(std::fabs(static_cast<double>(num_))) - std::log(static_cast<double>(den_));
  auto log_mpz = [](const mpz_class& z) {
    long exp = 0;
    double m = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(exp) * std::log(2.0);
  };
  return log_mpz(big_->get_num()) - log_mpz(big_->get_den());
}

BigInt Rational::floor() const {
  BigInt n = numerator(), d = denominator(), q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

Rational Rational::frac() const {
  if (!big_) {
    std::int64_t r = num_ % den_;
    if (r < 0) r += den_;
    return Rational(r, den_);
  }
  return *this - Rational(floor());
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  Rational r;
  if (!big_) {
    if (num_ < 0) {
      r.num_ = -den_;
      r.den_ = -num_;
    } else {
      r.num_ = den_;
      r.den_ = num_;
    }
    return r;
  }
  mpq_class q;
  mpq_inv(q.get_mpq_t(), big_->get_mpq_t());
  r.set_big(std::move(q));
  return r;
}

std::string Rational::str() const {
  if (!big_) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  return big_->get_str();
}

Rational Rational::add_slow(const Rational& a, const Rational& b) {
  Rational r;
  r.set_big(a.to_mpq() + b.to_mpq());
  return r;
}

Rational Rational::mul_slow(const Rational& a, const Rational& b) {
  Rational r;
  r.set_big(a.to_mpq() * b.to_mpq());
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (big_ || rhs.big_) return *this = add_slow(*this, rhs);
  if (rhs.num_ == 0) return *this;
  if (num_ == 0) return *this = rhs;
  if (den_ == 1 && rhs.den_ == 1) {
    __int128 n = static_cast<__int128>(num_) + rhs.num_;
    if (fits_small(n)) {
      num_ = static_cast<std::int64_t>(n);
    } else {
      set_i128(n, 1);
    }
    return *this;
  }
  if (den_ == rhs.den_) {
    set_i128(static_cast<__int128>(num_) + rhs.num_, den_);
    return *this;
  }
  std::uint64_t g = gcd_u64(static_cast<std::uint64_t>(den_), static_cast<std::uint64_t>(rhs.den_));
  if (g == 1) {
    __int128 n = static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * rhs.den_;
    // gcd(n, d) = 1 already; set_i128 handles the range check.
    set_i128(n, d);
    return *this;
  }
  __int128 t = static_cast<__int128>(num_) * (rhs.den_ / static_cast<std::int64_t>(g)) +
               static_cast<__int128>(rhs.num_) * (den_ / static_cast<std::int64_t>(g));
  __int128 d = static_cast<__int128>(den_ / static_cast<std::int64_t>(g)) * rhs.den_;
  set_i128(t, d);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (big_ || rhs.big_) return *this = mul_slow(*this, rhs);
  if (num_ == 0) return *this;
  if (rhs.num_ == 0) {
    num_ = 0;
    den_ = 1;
    return *this;
  }
  if (den_ == 1 && rhs.den_ == 1) {
    __int128 n = static_cast<__int128>(num_) * rhs.num_;
    if (fits_small(n))
      num_ = static_cast<std::int64_t>(n);
    else
      set_i128(n, 1);
    return *this;
  }
  auto g1 = static_cast<std::int64_t>(
      gcd_u64(static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_), static_cast<std::uint64_t>(rhs.den_)));
  auto g2 = static_cast<std::int64_t>(gcd_u64(
      static_cast<std::uint64_t>(rhs.num_ < 0 ? -rhs.num_ : rhs.num_), static_cast<std::uint64_t>(den_)));
  __int128 n = static_cast<__int128>(num_ / g1) * (rhs.num_ / g2);
  __int128 d = static_cast<__int128>(den_ / g2) * (rhs.den_ / g1);
  if (fits_small(n) && fits_small(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  } else {
    set_i128(n, d);
  }
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.inverse(); }

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.set_big(-*big_);
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::ReducibleDefiningPolynomial: return "ReducibleDefiningPolynomial";
    case ErrorKind::InvalidDefiningPolynomial: return "InvalidDefiningPolynomial";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NonInvertibleDerivative: return "NonInvertibleDerivative";
    case ErrorKind::AllCoordinatesZero: return "AllCoordinatesZero";
    case ErrorKind::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorKind::ZeroParameter: return "ZeroParameter";
    case ErrorKind::NotMonogenic: return "NotMonogenic";
    case ErrorKind::NotRootOfUnity: return "NotRootOfUnity";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::InvalidLattice: return "InvalidLattice";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

}  // namespace canht
