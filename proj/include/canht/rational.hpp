#pragma once

// Exact rationals with an inline 64-bit fast path and a GMP fallback.
//
// Values whose numerator and denominator both fit in int64 (excluding
// INT64_MIN) are always stored inline; anything larger lives in an mpq.
// The representation is canonical, so equality is structural.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace canht {

using BigInt = mpz_class;

class Rational {
 public:
  Rational() noexcept = default;
  template <std::signed_integral I>
  Rational(I n) noexcept : num_(static_cast<std::int64_t>(n)) {
    if constexpr (sizeof(I) >= sizeof(std::int64_t)) {
      if (n == INT64_MIN) set_i128(static_cast<__int128>(n), 1);
    }
  }
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const BigInt& n);
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  // Accepts "p", "-p", "p/q" with optional surrounding whitespace.
  static Rational parse(std::string_view text);

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const noexcept;
  int sign() const noexcept;
  bool is_small() const noexcept { return !big_; }

  BigInt numerator() const;
  BigInt denominator() const;
  mpq_class to_mpq() const;
  double to_double() const;
  // log|x| for x != 0, accurate for arbitrarily large numerators/denominators.
  double log_abs() const;
  BigInt floor() const;
  // x - floor(x), in [0, 1).
  Rational frac() const;
  Rational abs() const;
  Rational inverse() const;

  std::string str() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);
  Rational operator-() const;

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void set_i128(__int128 num, __int128 den);
  void set_big(mpq_class q);
  static Rational add_slow(const Rational& a, const Rational& b);
  static Rational mul_slow(const Rational& a, const Rational& b);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace canht
