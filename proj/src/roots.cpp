#include "canht/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cfloat>
#include <cmath>
#include <gmpxx.h>

#include "canht/error.hpp"

namespace canht {

namespace {

using cld = std::complex<long double>;

long double to_long_double(const Rational& q) {
  if (q.is_small()) {
    return static_cast<long double>(q.numerator().get_si()) / static_cast<long double>(q.denominator().get_si());
  }
  // Keep the top 64 bits of numerator and denominator.
  auto top = [](const BigInt& z, long& shift) {
    BigInt a = abs(z);
    std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    shift = bits > 64 ? static_cast<long>(bits - 64) : 0;
    BigInt t;
    mpz_tdiv_q_2exp(t.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    return static_cast<long double>(t.get_ui());
  };
  long sn = 0, sd = 0;
  long double n = top(q.numerator(), sn);
  long double d = top(q.denominator(), sd);
  long double v = std::ldexp(n / d, static_cast<int>(sn - sd));
  return q.sign() < 0 ? -v : v;
}

struct Eval {
  cld value;
  cld deriv;
  long double abs_bound;  // sum |a_k| |z|^k
};

Eval horner(const std::vector<long double>& a, cld z) {
  cld p = a.back(), dp = 0;
  long double az = std::abs(z), s = std::fabs(a.back());
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
    s = s * az + std::fabs(a[k]);
  }
  return {p, dp, s};
}

void aberth(const std::vector<long double>& a, std::vector<cld>& z, int max_iter) {
  const std::size_t n = z.size();
  for (int it = 0; it < max_iter; ++it) {
    long double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Eval e = horner(a, z[i]);
      if (e.value == cld(0)) continue;
      cld ratio = e.value / e.deriv;
      cld sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += cld(1) / (z[i] - z[j]);
      cld w = ratio / (cld(1) - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max<long double>(1, std::abs(z[i])));
    }
    if (worst < 4 * LDBL_EPSILON) break;
  }
}

std::vector<cld> companion_seeds(const std::vector<long double>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -static_cast<double>(a[static_cast<std::size_t>(i)]);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
  std::vector<cld> z;
  z.reserve(static_cast<std::size_t>(n));
  auto ev = solver.eigenvalues();
  for (int i = 0; i < n; ++i) z.emplace_back(ev(i).real(), ev(i).imag());
  // Separate exact coincidences so the Aberth sums stay finite.
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (z[i] == z[j]) z[i] += cld(1e-8L * (1 + i), 1e-8L * (1 + j));
  return z;
}

double round_up(long double v) {
  double d = static_cast<double>(v);
  return std::nextafter(d, HUGE_VAL);
}

// Returns certified boxes, or an empty vector if certification failed.
std::vector<RootBox> certify(const std::vector<long double>& a, const std::vector<cld>& z) {
  const std::size_t n = z.size();
  const long double u = LDBL_EPSILON / 2;
  const long double gamma_eval = (4.0L * n + 4) * u / (1 - (4.0L * n + 4) * u);
  const long double gamma_prod = (6.0L * n + 6) * u;
  std::vector<RootBox> boxes(n);
  for (std::size_t i = 0; i < n; ++i) {
    Eval e = horner(a, z[i]);
    long double fabs_upper = std::abs(e.value) * (1 + 4 * u) + gamma_eval * e.abs_bound;
    long double prod = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) prod *= std::abs(z[i] - z[j]);
    long double prod_lower = prod * (1 - gamma_prod);
    if (!(prod_lower > 0)) return {};
    long double w = fabs_upper / prod_lower;
    std::complex<double> c(static_cast<double>(z[i].real()), static_cast<double>(z[i].imag()));
    long double center_err =
        std::abs(z[i] - cld(static_cast<long double>(c.real()), static_cast<long double>(c.imag())));
    boxes[i].center = c;
    boxes[i].radius = round_up((static_cast<long double>(n) * w + center_err) * (1 + 16 * u));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(boxes[i].center - boxes[j].center) * (1 - 4 * DBL_EPSILON) <= boxes[i].radius + boxes[j].radius)
        return {};
  return boxes;
}

// Multiprecision path for polynomials whose residuals drown in long double
// rounding. Roots are refined in binary floating point of kBits bits; the
// certificate is then computed from exact rational residuals at the refined
// points, so it carries no evaluation error at all.
constexpr mp_bitcnt_t kBits = 320;

struct MpComplex {
  mpf_class re{0, kBits}, im{0, kBits};
};

MpComplex operator+(const MpComplex& x, const MpComplex& y) { return {x.re + y.re, x.im + y.im}; }
MpComplex operator-(const MpComplex& x, const MpComplex& y) { return {x.re - y.re, x.im - y.im}; }
MpComplex operator*(const MpComplex& x, const MpComplex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
MpComplex operator/(const MpComplex& x, const MpComplex& y) {
  mpf_class d(y.re * y.re + y.im * y.im, kBits);
  return {(x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d};
}

void aberth_mp(const std::vector<mpq_class>& a, std::vector<MpComplex>& z) {
  const std::size_t n = z.size();
  MpComplex one;
  one.re = 1;
  for (int it = 0; it < 12; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      MpComplex p, dp;
      p.re = mpf_class(a.back(), kBits);
      for (std::size_t k = a.size() - 1; k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i];
        p.re += mpf_class(a[k], kBits);
      }
      if (sgn(dp.re) == 0 && sgn(dp.im) == 0) continue;
      MpComplex sum;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum = sum + one / (z[i] - z[j]);
      MpComplex ratio = p / dp;
      MpComplex denom = one - ratio * sum;
      if (sgn(denom.re) == 0 && sgn(denom.im) == 0) continue;
      z[i] = z[i] - ratio / denom;
    }
  }
}

// Upper bound for sqrt(q) as a double, q >= 0 exact.
double sqrt_upper(const mpq_class& q) {
  double d = q.get_d();
  return round_up(std::sqrt(static_cast<long double>(d)) * (1 + 1e-14L));
}

std::vector<RootBox> certify_exact(const std::vector<mpq_class>& a, const std::vector<MpComplex>& z) {
  const std::size_t n = z.size();
  std::vector<mpq_class> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = mpq_class(z[i].re);
    im[i] = mpq_class(z[i].im);
  }
  std::vector<RootBox> boxes(n);
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class pr = a.back(), pi = 0;
    for (std::size_t k = a.size() - 1; k-- > 0;) {
      mpq_class t = pr * re[i] - pi * im[i] + a[k];
      pi = pr * im[i] + pi * re[i];
      pr = t;
    }
    mpq_class prod2 = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) {
        mpq_class dr = re[i] - re[j], di = im[i] - im[j];
        prod2 *= dr * dr + di * di;
      }
    if (sgn(prod2) == 0) return {};
    // The monic a has leading coefficient 1, so W_i = f(z_i) / prod.
    mpq_class w2 = (pr * pr + pi * pi) / prod2;
    std::complex<double> c(re[i].get_d(), im[i].get_d());
    mpq_class er = re[i] - mpq_class(c.real()), ei = im[i] - mpq_class(c.imag());
    boxes[i].center = c;
    boxes[i].radius = round_up((static_cast<long double>(n) * sqrt_upper(w2) + sqrt_upper(er * er + ei * ei)) *
                               (1 + 16 * LDBL_EPSILON));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(boxes[i].center - boxes[j].center) * (1 - 4 * DBL_EPSILON) <= boxes[i].radius + boxes[j].radius)
        return {};
  return boxes;
}

std::vector<RootBox> refine_and_certify_mp(const QPoly& m, const std::vector<cld>& seeds) {
  std::vector<mpq_class> a;
  for (const auto& c : m.coeffs()) a.push_back(c.to_mpq());
  std::vector<MpComplex> z(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    z[i].re = mpf_class(static_cast<double>(seeds[i].real()), kBits);
    z[i].im = mpf_class(static_cast<double>(seeds[i].imag()), kBits);
  }
  aberth_mp(a, z);
  return certify_exact(a, z);
}

}  // namespace

std::vector<RootBox> complex_roots(const QPoly& f, double eps) {
  if (!(eps > 0)) fail(ErrorKind::InvalidArgument, "root isolation tolerance must be positive");
  if (f.degree() < 1) fail(ErrorKind::InvalidArgument, "root isolation needs degree >= 1");
  if (gcd(f, f.derivative()).degree() > 0) fail(ErrorKind::NotSquarefree, "complex_roots needs a squarefree polynomial");

  QPoly m = f.monic();
  std::vector<long double> a;
  a.reserve(m.coeffs().size());
  for (const auto& c : m.coeffs()) a.push_back(to_long_double(c));

  std::vector<RootBox> boxes;
  if (m.degree() == 1) {
    Rational r = -m[0];
    long double x = to_long_double(r);
    double c = static_cast<double>(x);
    boxes.push_back({std::complex<double>(c, 0.0),
                     round_up(std::fabs(x - static_cast<long double>(c)) + std::fabs(x) * 2 * LDBL_EPSILON)});
  } else {
    std::vector<cld> z = companion_seeds(a);
    for (int round = 0; round < 6 && boxes.empty(); ++round) {
      aberth(a, z, 60);
      boxes = certify(a, z);
      if (!boxes.empty()) {
        double worst = 0;
        for (const auto& b : boxes) worst = std::max(worst, b.radius);
        if (worst > eps) boxes.clear();
      }
    }
    if (boxes.empty()) {
      boxes = refine_and_certify_mp(m, z);
      for (const auto& b : boxes)
        if (b.radius > eps) {
          boxes.clear();
          break;
        }
    }
    if (boxes.empty())
      fail(ErrorKind::NumericalFailure, "could not certify isolated roots of " + f.str() + " to the requested tolerance");
  }
  if (boxes.front().radius > eps)
    fail(ErrorKind::NumericalFailure, "could not certify isolated roots to the requested tolerance");

  auto is_real = [](const RootBox& b) { return std::fabs(b.center.imag()) <= b.radius; };
  std::sort(boxes.begin(), boxes.end(), [&](const RootBox& x, const RootBox& y) {
    bool rx = is_real(x), ry = is_real(y);
    if (rx != ry) return rx;
    if (x.center.real() != y.center.real()) return x.center.real() < y.center.real();
    return x.center.imag() < y.center.imag();
  });
  return boxes;
}

}  // namespace canht
