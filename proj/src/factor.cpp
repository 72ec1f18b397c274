#include "canht/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>

#include "canht/error.hpp"

namespace canht {

namespace {

// ---------------------------------------------------------------------------
// Polynomials over F_p, p a small odd prime.

using ModPoly = std::vector<std::uint64_t>;

struct Fp {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }

  static void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  static int deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

  ModPoly sub(const ModPoly& a, const ModPoly& b) const {
    ModPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
  }

  ModPoly mul(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
  }

  ModPoly monic(const ModPoly& f) const {
    if (f.empty()) return f;
    std::uint64_t il = inv(f.back());
    ModPoly r(f);
    for (auto& c : r) c = mul(c, il);
    return r;
  }

  std::pair<ModPoly, ModPoly> divrem(const ModPoly& f, const ModPoly& g) const {
    int dg = deg(g);
    if (deg(f) < dg) return {{}, f};
    ModPoly r(f);
    ModPoly q(static_cast<std::size_t>(deg(f) - dg) + 1);
    std::uint64_t il = inv(g.back());
    for (int i = deg(f); i >= dg; --i) {
      std::uint64_t c = mul(r[static_cast<std::size_t>(i)], il);
      q[static_cast<std::size_t>(i - dg)] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dg; ++j) {
        auto& slot = r[static_cast<std::size_t>(i - dg + j)];
        slot = sub(slot, mul(c, g[static_cast<std::size_t>(j)]));
      }
    }
    r.resize(static_cast<std::size_t>(dg));
    trim(r);
    trim(q);
    return {q, r};
  }

  ModPoly rem(const ModPoly& f, const ModPoly& g) const { return divrem(f, g).second; }

  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      ModPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  // s*a + t*b = gcd(a, b), gcd monic.
  std::tuple<ModPoly, ModPoly, ModPoly> ext_gcd(const ModPoly& a, const ModPoly& b) const {
    ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      auto [q, r] = divrem(r0, r1);
      ModPoly s2 = sub(s0, mul(q, s1));
      ModPoly t2 = sub(t0, mul(q, t1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    std::uint64_t il = inv(r0.back());
    for (auto* v : {&r0, &s0, &t0})
      for (auto& c : *v) c = mul(c, il);
    return {r0, s0, t0};
  }

  ModPoly powmod(ModPoly base, const BigInt& e, const ModPoly& m) const {
    ModPoly result{1};
    base = rem(base, m);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      result = rem(mul(result, result), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base), m);
    }
    return result;
  }

  ModPoly derivative(const ModPoly& f) const {
    if (f.size() <= 1) return {};
    ModPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mul(f[i], i % p);
    trim(d);
    return d;
  }

  ModPoly reduce(const std::vector<BigInt>& f) const {
    ModPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      BigInt c;
      mpz_fdiv_r_ui(c.get_mpz_t(), f[i].get_mpz_t(), p);
      r[i] = c.get_ui();
    }
    trim(r);
    return r;
  }
};

// Distinct-degree factorization of a monic squarefree f.
std::vector<std::pair<ModPoly, int>> distinct_degree(const Fp& F, ModPoly f) {
  std::vector<std::pair<ModPoly, int>> out;
  const ModPoly x{0, 1};
  ModPoly h = x;
  BigInt p(static_cast<unsigned long>(F.p));
  for (int i = 1; 2 * i <= Fp::deg(f); ++i) {
    h = F.powmod(h, p, f);
    ModPoly g = F.gcd(f, F.sub(h, x));
    if (Fp::deg(g) > 0) {
      out.emplace_back(g, i);
      f = F.divrem(f, g).first;
      h = F.rem(h, f);
    }
  }
  if (Fp::deg(f) > 0) out.emplace_back(f, Fp::deg(f));
  return out;
}

// Cantor-Zassenhaus equal-degree splitting, p odd.
void equal_degree(const Fp& F, const ModPoly& g, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (Fp::deg(g) == d) {
    out.push_back(g);
    return;
  }
  BigInt e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coeff(0, F.p - 1);
  for (;;) {
    ModPoly a(static_cast<std::size_t>(Fp::deg(g)));
    for (auto& c : a) c = coeff(rng);
    Fp::trim(a);
    if (Fp::deg(a) < 1) continue;
    ModPoly b = F.powmod(a, e, g);
    b = F.sub(b, ModPoly{1});
    ModPoly h = F.gcd(g, b);
    if (Fp::deg(h) > 0 && Fp::deg(h) < Fp::deg(g)) {
      equal_degree(F, h, d, rng, out);
      equal_degree(F, F.divrem(g, h).first, d, rng, out);
      return;
    }
  }
}

std::vector<ModPoly> factor_mod_p(const Fp& F, const ModPoly& f_monic) {
  std::mt19937_64 rng(0x5eedULL + F.p);
  std::vector<ModPoly> out;
  for (auto& [g, d] : distinct_degree(F, f_monic)) equal_degree(F, g, d, rng, out);
  std::sort(out.begin(), out.end(), [](const ModPoly& a, const ModPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials reduced modulo M.

using ZPoly = std::vector<BigInt>;

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

struct ZMod {
  BigInt m;

  void reduce(ZPoly& f) const {
    for (auto& c : f) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    ztrim(f);
  }
  ZPoly mul(const ZPoly& a, const ZPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    reduce(r);
    return r;
  }
  ZPoly add(const ZPoly& a, const ZPoly& b) const {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.size()) r[i] += a[i];
      if (i < b.size()) r[i] += b[i];
    }
    reduce(r);
    return r;
  }
  ZPoly sub(const ZPoly& a, const ZPoly& b) const {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.size()) r[i] += a[i];
      if (i < b.size()) r[i] -= b[i];
    }
    reduce(r);
    return r;
  }
  // Division by a monic h.
  std::pair<ZPoly, ZPoly> divrem_monic(const ZPoly& f, const ZPoly& h) const {
    int dh = static_cast<int>(h.size()) - 1;
    int df = static_cast<int>(f.size()) - 1;
    if (df < dh) return {{}, f};
    ZPoly r(f), q(static_cast<std::size_t>(df - dh) + 1);
    for (int i = df; i >= dh; --i) {
      BigInt c = r[static_cast<std::size_t>(i)];
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
      q[static_cast<std::size_t>(i - dh)] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dh; ++j) r[static_cast<std::size_t>(i - dh + j)] -= c * h[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(dh));
    reduce(r);
    reduce(q);
    return {q, r};
  }
};

ZPoly lift_to_z(const ModPoly& f) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = static_cast<unsigned long>(f[i]);
  return r;
}

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic.
// On return the same relations hold modulo m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const BigInt& m) {
  ZMod R{m * m};
  ZPoly fm = f;
  R.reduce(fm);
  ZPoly e = R.sub(fm, R.mul(g, h));
  auto [q, r] = R.divrem_monic(R.mul(s, e), h);
  ZPoly g2 = R.add(g, R.add(R.mul(t, e), R.mul(q, g)));
  ZPoly h2 = R.add(h, r);
  ZPoly b = R.sub(R.add(R.mul(s, g2), R.mul(t, h2)), ZPoly{1});
  auto [c, d] = R.divrem_monic(R.mul(s, b), h2);
  ZPoly s2 = R.sub(s, d);
  ZPoly t2 = R.sub(t, R.add(R.mul(t, b), R.mul(c, g2)));
  g = std::move(g2);
  h = std::move(h2);
  s = std::move(s2);
  t = std::move(t2);
}

// Lifts f = lc(f) * prod factors (mod p) to monic factors modulo target,
// where target is p^(2^k).
void lift_tree(const ZPoly& f, std::span<const ModPoly> factors, const Fp& F, const BigInt& target,
               std::vector<ZPoly>& out) {
  if (factors.size() == 1) {
    ZMod R{target};
    ZPoly g = f;
    R.reduce(g);
    BigInt inv;
    if (!mpz_invert(inv.get_mpz_t(), g.back().get_mpz_t(), target.get_mpz_t()))
      fail(ErrorKind::InternalError, "leading coefficient not invertible during Hensel lifting");
    for (auto& c : g) c *= inv;
    R.reduce(g);
    out.push_back(std::move(g));
    return;
  }
  std::size_t k = factors.size() / 2;
  ModPoly gp = F.reduce(ZPoly{f.back()});
  for (std::size_t i = 0; i < k; ++i) gp = F.mul(gp, factors[i]);
  ModPoly hp{1};
  for (std::size_t i = k; i < factors.size(); ++i) hp = F.mul(hp, factors[i]);
  auto [one, sp, tp] = F.ext_gcd(gp, hp);
  if (one.size() != 1) fail(ErrorKind::InternalError, "modular factors are not coprime");
  ZPoly g = lift_to_z(gp), h = lift_to_z(hp), s = lift_to_z(sp), t = lift_to_z(tp);
  BigInt m(static_cast<unsigned long>(F.p));
  while (m < target) {
    hensel_step(f, g, h, s, t, m);
    m *= m;
  }
  lift_tree(g, factors.subspan(0, k), F, target, out);
  lift_tree(h, factors.subspan(k), F, target, out);
}

void symmetric(ZPoly& f, const BigInt& m) {
  BigInt half = m / 2;
  for (auto& c : f) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  ztrim(f);
}

ZPoly primitive(ZPoly f) {
  BigInt g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (f.back() < 0) g = -g;
  for (auto& c : f) c /= g;
  return f;
}

// f / g over Z when g divides f exactly.
std::optional<ZPoly> exact_quotient(const ZPoly& f, const ZPoly& g) {
  int df = static_cast<int>(f.size()) - 1, dg = static_cast<int>(g.size()) - 1;
  if (df < dg) return std::nullopt;
  ZPoly r(f), q(static_cast<std::size_t>(df - dg) + 1);
  for (int i = df; i >= dg; --i) {
    BigInt& top = r[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), g.back().get_mpz_t())) return std::nullopt;
    BigInt c = top / g.back();
    for (int j = 0; j <= dg; ++j) r[static_cast<std::size_t>(i - dg + j)] -= c * g[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(i - dg)] = std::move(c);
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  return q;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

namespace detail {

unsigned long choose_prime(const std::vector<BigInt>& f, unsigned long from) {
  for (unsigned long p = std::max(from, 5UL);; ++p) {
    if (!is_prime(p)) continue;
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    Fp F{p};
    ModPoly fp = F.reduce(f);
    ModPoly g = F.gcd(fp, F.derivative(fp));
    if (Fp::deg(g) == 0) return p;
  }
}

std::vector<ZPoly> zassenhaus(const ZPoly& f_in) {
  ZPoly f = f_in;
  ztrim(f);
  if (f.size() < 2) fail(ErrorKind::InvalidArgument, "zassenhaus needs degree >= 1");
  std::vector<ZPoly> result;
  if (f[0] == 0) {
    result.push_back(ZPoly{0, 1});
    f.erase(f.begin());
  }
  if (f.size() == 2) {
    result.push_back(primitive(f));
    return result;
  }
  if (f.size() == 1) return result;

  // Among the first few good primes keep the one with the fewest modular
  // factors. Every degree of a rational factor is a subset sum of modular
  // degrees for each prime, which prunes the recombination below.
  const std::size_t n = f.size() - 1;
  std::vector<char> allowed(n + 1, 1);
  unsigned long p = 0;
  std::vector<ModPoly> modular;
  for (unsigned long q = 5, trial = 0; trial < 5; ++trial, ++q) {
    q = choose_prime(f, q);
    Fp Fq{q};
    std::vector<ModPoly> factors = factor_mod_p(Fq, Fq.monic(Fq.reduce(f)));
    std::vector<char> sums(n + 1, 0);
    sums[0] = 1;
    for (const auto& g : factors)
      for (std::size_t d = n + 1; d-- > static_cast<std::size_t>(Fp::deg(g));)
        if (sums[d - static_cast<std::size_t>(Fp::deg(g))]) sums[d] = 1;
    for (std::size_t d = 0; d <= n; ++d) allowed[d] = allowed[d] && sums[d];
    if (p == 0 || factors.size() < modular.size()) {
      p = q;
      modular = std::move(factors);
    }
    if (modular.size() == 1) break;
  }
  bool proper = false;
  for (std::size_t d = 1; d < n; ++d) proper = proper || allowed[d];
  if (modular.size() == 1 || !proper) {
    result.push_back(primitive(f));
    return result;
  }
  Fp F{p};

  // Coefficients of lc(f) * g for any factor g are bounded by |lc| 2^n ||f||_2.
  BigInt norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  BigInt norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  BigInt bound = abs(f.back()) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
  BigInt target(static_cast<unsigned long>(p));
  while (target <= 2 * bound) target *= target;

  std::vector<ZPoly> lifted;
  lift_tree(f, modular, F, target, lifted);

  std::vector<std::size_t> alive(lifted.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  ZPoly rest = f;
  std::size_t s = 1;
  while (2 * s <= alive.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    const BigInt lc = rest.back();
    const BigInt lc_c0 = lc * rest[0];
    do {
      std::size_t degree = 0;
      for (std::size_t i : idx) degree += lifted[alive[i]].size() - 1;
      if (!allowed[degree]) continue;
      BigInt c0 = lc;
      for (std::size_t i : idx) {
        c0 *= lifted[alive[i]][0];
        mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), target.get_mpz_t());
      }
      if (c0 > target / 2) c0 -= target;
      if (c0 == 0 || !mpz_divisible_p(lc_c0.get_mpz_t(), c0.get_mpz_t())) continue;
      ZMod R{target};
      ZPoly g{lc};
      for (std::size_t i : idx) g = R.mul(g, lifted[alive[i]]);
      symmetric(g, target);
      g = primitive(g);
      auto q = exact_quotient(rest, g);
      if (!q) continue;
      result.push_back(g);
      rest = primitive(*q);
      std::vector<std::size_t> keep;
      for (std::size_t i = 0, j = 0; i < alive.size(); ++i) {
        if (j < idx.size() && idx[j] == i) {
          ++j;
          continue;
        }
        keep.push_back(alive[i]);
      }
      alive = std::move(keep);
      found = true;
      break;
    } while (next_combination(idx, alive.size()));
    if (!found) ++s;
  }
  if (rest.size() > 1) result.push_back(primitive(rest));
  return result;
}

}  // namespace detail

QPoly Factorization::expand() const {
  QPoly out = QPoly::constant(content);
  for (const auto& [g, e] : factors) out *= pow(g, static_cast<unsigned>(e));
  return out;
}

namespace {

bool poly_less(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    auto c = a[i] <=> b[i];
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace

Factorization factor_rational(const QPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
  Factorization out;
  out.content = f.lc();
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    auto [content, z] = primitive_part(part);
    for (const auto& g : detail::zassenhaus(z)) out.factors.emplace_back(from_integers(g).monic(), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (a.first == b.first) return a.second < b.second;
    return poly_less(a.first, b.first);
  });
  return out;
}

bool is_irreducible(const QPoly& f) {
  if (f.degree() < 1) return false;
  auto fac = factor_rational(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace canht
