#include "canht/borel.hpp"

#include <numeric>

#include "canht/error.hpp"

namespace canht {

BorelElement::BorelElement(Raw, FieldElem a, FieldElem b, FieldElem c, FieldElem lambda, FieldElem mu,
                           FieldElem epsilon, FieldElem theta, FieldElem eta)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      lambda_(std::move(lambda)),
      mu_(std::move(mu)),
      epsilon_(std::move(epsilon)),
      theta_(std::move(theta)),
      eta_(std::move(eta)) {}

BorelElement::BorelElement(FieldElem a, FieldElem b, FieldElem c, FieldElem lambda, FieldElem mu, FieldElem epsilon)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      lambda_(std::move(lambda)),
      mu_(std::move(mu)),
      epsilon_(std::move(epsilon)),
      theta_(a_.field()),
      eta_(a_.field()) {
  const NumberField& K = a_.field();
  for (const FieldElem* x : {&b_, &c_, &lambda_, &mu_, &epsilon_})
    if (!(x->field() == K)) fail(ErrorKind::FieldMismatch, "Borel coordinates from different fields");
  if (lambda_.is_zero() || mu_.is_zero() || epsilon_.is_zero())
    fail(ErrorKind::ZeroParameter, "diagonal entries must be nonzero");
  theta_ = lambda_ * mu_.inverse();
  eta_ = mu_ * epsilon_.inverse();
}

BorelElement BorelElement::identity(const NumberField& K) {
  FieldElem zero(K), one(K, Rational(1));
  return BorelElement(Raw{}, zero, zero, zero, one, one, one, one, one);
}

BorelElement BorelElement::from_matrix(const MatrixK& m) {
  if (m.size() != 3) fail(ErrorKind::InvalidArgument, "Borel elements are 3x3");
  if (!m(1, 0).is_zero() || !m(2, 0).is_zero() || !m(2, 1).is_zero())
    fail(ErrorKind::InvalidArgument, "matrix is not upper triangular");
  if (m(0, 0).is_zero() || m(1, 1).is_zero() || m(2, 2).is_zero())
    fail(ErrorKind::InvalidArgument, "matrix is singular");
  FieldElem mu_inv = m(1, 1).inverse(), eps_inv = m(2, 2).inverse();
  return BorelElement(m(0, 1) * mu_inv, m(0, 2) * eps_inv, m(1, 2) * eps_inv, m(0, 0), m(1, 1), m(2, 2));
}

BorelElement BorelElement::with_unipotent(FieldElem a, FieldElem b, FieldElem c) const {
  const NumberField& K = field();
  for (const FieldElem* x : {&a, &b, &c})
    if (!(x->field() == K)) fail(ErrorKind::FieldMismatch, "Borel coordinates from different fields");
  return BorelElement(Raw{}, std::move(a), std::move(b), std::move(c), lambda_, mu_, epsilon_, theta_, eta_);
}

MatrixK BorelElement::to_matrix() const {
  const NumberField& K = field();
  FieldElem zero(K);
  return MatrixK(K, {{lambda_, a_ * mu_, b_ * epsilon_}, {zero, mu_, c_ * epsilon_}, {zero, zero, epsilon_}});
}

bool BorelElement::is_identity() const {
  return a_.is_zero() && b_.is_zero() && c_.is_zero() && lambda_.is_one() && mu_.is_one() && epsilon_.is_one();
}

bool operator==(const BorelElement& p, const BorelElement& q) {
  return p.a_ == q.a_ && p.b_ == q.b_ && p.c_ == q.c_ && p.lambda_ == q.lambda_ && p.mu_ == q.mu_ &&
         p.epsilon_ == q.epsilon_;
}

BorelElement borel_mul(const BorelElement& p, const BorelElement& q) {
  if (!(p.field() == q.field())) fail(ErrorKind::FieldMismatch, "Borel elements over different fields");
  // S A' S^-1 = [[1, theta a', theta eta b'], [0, 1, eta c'], [0, 0, 1]].
  FieldElem ta = p.theta_ * q.a_;
  FieldElem ec = p.eta_ * q.c_;
  FieldElem b = p.b_ + p.theta_ * p.eta_ * q.b_ + p.a_ * ec;
  return BorelElement(BorelElement::Raw{}, p.a_ + ta, std::move(b), p.c_ + ec, p.lambda_ * q.lambda_, p.mu_ * q.mu_,
                      p.epsilon_ * q.epsilon_, p.theta_ * q.theta_, p.eta_ * q.eta_);
}

BorelElement borel_pow(const BorelElement& p, long long n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "Borel powers need n >= 1");
  BorelElement result = p, base = p;
  --n;
  while (n > 0) {
    if (n & 1) result = borel_mul(result, base);
    n >>= 1;
    if (n > 0) base = borel_mul(base, base);
  }
  return result;
}

BorelElement borel_inverse(const BorelElement& p) {
  // (A, S)^-1 = (S^-1 A^-1 S, S^-1) with A^-1 = [[1, -a, ac - b], [0, 1, -c], [0, 0, 1]].
  FieldElem ti = p.theta().inverse(), ei = p.eta().inverse();
  return BorelElement(-(p.a() * ti), (p.a() * p.c() - p.b()) * ti * ei, -(p.c() * ei), p.lambda().inverse(),
                      p.mu().inverse(), p.epsilon().inverse());
}

std::string to_string(BorelStratum s) { return "S" + std::to_string(static_cast<int>(s)); }

std::optional<TorsionDiagonal> classify_diagonal(const BorelElement& p) {
  long long d = 1;
  for (const FieldElem* x : {&p.lambda(), &p.mu(), &p.epsilon()}) {
    auto k = is_root_of_unity(*x);
    if (!k) return std::nullopt;
    d = std::lcm(d, static_cast<long long>(*k));
  }
  const bool t1 = p.theta().is_one(), e1 = p.eta().is_one(), te1 = (p.theta() * p.eta()).is_one();
  TorsionDiagonal out;
  out.order = d;
  if (t1 && e1)
    out.stratum = BorelStratum::S0;
  else if (e1)
    out.stratum = BorelStratum::S1;
  else if (t1)
    out.stratum = BorelStratum::S2;
  else if (te1)
    out.stratum = BorelStratum::S3;
  else
    out.stratum = BorelStratum::S4;
  return out;
}

std::optional<long long> borel_is_torsion_strata(const BorelElement& p) {
  return borel_is_torsion_strata(p, classify_diagonal(p));
}

std::optional<long long> borel_is_torsion_strata(const BorelElement& p, const std::optional<TorsionDiagonal>& diag) {
  if (!diag) return std::nullopt;
  bool holds = false;
  switch (diag->stratum) {
    case BorelStratum::S0:
      holds = p.a().is_zero() && p.b().is_zero() && p.c().is_zero();
      break;
    case BorelStratum::S1:
      holds = p.c().is_zero();
      break;
    case BorelStratum::S2:
      holds = p.a().is_zero();
      break;
    case BorelStratum::S3: {
      FieldElem one(p.field(), Rational(1));
      holds = (one - p.theta()) * p.b() == p.a() * p.c();
      break;
    }
    case BorelStratum::S4:
      holds = true;
      break;
  }
  if (!holds) return std::nullopt;
  const long long d = diag->order;
  BorelElement pd = borel_pow(p, d);
  if (pd.is_identity()) return d;
  if (borel_mul(pd, pd).is_identity()) return 2 * d;
  fail(ErrorKind::InternalError, "stratum condition holds but p^d and p^2d are not the identity");
}

std::optional<long long> borel_is_torsion_bruteforce(const BorelElement& p, long long n_max) {
  if (n_max < 1) fail(ErrorKind::InvalidArgument, "n_max must be positive");
  BorelElement q = p;
  for (long long n = 1; n <= n_max; ++n) {
    if (q.is_identity()) return n;
    if (n < n_max) q = borel_mul(q, p);
  }
  return std::nullopt;
}

bool borel_closure_equation(const BorelElement& p) {
  FieldElem one(p.field(), Rational(1));
  return (one - p.theta()) * p.b() == p.a() * p.c();
}

}  // namespace canht
