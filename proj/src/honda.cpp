#include "iwasawa/honda.hpp"

#include <algorithm>

namespace iwasawa {

namespace {

int floor_log(std::uint32_t p, int d) {
  int l = 0;
  for (long q = p; q <= d; q *= p) ++l;
  return l;
}

int ceil_log(std::uint32_t p, int d) {
  int l = 0;
  for (long q = 1; q < d; q *= p) ++l;
  return l;
}

int val_int(std::uint32_t p, long j) {
  int v = 0;
  while (j % p == 0) {
    j /= p;
    ++v;
  }
  return v;
}

void check_type(std::uint32_t p, const PadicScalar& a) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("p must be an odd prime, got " + std::to_string(p));
  if (a.is_unit()) throw InvalidArgument("a_p must be divisible by p");
}

// ((1 + x)^{p^k} - 1) for k = 0..K-1 and their derivatives' companions
// (1 + x)^{p^k - 1}, all modulo p^M.
struct PowerTable {
  std::vector<u128> minus_one;
  std::vector<u128> derivative;
};

PowerTable powers_of(const PadicRing& ring, u128 x, int K) {
  PowerTable t;
  const u128 one = ring.reduce(1);
  const u128 base = ring.add(one, x);
  const u128 base_inv = ring.inverse(base);
  u128 y = base;
  for (int k = 0; k < K; ++k) {
    t.minus_one.push_back(ring.sub(y, one));
    t.derivative.push_back(ring.mul(y, base_inv));
    y = ring.pow(y, ring.prime());
  }
  return t;
}

}  // namespace

HondaType HondaType::make(std::uint32_t p, std::string_view a_p_decimal) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("p must be an odd prime, got " + std::to_string(p));
  const PadicRing& ring = PadicRing::get(p, PadicRing::max_precision(p));
  HondaType t{p, PadicScalar::parse(ring, a_p_decimal)};
  check_type(p, t.a_p);
  return t;
}

HondaType HondaType::make(std::uint32_t p, std::int64_t a_p) { return make(p, std::to_string(a_p)); }

HondaCoeffs honda_coeffs(const HondaType& type, int K, int W) {
  const std::uint32_t p = type.p;
  const PadicNumber a = PadicNumber::from_scalar(type.a_p_at(W));
  HondaCoeffs c;
  PadicNumber prev = PadicNumber::zero(p);
  c.x.push_back(PadicNumber::from_integer(p, 1, W));
  for (int k = 1; k <= K; ++k) {
    const PadicNumber next = (a * c.x[k - 1] - prev).times_p_power(-1);
    prev = c.x[k - 1];
    c.x.push_back(next);
  }
  return c;
}

bool check_recursion(const HondaType& type, const HondaCoeffs& c) {
  if (c.x.empty() || c.x[0].is_zero() || c.x[0].shift() != 0 || !(c.x[0].unit().value() == 1)) return false;
  const int W = c.x[0].absolute_precision();
  const PadicNumber a = PadicNumber::from_scalar(type.a_p_at(W));
  const PadicNumber p = PadicNumber::from_integer(type.p, type.p, W);
  for (std::size_t k = 1; k < c.x.size(); ++k) {
    const PadicNumber older = k >= 2 ? c.x[k - 2] : PadicNumber::zero(type.p);
    if (!(p * c.x[k] - a * c.x[k - 1] + older).is_zero()) return false;
  }
  return true;
}

SeriesPlan log_plan(std::uint32_t p, int degree, int target) {
  const int L = floor_log(p, degree);
  // term k has valuation >= floor(k/2) - v(j), and v(j) <= L
  SeriesPlan s;
  s.terms = 2 * (target + L) + 2;
  s.working_precision = target + L + 2;
  return s;
}

TruncatedSeries log_series(const HondaType& type, int degree, int target) {
  if (degree < 1) throw InvalidArgument("log series needs degree >= 1");
  const std::uint32_t p = type.p;
  const SeriesPlan plan = log_plan(p, degree, target);
  const int W = plan.working_precision;
  if (W > PadicRing::max_precision(p))
    throw PrecisionExhausted("log series at target " + std::to_string(target) + " needs more than the supported " +
                             std::to_string(PadicRing::max_precision(p)) + " digits");
  const PadicRing& ring = PadicRing::get(p, W);
  const HondaCoeffs hc = honda_coeffs(type, plan.terms - 1, W);

  std::vector<PadicNumber> c(static_cast<std::size_t>(degree) + 1, PadicNumber::zero(p));
  long pk = 1;  // p^k while it fits, saturated beyond the degree
  for (int k = 0; k < plan.terms; ++k) {
    // binom(p^k, j) = p^{k - v(j)} * U_j / j' with U_j the product of the
    // units (p^{k - v(i)} - i') / i' over 1 <= i < j
    u128 U = ring.reduce(1);
    for (int j = 1; j <= degree && j <= pk; ++j) {
      if (j > 1) {
        const int i = j - 1;
        const int v = val_int(p, i);
        const u128 ip = ring.reduce(static_cast<u128>(i / static_cast<long>(ring.prime_power(v))));
        const u128 top = ring.sub(k - v >= W ? 0 : ring.prime_power(k - v), ip);
        U = ring.mul(U, ring.mul(top, ring.inverse(ip)));
      }
      const int vj = val_int(p, j);
      const u128 jp = ring.reduce(static_cast<u128>(j / static_cast<long>(ring.prime_power(vj))));
      const PadicNumber binom = PadicNumber::from_parts(k - vj, PadicScalar::from_raw(ring, ring.mul(U, ring.inverse(jp))));
      c[j] += hc.x[k] * binom;
    }
    if (pk <= degree) pk *= p;
  }
  // the omitted tail k >= terms has valuation >= floor(terms/2) - v(j)
  for (int j = 1; j <= degree; ++j) c[j] = c[j].truncated(plan.terms / 2 - val_int(p, j));
  return TruncatedSeries::univariate(p, std::move(c));
}

TruncatedSeries exp_series(const TruncatedSeries& log) { return log.compositional_inverse(); }

namespace {

GroupLaw build_law(const HondaType& type, int degree, int log_target) {
  const std::uint32_t p = type.p;
  TruncatedSeries log = log_series(type, degree, log_target);
  TruncatedSeries exp = exp_series(log);
  TruncatedSeries X = TruncatedSeries::variable(p, 2, degree, 0);
  TruncatedSeries Y = TruncatedSeries::variable(p, 2, degree, 1);
  const TruncatedSeries lx = TruncatedSeries::compose(log, std::span(&X, 1));
  const TruncatedSeries ly = TruncatedSeries::compose(log, std::span(&Y, 1));
  const TruncatedSeries sum = lx + ly;
  TruncatedSeries law = TruncatedSeries::compose(exp, std::span(&sum, 1));
  return {std::move(log), std::move(exp), std::move(law), log_target};
}

}  // namespace

int law_precision(const GroupLaw& g) { return g.law.min_absolute_precision(); }

GroupLaw group_law(const HondaType& type, int degree, int target) {
  const std::uint32_t p = type.p;
  int log_target = target + 2 * ceil_log(p, degree);
  GroupLaw g = build_law(type, degree, log_target);
  // raise the log precision until the law is known to the target
  while (law_precision(g) < target) {
    log_target += target - law_precision(g);
    g = build_law(type, degree, log_target);
  }
  for (std::size_t i = 0; i < g.law.size(); ++i) {
    const PadicNumber& c = g.law.at(i);
    if (!c.is_zero() && c.shift() < 0) {
      const auto& e = g.law.index().exponents(i);
      throw IntegralityViolation("group law coefficient of X^" + std::to_string(e[0]) + " Y^" +
                                 std::to_string(e[1]) + " has valuation " + std::to_string(c.shift()));
    }
    if (c.is_zero() && c.absolute_precision() < 0)
      throw PrecisionExhausted("group law coefficient unknown modulo 1");
  }
  return g;
}

bool unit_axiom_holds(const GroupLaw& g) {
  const TruncatedSeries fx0 = g.law.with_zero(1);
  TruncatedSeries X = TruncatedSeries::variable(g.law.prime(), 2, g.law.degree(), 0);
  return (fx0 - X).is_zero();
}

bool symmetric(const GroupLaw& g) {
  const TruncatedSeries s = g.law.swapped(0, 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const PadicNumber& a = g.law.at(i);
    const PadicNumber& b = s.at(i);
    if (a.is_zero() != b.is_zero()) return false;
    if (!a.is_zero() && (a.shift() != b.shift() || a.absolute_precision() != b.absolute_precision() ||
                         !(a.unit() == b.unit())))
      return false;
  }
  return true;
}

namespace {

int residual_precision(const TruncatedSeries& diff) { return diff.is_zero() ? diff.min_absolute_precision() : -1; }

}  // namespace

int homomorphism_residual(const GroupLaw& g) {
  const std::uint32_t p = g.law.prime();
  const int D = g.law.degree();
  TruncatedSeries X = TruncatedSeries::variable(p, 2, D, 0);
  TruncatedSeries Y = TruncatedSeries::variable(p, 2, D, 1);
  const TruncatedSeries lf = TruncatedSeries::compose(g.log, std::span(&g.law, 1));
  const TruncatedSeries lx = TruncatedSeries::compose(g.log, std::span(&X, 1));
  const TruncatedSeries ly = TruncatedSeries::compose(g.log, std::span(&Y, 1));
  return residual_precision(lf - lx - ly);
}

int associativity_residual(const GroupLaw& g, int degree) {
  const std::uint32_t p = g.law.prime();
  if (degree > g.law.degree()) throw InvalidArgument("associativity degree exceeds the law's truncation");
  const TruncatedSeries X = TruncatedSeries::variable(p, 3, degree, 0);
  const TruncatedSeries Y = TruncatedSeries::variable(p, 3, degree, 1);
  const TruncatedSeries Z = TruncatedSeries::variable(p, 3, degree, 2);
  const TruncatedSeries xy_args[] = {X, Y};
  const TruncatedSeries yz_args[] = {Y, Z};
  const TruncatedSeries fxy = TruncatedSeries::compose(g.law, xy_args);
  const TruncatedSeries fyz = TruncatedSeries::compose(g.law, yz_args);
  const TruncatedSeries left_args[] = {fxy, Z};
  const TruncatedSeries right_args[] = {X, fyz};
  return residual_precision(TruncatedSeries::compose(g.law, left_args) - TruncatedSeries::compose(g.law, right_args));
}

// ---------------------------------------------------------------------------

namespace {

struct PointEval {
  PadicNumber value;
  PadicNumber derivative;
};

// The full log and its derivative at x (a residue modulo p^M with p | x).
// Term k of the log has valuation >= floor(k/2) + 1 and of the derivative
// >= floor(k/2); the values are capped at what the omitted tail allows.
PointEval eval_log(const HondaType& type, const PadicRing& ring, u128 x, const HondaCoeffs& hc) {
  const std::uint32_t p = type.p;
  const int K = static_cast<int>(hc.x.size());
  const PowerTable t = powers_of(ring, x, K);
  PointEval out{PadicNumber::zero(p), PadicNumber::zero(p)};
  u128 pk = ring.reduce(1);
  for (int k = 0; k < K; ++k) {
    out.value += hc.x[k] * PadicNumber::from_scalar(PadicScalar::from_raw(ring, t.minus_one[k]));
    out.derivative +=
        hc.x[k] * PadicNumber::from_scalar(PadicScalar::from_raw(ring, ring.mul(pk, t.derivative[k])));
    pk = ring.mul(pk, ring.prime_power(1));
  }
  const int tail = K / 2;
  return {out.value.truncated(tail + 1), out.derivative.truncated(tail)};
}

}  // namespace

PadicNumber log_at(const HondaType& type, const PadicScalar& x, int target) {
  const std::uint32_t p = type.p;
  if (x.prime() != p) throw PrecisionMismatch("point over a different prime");
  if (x.is_unit()) throw InvalidArgument("log converges only on pZ_p");
  const int M = 2 * target + 2;
  if (M > PadicRing::max_precision(p)) throw PrecisionExhausted("log evaluation target too large");
  const PadicRing& ring = PadicRing::get(p, M);
  const HondaCoeffs hc = honda_coeffs(type, 2 * target + 1, M);
  return eval_log(type, ring, ring.reduce(x.value()), hc).value.truncated(target);
}

Epsilon solve_epsilon(const HondaType& type, int target) {
  const std::uint32_t p = type.p;
  if (target < 1) throw InvalidArgument("epsilon target must be >= 1");
  const int M = 2 * target + 2;
  if (M > PadicRing::max_precision(p)) throw PrecisionExhausted("epsilon target too large");
  const PadicRing& ring = PadicRing::get(p, M);
  const HondaCoeffs hc = honda_coeffs(type, 2 * target + 1, M);

  const PadicScalar a = type.a_p_at(M);
  const PadicScalar t = PadicScalar(ring, p) * (PadicScalar(ring, p + 1) - a).inverse();
  const PadicNumber tn = PadicNumber::from_scalar(t).truncated(target);

  u128 eps = t.value();
  int last_step = 0;
  for (int it = 1; it <= 4 * target + 8; ++it) {
    const PointEval e = eval_log(type, ring, eps, hc);
    const PadicNumber r = (e.value - tn).truncated(target);
    if (r.is_zero()) {
      Epsilon out{PadicScalar::from_raw(ring, eps).with_precision(target), r, it - 1};
      return out;
    }
    const PadicNumber step = r / e.derivative;
    if (step.shift() <= last_step) throw NonConvergence("Newton step for epsilon did not contract");
    last_step = step.shift();
    eps = ring.sub(eps, step.to_scalar(M).value());
  }
  throw NonConvergence("Newton iteration for epsilon did not converge");
}

PadicScalar trace_unit_u(const PadicRing& ring, const PadicScalar& a_p) {
  if (&a_p.ring() != &ring) throw PrecisionMismatch("a_p from a different ring");
  check_type(ring.prime(), a_p);
  const PadicScalar two(ring, 2);
  return a_p - PadicScalar(ring, ring.prime() - 1) * (a_p - two).inverse();
}

}  // namespace iwasawa
