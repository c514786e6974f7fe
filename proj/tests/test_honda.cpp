#include <gtest/gtest.h>

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

#include "iwasawa/honda.hpp"

using namespace iwasawa;
using boost::multiprecision::cpp_int;

namespace {

cpp_int ipow(long p, int k) { return boost::multiprecision::pow(cpp_int(p), k); }

// x_k as exact rationals via p x_k = a x_{k-1} - x_{k-2}, all over p^k.
std::vector<cpp_int> honda_numerators(long p, long a, int K) {
  // x_k = n_k / p^k with n_k = a n_{k-1} - p n_{k-2}
  std::vector<cpp_int> n{1};
  cpp_int prev = 0;
  for (int k = 1; k <= K; ++k) {
    const cpp_int next = a * n.back() - p * prev;
    prev = n.back();
    n.push_back(next);
  }
  return n;
}

cpp_int binom(const cpp_int& top, int j) {
  cpp_int r = 1;
  for (int i = 0; i < j; ++i) r = r * (top - i) / (i + 1);
  return r;
}

// checks that a equals num / p^s modulo p^k
bool agrees(const PadicNumber& a, const cpp_int& num, int s, long p, int k) {
  // scale by p^S to make everything integral
  const int S = s + 5;
  const PadicNumber scaled = a.times_p_power(S);
  const int prec = std::min(k + S, 70);
  const cpp_int m = ipow(p, prec);
  cpp_int want = num * ipow(p, S - s) % m;
  if (want < 0) want += m;
  if (scaled.is_zero()) return want == 0 && scaled.absolute_precision() >= prec;
  if (scaled.shift() < 0) return false;
  const u128 got = scaled.to_scalar(prec).value();
  cpp_int g = static_cast<std::uint64_t>(got >> 64);
  g <<= 64;
  g += static_cast<std::uint64_t>(got);
  return g == want;
}

struct LawEntry {
  int i, j;
  long value;
};

}  // namespace

TEST(HondaCoeffs, Recursion) {
  const HondaType t = HondaType::make(3, 0);
  const HondaCoeffs c = honda_coeffs(t, 8, 20);
  ASSERT_EQ(c.x.size(), 9u);
  // a_p = 0: x_{2m} = (-1/p)^m, x_odd = 0
  EXPECT_EQ(c.x[2].shift(), -1);
  EXPECT_EQ(c.x[2].unit(), PadicScalar(PadicRing::get(3, c.x[2].relative_precision()), -1));
  EXPECT_TRUE(c.x[3].is_zero());
  EXPECT_EQ(c.x[8].shift(), -4);
  EXPECT_TRUE(check_recursion(t, c));
  HondaCoeffs bad = c;
  bad.x[4] = bad.x[4] + PadicNumber::from_integer(3, 1, 20);
  EXPECT_FALSE(check_recursion(t, bad));
}

TEST(HondaCoeffs, ValuationLowerBound) {
  for (std::int64_t a : {3, 6, -3, 9}) {
    const HondaType t = HondaType::make(3, a);
    const HondaCoeffs c = honda_coeffs(t, 20, 30);
    for (int k = 0; k <= 20; ++k)
      if (!c.x[k].is_zero()) {
        EXPECT_GE(c.x[k].shift(), -(k + 1) / 2) << a << " " << k;
      }
  }
}

TEST(HondaType, Validation) {
  EXPECT_THROW(HondaType::make(3, 1), InvalidArgument);
  EXPECT_THROW(HondaType::make(2, 0), InvalidArgument);
  EXPECT_THROW(HondaType::make(15, 0), InvalidArgument);
  EXPECT_THROW(HondaType::make(3, "abc"), InvalidArgument);
  EXPECT_EQ(HondaType::make(5, -5).a_p_at(3), PadicScalar(PadicRing::get(5, 3), 120));
}

TEST(LogSeries, MatchesExactRationalSum) {
  struct Case {
    long p;
    long a;
    int D;
    int target;
  };
  for (Case c : {Case{3, 0, 10, 12}, Case{3, 3, 10, 12}, Case{5, 5, 8, 8}, Case{3, -6, 9, 10}}) {
    const HondaType t = HondaType::make(static_cast<std::uint32_t>(c.p), c.a);
    const TruncatedSeries log = log_series(t, c.D, c.target);
    int L = 0;
    for (long q = c.p; q <= c.D; q *= c.p) ++L;
    // tail beyond K terms has valuation >= floor(K/2) - L
    const int K = 2 * (c.target + L) + 12;
    const auto n = honda_numerators(c.p, c.a, K);
    for (int j = 1; j <= c.D; ++j) {
      // sum_k n_k / p^k binom(p^k, j) over a common denominator p^K
      cpp_int s = 0;
      for (int k = 0; k < K; ++k) s += n[k] * binom(ipow(c.p, k), j) * ipow(c.p, K - k);
      const PadicNumber& got = log[j];
      EXPECT_GE(got.absolute_precision(), c.target) << "j=" << j;
      EXPECT_TRUE(agrees(got, s, K, c.p, got.absolute_precision())) << "p=" << c.p << " a=" << c.a << " j=" << j;
    }
  }
}

TEST(LogSeries, LinearTermIsAUnit) {
  const TruncatedSeries log = log_series(HondaType::make(7, 14), 6, 8);
  EXPECT_TRUE(log[0].is_zero());
  EXPECT_EQ(log[1].shift(), 0);
}

TEST(ExpSeries, InvertsLog) {
  const HondaType t = HondaType::make(3, 3);
  const TruncatedSeries log = log_series(t, 9, 14);
  const TruncatedSeries exp = exp_series(log);
  const TruncatedSeries X = TruncatedSeries::variable(3, 1, 9, 0);
  EXPECT_TRUE((TruncatedSeries::compose(log, std::span(&exp, 1)) - X).is_zero());
  EXPECT_TRUE((TruncatedSeries::compose(exp, std::span(&log, 1)) - X).is_zero());
}

TEST(ExpSeries, ValuationsMatchExactComputation) {
  // ord_p of the exp coefficients of degree 1..10, from exact rationals
  struct Frozen {
    std::uint32_t p;
    std::int64_t a;
    std::vector<int> log_vals, exp_vals;
  };
  for (const Frozen& f : {Frozen{3, 0, {0, 1, 0, 1, 1, 0, 1, 1, -1, 2}, {0, 1, 0, 1, 2, 0, 1, 1, -1, 0}},
                          Frozen{3, 3, {0, 2, 3, 1, 1, 0, 1, 1, -1, 2}, {0, 2, 3, 1, 1, 0, 1, 1, -1, 2}},
                          Frozen{5, 0, {0, 1, 1, 1, 0, 1, 1, 1, 1, 0}, {0, 1, 1, 1, 0, 1, 1, 1, 2, 0}}}) {
    const GroupLaw g = group_law(HondaType::make(f.p, f.a), 10, 10);
    for (int j = 1; j <= 10; ++j) {
      ASSERT_FALSE(g.log[j].is_zero());
      ASSERT_FALSE(g.exp[j].is_zero());
      EXPECT_EQ(g.log[j].shift(), f.log_vals[j - 1]) << f.p << " " << f.a << " " << j;
      EXPECT_EQ(g.exp[j].shift(), f.exp_vals[j - 1]) << f.p << " " << f.a << " " << j;
    }
    EXPECT_EQ(g.exp.min_valuation(), *std::min_element(f.exp_vals.begin(), f.exp_vals.end()));
  }
}

TEST(GroupLaw, MatchesFrozenCoefficients) {
  // F(X, Y) modulo p^T from an independent exact-rational computation of
  // exp(log X + log Y) in Python fractions
  struct Frozen {
    std::uint32_t p;
    std::int64_t a;
    int D;
    int T;
    std::vector<LawEntry> entries;
  };
  const std::vector<Frozen> cases = {
      {3, 0, 6, 8, {{1, 1, 3750}, {1, 2, 417}, {1, 3, 3471}, {1, 4, 2586}, {1, 5, 186}, {2, 2, 4158}, {2, 3, 753},
                    {2, 4, 1275}, {3, 3, 3728}, {2, 0, 0}, {6, 0, 0}}},
      {3, 3, 6, 8, {{1, 1, 5526}, {1, 2, 3078}, {1, 3, 4434}, {1, 4, 6447}, {1, 5, 2517}, {2, 2, 3006}, {2, 3, 5037},
                    {2, 4, 5226}, {3, 3, 4466}}},
      {3, -3, 6, 8, {{1, 1, 2838}, {1, 2, 1311}, {1, 3, 1167}, {1, 4, 4152}, {1, 5, 2868}, {2, 2, 5562},
                     {2, 3, 2724}, {2, 4, 3309}, {3, 3, 2330}}},
      {5, 5, 5, 6, {{1, 1, 5725}, {1, 2, 10725}, {1, 3, 1350}, {1, 4, 5000}, {2, 2, 12025}, {2, 3, 3750}}},
  };
  for (const auto& c : cases) {
    const GroupLaw g = group_law(HondaType::make(c.p, c.a), c.D, c.T);
    ASSERT_GE(law_precision(g), c.T);
    for (const auto& e : c.entries) {
      for (const auto& [i, j] : {std::pair{e.i, e.j}, std::pair{e.j, e.i}}) {
        const PadicNumber& got = g.law.coefficient({i, j, 0});
        EXPECT_TRUE(agrees(got, e.value, 0, c.p, c.T))
            << "p=" << c.p << " a=" << c.a << " X^" << i << " Y^" << j << ": " << describe(got);
      }
    }
  }
}

TEST(GroupLaw, Axioms) {
  struct Case {
    std::uint32_t p;
    std::int64_t a;
    int D;
  };
  for (Case c : {Case{3, 0, 12}, Case{3, 3, 12}, Case{5, 0, 10}, Case{5, 5, 8}, Case{7, -7, 8}}) {
    const GroupLaw g = group_law(HondaType::make(c.p, c.a), c.D, 10);
    EXPECT_GE(law_precision(g), 10);
    EXPECT_GE(g.law.min_valuation(), 0);
    EXPECT_TRUE(unit_axiom_holds(g));
    EXPECT_TRUE(symmetric(g));
    EXPECT_GE(homomorphism_residual(g), 10);
    EXPECT_GE(associativity_residual(g, 6), 10);
  }
}

TEST(GroupLaw, LogAloneIsNotIntegral) {
  // the log has denominators, the law built from it does not
  const GroupLaw g = group_law(HondaType::make(3, 0), 9, 8);
  EXPECT_LT(g.log.min_valuation(), 0);
  EXPECT_LT(g.exp.min_valuation(), 0);
  EXPECT_GE(g.law.min_valuation(), 0);
}

TEST(GroupLaw, NonHondaLogFailsIntegrality) {
  // perturbing the log breaks integrality of exp(log X + log Y)
  GroupLaw g = group_law(HondaType::make(3, 0), 6, 8);
  TruncatedSeries log = g.log;
  log.at(2) = log.at(2) + PadicNumber::from_integer(3, 1, 10).times_p_power(-1);
  const TruncatedSeries exp = exp_series(log);
  const TruncatedSeries X = TruncatedSeries::variable(3, 2, 6, 0);
  const TruncatedSeries Y = TruncatedSeries::variable(3, 2, 6, 1);
  const TruncatedSeries sum = TruncatedSeries::compose(log, std::span(&X, 1)) + TruncatedSeries::compose(log, std::span(&Y, 1));
  const TruncatedSeries law = TruncatedSeries::compose(exp, std::span(&sum, 1));
  EXPECT_LT(law.min_valuation(), 0);
}

TEST(Epsilon, MatchesFrozenValues) {
  // digit-by-digit Hensel search on exact rational log values
  struct Frozen {
    std::uint32_t p;
    std::int64_t a;
    int T;
    long value;
  };
  for (Frozen f : {Frozen{3, 0, 10, 1596}, Frozen{3, 3, 10, 26814}, Frozen{5, 0, 8, 246505},
                   Frozen{5, 5, 8, 338755}, Frozen{7, 14, 6, 61404}}) {
    const HondaType t = HondaType::make(f.p, f.a);
    const Epsilon e = solve_epsilon(t, f.T);
    EXPECT_EQ(e.value, PadicScalar(PadicRing::get(f.p, f.T), f.value)) << f.p << " " << f.a;
    EXPECT_TRUE(e.residual.is_zero());
    // eps = p mod p^2
    EXPECT_EQ(e.value.with_precision(2), PadicScalar(PadicRing::get(f.p, 2), f.p));
  }
}

TEST(Epsilon, LogAtAgreesWithTheTarget) {
  const HondaType t = HondaType::make(3, 3);
  const Epsilon e = solve_epsilon(t, 12);
  const PadicNumber v = log_at(t, e.value, 12);
  const PadicRing& ring = PadicRing::get(3, 12);
  const PadicScalar want = PadicScalar(ring, 3) * (PadicScalar(ring, 4) - PadicScalar(ring, 3)).inverse();
  EXPECT_EQ(v.to_scalar(12), want);
  EXPECT_THROW(log_at(t, PadicScalar(ring, 1), 12), InvalidArgument);
}

TEST(TraceUnit, Values) {
  // u = a_p - (p - 1)/(a_p - 2)
  const PadicRing& r3 = PadicRing::get(3, 6);
  EXPECT_EQ(trace_unit_u(r3, PadicScalar(r3, 0)), PadicScalar(r3, 1));
  EXPECT_EQ(trace_unit_u(r3, PadicScalar(r3, 3)), PadicScalar(r3, 1));
  const PadicRing& r5 = PadicRing::get(5, 6);
  EXPECT_EQ(trace_unit_u(r5, PadicScalar(r5, 0)), PadicScalar(r5, 2));
  EXPECT_TRUE(trace_unit_u(r5, PadicScalar(r5, 10)).is_unit());
  EXPECT_THROW(trace_unit_u(r5, PadicScalar(r5, 1)), InvalidArgument);
}
