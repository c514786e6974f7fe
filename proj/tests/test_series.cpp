#include <gtest/gtest.h>

#include "iwasawa/series.hpp"

using namespace iwasawa;

namespace {

PadicNumber num(std::uint32_t p, std::int64_t v, int rel = 20) { return PadicNumber::from_integer(p, v, rel); }

// a univariate series with small integer coefficients
TruncatedSeries poly(std::uint32_t p, std::vector<std::int64_t> c) {
  std::vector<PadicNumber> out;
  for (auto x : c) out.push_back(x == 0 ? PadicNumber::zero(p) : num(p, x));
  return TruncatedSeries::univariate(p, std::move(out));
}

bool equal_mod(const PadicNumber& a, std::int64_t b, int k) {
  const PadicNumber d = a - PadicNumber::from_integer(a.prime(), b, 40);
  return d.is_zero() ? d.absolute_precision() >= k : d.shift() >= k;
}

}  // namespace

TEST(MonomialIndex, OrderAndProducts) {
  const auto idx = MonomialIndex::get(2, 3);
  EXPECT_EQ(idx, MonomialIndex::get(2, 3));
  EXPECT_EQ(idx->size(), 10u);
  EXPECT_EQ(idx->degree_start(0), 0u);
  EXPECT_EQ(idx->degree_start(1), 1u);
  EXPECT_EQ(idx->degree_start(2), 3u);
  EXPECT_EQ(idx->degree_start(4), 10u);
  for (std::size_t i = 0; i < idx->size(); ++i) {
    EXPECT_EQ(idx->index(idx->exponents(i)), static_cast<long>(i));
    if (i > 0) {
      EXPECT_LE(idx->total_degree(i - 1), idx->total_degree(i));
    }
  }
  const long x = idx->index({1, 0, 0}), y = idx->index({0, 1, 0});
  EXPECT_EQ(idx->product(static_cast<std::size_t>(x), static_cast<std::size_t>(y)), idx->index({1, 1, 0}));
  EXPECT_EQ(idx->index({2, 2, 0}), -1);
  const long x3 = idx->index({3, 0, 0});
  EXPECT_EQ(idx->product(static_cast<std::size_t>(x3), static_cast<std::size_t>(y)), -1);
  EXPECT_EQ(MonomialIndex::get(3, 2)->size(), 10u);
  EXPECT_THROW(MonomialIndex::get(4, 2), InvalidArgument);
}

TEST(TruncatedSeries, Arithmetic) {
  const std::uint32_t p = 5;
  const TruncatedSeries a = poly(p, {0, 1, 2, 3});
  const TruncatedSeries b = poly(p, {1, -1, 0, 4});
  const TruncatedSeries prod = a * b;
  // (x + 2x^2 + 3x^3)(1 - x + 4x^3) = x + x^2 + x^3 + ... truncated at 3
  EXPECT_TRUE(equal_mod(prod[1], 1, 15));
  EXPECT_TRUE(equal_mod(prod[2], 1, 15));
  EXPECT_TRUE(equal_mod(prod[3], 1, 15));
  EXPECT_TRUE((a + b - b - a).is_zero());
  const TruncatedSeries s = num(p, 5) * a;
  EXPECT_EQ(s[1].shift(), 1);
  EXPECT_THROW(a + poly(p, {0, 1}), InvalidArgument);
}

TEST(TruncatedSeries, Composition) {
  const std::uint32_t p = 3;
  // f = x + x^2, g = x - x^2: f(g) = x - x^2 + x^2 - 2x^3 + x^4 = x - 2x^3 + x^4
  const TruncatedSeries f = poly(p, {0, 1, 1, 0, 0});
  const TruncatedSeries g = poly(p, {0, 1, -1, 0, 0});
  const TruncatedSeries h = TruncatedSeries::compose(f, std::span(&g, 1));
  EXPECT_TRUE(h[2].is_zero());
  EXPECT_TRUE(equal_mod(h[3], -2, 15));
  EXPECT_TRUE(equal_mod(h[4], 1, 15));
  const TruncatedSeries c = poly(p, {1, 1});
  EXPECT_THROW(TruncatedSeries::compose(f, std::span(&c, 1)), InvalidArgument);
}

TEST(TruncatedSeries, BivariateComposition) {
  const std::uint32_t p = 3;
  const TruncatedSeries X = TruncatedSeries::variable(p, 2, 4, 0);
  const TruncatedSeries Y = TruncatedSeries::variable(p, 2, 4, 1);
  const TruncatedSeries f = poly(p, {0, 1, 1, 0, 0});
  const TruncatedSeries sum = X + Y;
  const TruncatedSeries h = TruncatedSeries::compose(f, std::span(&sum, 1));
  // (X + Y) + (X + Y)^2
  EXPECT_TRUE(equal_mod(h.coefficient({1, 1, 0}), 2, 15));
  EXPECT_TRUE(equal_mod(h.coefficient({2, 0, 0}), 1, 15));
  EXPECT_TRUE(h.coefficient({2, 1, 0}).is_zero());
  EXPECT_TRUE((h.swapped(0, 1) - h).is_zero());
  EXPECT_TRUE((h.with_zero(1) - TruncatedSeries::compose(f, std::span(&X, 1))).is_zero());
}

TEST(TruncatedSeries, CompositionalInverse) {
  const std::uint32_t p = 5;
  // f = x + 5x^2 - x^3 + x^5 / 25 and its inverse compose to x
  std::vector<PadicNumber> c(8, PadicNumber::zero(p));
  c[1] = num(p, 1);
  c[2] = num(p, 5);
  c[3] = num(p, -1);
  c[5] = num(p, 1).times_p_power(-2);
  const TruncatedSeries f = TruncatedSeries::univariate(p, c);
  const TruncatedSeries g = f.compositional_inverse();
  const TruncatedSeries fg = TruncatedSeries::compose(f, std::span(&g, 1));
  const TruncatedSeries gf = TruncatedSeries::compose(g, std::span(&f, 1));
  const TruncatedSeries X = TruncatedSeries::variable(p, 1, 7, 0);
  EXPECT_TRUE((fg - X).is_zero());
  EXPECT_TRUE((gf - X).is_zero());
  // g = x - 5x^2 + ...: coefficient of x^2 is -[x^2]f
  EXPECT_TRUE(equal_mod(g[2], -5, 15));
  EXPECT_GT((fg - X).min_absolute_precision(), 10);
  EXPECT_THROW(poly(p, {1, 1}).compositional_inverse(), InvalidArgument);
}

TEST(TruncatedSeries, LedgerAndDump) {
  const std::uint32_t p = 3;
  std::vector<PadicNumber> c{PadicNumber::zero(p), num(p, 1, 6), num(p, 9, 4).times_p_power(-3),
                             PadicNumber::zero(p, 5)};
  const TruncatedSeries s = TruncatedSeries::univariate(p, c);
  EXPECT_EQ(s.min_valuation(), -1);
  EXPECT_EQ(s.min_absolute_precision(), 3);
  const auto lines = s.dump_lines();
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "deg 1: val=0, unit=1");
  EXPECT_EQ(lines[1], "deg 2: val=-1, unit=1");
  EXPECT_EQ(lines[2], "deg 3: 0 (abs=5)");
  EXPECT_EQ(describe(PadicNumber::zero(p)), "0");
}
