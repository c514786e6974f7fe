#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "iwasawa/padic.hpp"

namespace iwasawa {

// Monomials in up to three variables of total degree <= D, ordered by total
// degree and then lexicographically, with a precomputed product table.
class MonomialIndex {
 public:
  static constexpr int kMaxVariables = 3;
  using Exponents = std::array<int, kMaxVariables>;

  // Shared instance per (variables, degree).
  static std::shared_ptr<const MonomialIndex> get(int variables, int degree);

  int variables() const noexcept { return vars_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  const Exponents& exponents(std::size_t i) const { return monomials_.at(i); }
  int total_degree(std::size_t i) const { return total_.at(i); }
  // Index of a monomial; -1 when its degree exceeds D.
  long index(const Exponents& e) const;
  // Index of the product of monomials i and j; -1 when truncated away.
  long product(std::size_t i, std::size_t j) const { return table_[i * monomials_.size() + j]; }
  // First index of total degree d (d may be D + 1, giving size()).
  std::size_t degree_start(int d) const { return starts_.at(d); }

  MonomialIndex(int variables, int degree);

 private:
  int vars_;
  int degree_;
  std::vector<Exponents> monomials_;
  std::vector<int> total_;
  std::vector<std::size_t> starts_;
  std::vector<long> table_;
};

// A power series over Q_p in 1 to 3 variables truncated at total degree D.
// Coefficients are PadicNumbers carrying their own absolute precision, so
// every arithmetic step charges its precision loss to the coefficients it
// produces; the ledger queries report the worst case.
class TruncatedSeries {
 public:
  TruncatedSeries(std::uint32_t p, int variables, int degree);
  // The i-th coordinate function X_i.
  static TruncatedSeries variable(std::uint32_t p, int variables, int degree, int i);
  static TruncatedSeries univariate(std::uint32_t p, std::vector<PadicNumber> coefficients);

  std::uint32_t prime() const noexcept { return p_; }
  int variables() const noexcept { return index_->variables(); }
  int degree() const noexcept { return index_->degree(); }
  const MonomialIndex& index() const noexcept { return *index_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  const PadicNumber& at(std::size_t i) const { return coeffs_.at(i); }
  PadicNumber& at(std::size_t i) { return coeffs_.at(i); }
  const PadicNumber& coefficient(const MonomialIndex::Exponents& e) const;
  void set_coefficient(const MonomialIndex::Exponents& e, PadicNumber c);
  // Univariate shorthand for the coefficient of X^k.
  const PadicNumber& operator[](int k) const;

  bool has_zero_constant() const { return coeffs_.front().is_zero(); }

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const PadicNumber& c, TruncatedSeries a);

  // Same coefficients read in a ring with more variables (this series uses
  // the first variables() of them) or cut to a lower degree.
  TruncatedSeries embedded(int variables, int degree) const;
  // Keeps only the monomials whose exponent of variable i is zero, i.e.
  // substitutes X_i = 0.
  TruncatedSeries with_zero(int i) const;
  // Exchanges variables i and j.
  TruncatedSeries swapped(int i, int j) const;

  // f(g_1, ..., g_k) with k = f.variables(); every g_i has zero constant
  // term and the same variable count; the result is truncated at the
  // smaller of the degrees involved.
  static TruncatedSeries compose(const TruncatedSeries& f, std::span<const TruncatedSeries> args);
  // Univariate g with f(g(X)) = X; needs zero constant term and a unit
  // linear coefficient times any power of p.
  TruncatedSeries compositional_inverse() const;

  // Ledger: smallest absolute precision over the coefficients.
  int min_absolute_precision() const;
  // Smallest valuation over the nonzero coefficients (kExact when all zero).
  int min_valuation() const;
  // Every coefficient is zero to its known precision.
  bool is_zero() const;

  // Lines "deg k: val=v, unit=u" (univariate) or "deg (i,j): ..." per
  // nonzero-or-inexact coefficient.
  std::vector<std::string> dump_lines() const;

 private:
  std::uint32_t p_;
  std::shared_ptr<const MonomialIndex> index_;
  std::vector<PadicNumber> coeffs_;
};

// Text form of a single coefficient for dumps: "val=v, unit=u" or "0 (abs=a)".
std::string describe(const PadicNumber& x);

}  // namespace iwasawa
