#pragma once

#include <span>
#include <string>
#include <vector>

#include "iwasawa/algebra.hpp"

namespace iwasawa {

// Dense matrix over Z/p^N, column-major.
class PMatrix {
 public:
  PMatrix(const PadicRing& ring, std::size_t rows, std::size_t cols);
  static PMatrix identity(const PadicRing& ring, std::size_t n);
  static PMatrix diagonal(std::span<const PadicScalar> entries);
  // Side-by-side concatenation [a | b].
  static PMatrix hconcat(const PMatrix& a, const PMatrix& b);

  const PadicRing& ring() const noexcept { return *ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  PadicScalar at(std::size_t r, std::size_t c) const { return PadicScalar::from_raw(*ring_, raw(r, c)); }
  void set(std::size_t r, std::size_t c, const PadicScalar& v);
  u128 raw(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }
  u128& raw(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  std::span<u128> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const u128> column(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

  friend PMatrix operator*(const PMatrix& a, const PMatrix& b);
  friend bool operator==(const PMatrix& a, const PMatrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  const PadicRing* ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<u128> data_;
};

// Elementary divisors p^{d_i} of a matrix over Z/p^N. Unit pivots appear as
// exponent 0; divisors indistinguishable from 0 at precision N are counted
// in rank_deficit instead, so every listed exponent is < N and exact.
struct DivisorProfile {
  std::vector<int> exponents;
  std::size_t rank_deficit = 0;

  bool finite() const noexcept { return rank_deficit == 0; }
  // log_p of the cokernel order when finite.
  long order_exponent() const;
  // The cokernel structure: exponents > 0, sorted.
  std::vector<int> nontrivial() const;
  std::string to_string() const;
  friend bool operator==(const DivisorProfile&, const DivisorProfile&) = default;
};

// The Z/p^N-span of a set of column vectors, kept in column echelon form
// (pivoting on a minimal-valuation entry) so that membership of further
// vectors can be tested against one reduction.
class Submodule {
 public:
  explicit Submodule(PMatrix generators);
  // The ideal (g_1, ..., g_k) of Lambda_n as a Z_p-module.
  static Submodule ideal(std::span<const AlgebraElement> generators);

  const DivisorProfile& profile() const noexcept { return profile_; }
  std::size_t ambient_dimension() const noexcept { return echelon_.rows(); }
  bool contains(std::span<const u128> vector) const;
  bool contains(const AlgebraElement& f) const;

 private:
  struct Pivot {
    std::size_t row;
    std::size_t col;
    int exponent;
    u128 unit_inverse;  // inverse of pivot / p^exponent
  };

  PMatrix echelon_;
  std::vector<Pivot> pivots_;
  DivisorProfile profile_;
};

DivisorProfile smith_form(const PMatrix& m);
// Column i is the coefficient vector of gamma^i * f.
PMatrix mult_matrix(const AlgebraElement& f);
// Profile of Lambda_n / (g_1, ..., g_k) as a Z_p-module.
DivisorProfile quotient_profile(std::span<const AlgebraElement> generators);
// f in (g_1, ..., g_k) + p^N Lambda_n.
bool ideal_membership(const AlgebraElement& f, std::span<const AlgebraElement> generators);

}  // namespace iwasawa
