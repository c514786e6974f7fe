#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "iwasawa/errors.hpp"

namespace iwasawa {

using u128 = unsigned __int128;

std::string to_decimal(u128 value);
// Accepts an optional leading '-'; the magnitude must fit in 127 bits.
// Returns the magnitude and sets `negative`.
u128 parse_decimal(std::string_view text, bool& negative);

bool is_prime(std::uint64_t n);

// p-adic valuation of a capped-precision quantity. When `exact` is false the
// quantity is zero at the working precision and `value` is only a lower
// bound (printed as ">=N").
struct Valuation {
  long value = 0;
  bool exact = true;

  static Valuation at_least(long v) { return {v, false}; }
  std::string to_string() const;
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

// The ring Z/p^N, viewed as Z_p known modulo p^N. Instances are interned:
// there is exactly one PadicRing per (p, N), so rings compare by address.
// Moduli are kept below 2^126 so that sums never overflow 128 bits.
class PadicRing {
 public:
  static const PadicRing& get(std::uint32_t p, int precision);
  // Largest N with p^N < 2^126.
  static int max_precision(std::uint32_t p);

  PadicRing(const PadicRing&) = delete;
  PadicRing& operator=(const PadicRing&) = delete;

  std::uint32_t prime() const noexcept { return p_; }
  int precision() const noexcept { return n_; }
  u128 modulus() const noexcept { return m_; }
  // p^k for 0 <= k <= N.
  u128 prime_power(int k) const;
  // Ring over the same prime at another precision; lock free.
  const PadicRing& sibling(int precision) const;

  u128 reduce(u128 x) const noexcept { return x < m_ ? x : x % m_; }
  u128 add(u128 a, u128 b) const noexcept {
    u128 s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  u128 sub(u128 a, u128 b) const noexcept { return a >= b ? a - b : a + (m_ - b); }
  u128 neg(u128 a) const noexcept { return a == 0 ? 0 : m_ - a; }
  u128 mul(u128 a, u128 b) const noexcept;
  u128 pow(u128 a, std::uint64_t e) const noexcept;
  u128 from_signed(std::int64_t v) const noexcept;

  // a mod p.
  std::uint32_t residue(u128 a) const noexcept;
  // Largest k <= N with p^k | a; N for a == 0.
  int valuation(u128 a) const noexcept;
  // Throws NotAUnit when p | a.
  u128 inverse(u128 a) const;

 private:
  struct Family;
  PadicRing(std::uint32_t p, int precision, const Family* family);
  u128 redc(u128 hi, u128 lo) const noexcept;

  std::uint32_t p_;
  int n_;
  u128 m_;
  u128 m_neg_inv_;    // -m^{-1} mod 2^128
  u128 r2_;           // 2^256 mod m
  std::uint64_t two64_mod_p_;
  const Family* family_;
};

// An element of Z/p^N. Scalars from different rings never mix.
class PadicScalar {
 public:
  explicit PadicScalar(const PadicRing& ring, std::int64_t value = 0)
      : ring_(&ring), value_(ring.from_signed(value)) {}
  static PadicScalar from_raw(const PadicRing& ring, u128 value) {
    PadicScalar s(ring);
    s.value_ = ring.reduce(value);
    return s;
  }
  static PadicScalar parse(const PadicRing& ring, std::string_view decimal);

  const PadicRing& ring() const noexcept { return *ring_; }
  std::uint32_t prime() const noexcept { return ring_->prime(); }
  int precision() const noexcept { return ring_->precision(); }
  u128 value() const noexcept { return value_; }

  Valuation valuation() const;
  bool is_zero() const noexcept { return value_ == 0; }
  bool is_unit() const noexcept { return ring_->residue(value_) != 0; }
  PadicScalar inverse() const { return from_raw(*ring_, ring_->inverse(value_)); }
  PadicScalar pow(std::uint64_t e) const { return from_raw(*ring_, ring_->pow(value_, e)); }

  // Reduction to a lower precision, or the same representative read at a
  // higher one.
  PadicScalar with_precision(int precision) const;
  // value / p^k read modulo p^{N-k}; requires p^k | value and k < N.
  PadicScalar shifted_down(int k) const;

  PadicScalar operator-() const { return from_raw(*ring_, ring_->neg(value_)); }
  PadicScalar& operator+=(const PadicScalar& o);
  PadicScalar& operator-=(const PadicScalar& o);
  PadicScalar& operator*=(const PadicScalar& o);
  friend PadicScalar operator+(PadicScalar a, const PadicScalar& b) { return a += b; }
  friend PadicScalar operator-(PadicScalar a, const PadicScalar& b) { return a -= b; }
  friend PadicScalar operator*(PadicScalar a, const PadicScalar& b) { return a *= b; }
  friend bool operator==(const PadicScalar& a, const PadicScalar& b) {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }

  std::string to_string() const { return to_decimal(value_); }

 private:
  void check_same_ring(const PadicScalar& o) const;

  const PadicRing* ring_;
  u128 value_;
};

Valuation val_p(const PadicScalar& a);
PadicScalar unit_inverse(const PadicScalar& a);

// p^shift * unit with a tracked absolute precision: the number is known
// modulo p^{absolute_precision}. Zero at precision is a distinguished state.
// Used by the formal-group engine, where coefficients have negative
// valuation; the group-ring side stays integral.
class PadicNumber {
 public:
  // Absolute precision used for exactly known zeros.
  static constexpr int kExact = 1 << 20;

  static PadicNumber zero(std::uint32_t p, int absolute_precision = kExact);
  static PadicNumber from_scalar(const PadicScalar& s);
  static PadicNumber from_integer(std::uint32_t p, std::int64_t v, int relative_precision);
  // p^shift * unit; the unit's ring gives the relative precision.
  static PadicNumber from_parts(int shift, const PadicScalar& unit);

  std::uint32_t prime() const noexcept { return p_; }
  bool is_zero() const noexcept { return unit_ring_ == nullptr; }
  bool is_exact_zero() const noexcept { return is_zero() && abs_ >= kExact / 2; }
  Valuation valuation() const;
  int shift() const noexcept { return shift_; }
  int absolute_precision() const noexcept { return abs_; }
  int relative_precision() const noexcept { return is_zero() ? 0 : abs_ - shift_; }
  // The unit part at relative precision; requires a nonzero number.
  PadicScalar unit() const;
  // Requires valuation >= 0 (or zero with absolute precision >= 1);
  // the representative modulo p^min(precision, absolute_precision).
  PadicScalar to_scalar(int precision) const;

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
  PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
  PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
  PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }
  // Multiplies by p^k, k may be negative; division lowers the absolute
  // precision by |k|.
  PadicNumber times_p_power(int k) const;
  // Drops digits beyond absolute precision `a`.
  PadicNumber truncated(int a) const;

  std::string to_string() const;

 private:
  PadicNumber() = default;
  static PadicNumber make(std::uint32_t p, int abs, int shift, u128 unit_candidate,
                          int digits, const PadicRing& base);

  std::uint32_t p_ = 3;
  int shift_ = 0;
  int abs_ = kExact;
  const PadicRing* unit_ring_ = nullptr;  // ring p^{abs - shift}
  u128 unit_ = 0;
};

}  // namespace iwasawa
