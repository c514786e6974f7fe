#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iwasawa/padic.hpp"
#include "iwasawa/random.hpp"

namespace iwasawa {

// Order of G_n = Z/p^n.
std::size_t group_order(std::uint32_t p, int level);

// An element of Lambda_n = Z_p[G_n] known modulo p^N, stored as the
// coefficient vector in the basis 1, gamma, ..., gamma^{p^n - 1}. A single
// generator gamma is fixed per level, compatible with projection: the
// generator at level n maps to the generator at level n - 1.
class AlgebraElement {
 public:
  AlgebraElement(const PadicRing& ring, int level);
  AlgebraElement(const PadicRing& ring, int level, std::vector<u128> coefficients);
  static AlgebraElement from_coefficients(int level, std::span<const PadicScalar> coefficients);
  static AlgebraElement one(const PadicRing& ring, int level);
  // gamma^k; k is reduced modulo p^level.
  static AlgebraElement gamma_power(const PadicRing& ring, int level, std::uint64_t k);
  static AlgebraElement constant(const PadicScalar& c, int level);

  const PadicRing& ring() const noexcept { return *ring_; }
  std::uint32_t prime() const noexcept { return ring_->prime(); }
  int precision() const noexcept { return ring_->precision(); }
  int level() const noexcept { return level_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  PadicScalar coefficient(std::size_t i) const { return PadicScalar::from_raw(*ring_, coeffs_.at(i)); }
  void set_coefficient(std::size_t i, const PadicScalar& c);
  std::span<const u128> raw() const noexcept { return coeffs_; }
  bool is_zero() const noexcept;

  AlgebraElement operator-() const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const PadicScalar& c);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const PadicScalar& c) { return a *= c; }
  friend AlgebraElement operator*(const PadicScalar& c, AlgebraElement a) { return a *= c; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.ring_ == b.ring_ && a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
  }

  // Canonical text form: "level n; [c_0, c_1, ...] mod p^N".
  std::string to_text() const;
  static AlgebraElement parse_text(std::string_view text);

  void check_compatible(const AlgebraElement& o) const;

 private:
  const PadicRing* ring_;
  int level_;
  std::vector<u128> coeffs_;
};

struct Invariants {
  int mu = 0;
  int lambda = 0;
  friend bool operator==(const Invariants&, const Invariants&) = default;
};

enum class Sign { Plus, Minus };

AlgebraElement multiply(const AlgebraElement& f, const AlgebraElement& g);
// pi_{n/n-1}; throws LevelZero at level 0.
AlgebraElement project_pi(const AlgebraElement& f);
// pi_{n/m} for m <= n.
AlgebraElement project_to(const AlgebraElement& f, int level);
// nu_{n-1/n}: the sum over all preimages, coefficient i of the result is f_{i mod p^{n-1}}.
AlgebraElement lift_nu(const AlgebraElement& f);
// Sum of the order-p subgroup of G_n, n >= 1.
AlgebraElement xi(const PadicRing& ring, int level);
// Phi_{p^m}(gamma) in Lambda_n, with Phi_1(x) = x - 1.
AlgebraElement cyclotomic_factor(const PadicRing& ring, int level, int m);
// Generator of the ideal of elements vanishing at every character of order
// p^m, 1 <= m <= n, with m even (Plus) or odd (Minus). The trivial character
// belongs to neither.
AlgebraElement omega(const PadicRing& ring, int level, Sign sign);

// mu: minimal valuation of the coefficients. Throws PrecisionExhausted for
// an element that is zero at precision N.
int mu_invariant(const AlgebraElement& f);
// lambda: index of the first nonzero coefficient of p^{-mu} f mod p in the
// (gamma - 1)-power basis of F_p[G_n].
int lambda_invariant(const AlgebraElement& f);
Invariants invariants(const AlgebraElement& f);

class RandomConstraint {
 public:
  static RandomConstraint none() { return RandomConstraint(None{}); }
  // mu(result) = 0.
  static RandomConstraint unit() { return RandomConstraint(Unit{}); }
  // project_pi(result) = target.
  static RandomConstraint lift_of(const AlgebraElement& target) { return RandomConstraint(LiftOf{target}); }

  struct None {};
  struct Unit {};
  struct LiftOf {
    AlgebraElement target;
  };
  const std::variant<None, Unit, LiftOf>& kind() const noexcept { return kind_; }

 private:
  explicit RandomConstraint(std::variant<None, Unit, LiftOf> k) : kind_(std::move(k)) {}
  std::variant<None, Unit, LiftOf> kind_;
};

AlgebraElement random_element(Rng& rng, const PadicRing& ring, int level,
                              const RandomConstraint& constraint = RandomConstraint::none());

}  // namespace iwasawa
