#pragma once

#include <string>
#include <vector>

#include "iwasawa/algebra.hpp"

namespace iwasawa {

// Ramification index of Q_p(zeta_{p^m}); 1 for m = 0.
long ramification_index(std::uint32_t p, int m);

// An element of Z_p[zeta_{p^m}] modulo p^N, stored as a residue modulo
// Phi_{p^m}(x) in the x-power basis (degree < phi(p^m)). At m = 0 this is a
// bare scalar.
class CycloElement {
 public:
  CycloElement(const PadicRing& ring, int m);
  CycloElement(const PadicRing& ring, int m, std::vector<u128> coefficients);
  static CycloElement one(const PadicRing& ring, int m);
  // The class of x, i.e. zeta; for m = 0 this is 1.
  static CycloElement zeta(const PadicRing& ring, int m);
  // Reduces an arbitrary polynomial modulo Phi_{p^m}.
  static CycloElement from_polynomial(const PadicRing& ring, int m, std::vector<u128> poly);

  const PadicRing& ring() const noexcept { return *ring_; }
  int tower_level() const noexcept { return m_; }
  std::size_t degree() const noexcept { return coeffs_.size(); }
  std::span<const u128> raw() const noexcept { return coeffs_; }
  bool is_zero() const noexcept;

  CycloElement& operator+=(const CycloElement& o);
  CycloElement& operator-=(const CycloElement& o);
  friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
  friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
  friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
  friend bool operator==(const CycloElement& a, const CycloElement& b) {
    return a.ring_ == b.ring_ && a.m_ == b.m_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_compatible(const CycloElement& o) const;

  const PadicRing* ring_;
  int m_;
  std::vector<u128> coeffs_;
};

// ord_p as an exact rational numerator / denominator with denominator the
// ramification index, normalized so ord_p(p) = 1. When `exact` is false the
// element is zero at precision N and the value is a lower bound.
struct RamifiedValuation {
  long numerator = 0;
  long denominator = 1;
  bool exact = true;

  std::string to_string() const;
  friend bool operator==(const RamifiedValuation&, const RamifiedValuation&) = default;
};

// gamma -> zeta_{p^m}: project to level m, then reduce modulo Phi_{p^m}.
// At m = 0 this is the augmentation.
CycloElement char_eval(const AlgebraElement& f, int m);
// Valuation through the Eisenstein basis u = zeta - 1; requires m >= 1.
// Throws ZeroAtPrecision when z is zero modulo p^N.
RamifiedValuation eisenstein_valuation(const CycloElement& z);
// As above but reports zero as the lower bound ">=N" instead of throwing.
RamifiedValuation ramified_valuation(const CycloElement& z);
bool cyclo_is_zero(const CycloElement& z);

}  // namespace iwasawa
