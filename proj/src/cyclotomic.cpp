#include "iwasawa/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace iwasawa {

long ramification_index(std::uint32_t p, int m) {
  if (m == 0) return 1;
  return static_cast<long>(group_order(p, m - 1)) * static_cast<long>(p - 1);
}

namespace {

std::size_t storage_size(std::uint32_t p, int m) {
  if (m < 0) throw InvalidArgument("tower level must be nonnegative");
  return static_cast<std::size_t>(ramification_index(p, m));
}

// In place: reduces poly modulo Phi_{p^m}, m >= 1, returning the low e terms.
std::vector<u128> reduce_mod_phi(const PadicRing& ring, int m, std::vector<u128> poly) {
  const std::size_t e = storage_size(ring.prime(), m);
  if (m == 0) {
    u128 s = 0;
    for (u128 c : poly) s = ring.add(s, c);
    return {s};
  }
  const std::size_t step = group_order(ring.prime(), m - 1);
  for (std::size_t i = poly.size(); i-- > e;) {
    const u128 c = poly[i];
    if (c == 0) continue;
    poly[i] = 0;
    // x^e = -(1 + x^step + ... + x^{(p-2) step})
    for (std::size_t t = 0; t + 1 < ring.prime(); ++t) {
      const std::size_t k = i - e + t * step;
      poly[k] = ring.sub(poly[k], c);
    }
  }
  poly.resize(e, 0);
  return poly;
}

// binom(j, i) mod p^N for i, j < e, row-major by j; cached per (ring, m).
std::shared_ptr<const std::vector<u128>> binomial_table(const PadicRing& ring, int m) {
  static std::mutex mutex;
  static std::map<std::pair<const PadicRing*, int>, std::shared_ptr<const std::vector<u128>>> cache;
  const auto key = std::make_pair(&ring, m);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const std::size_t e = storage_size(ring.prime(), m);
  auto table = std::make_shared<std::vector<u128>>(e * e, 0);
  auto& t = *table;
  for (std::size_t j = 0; j < e; ++j) {
    t[j * e] = ring.reduce(1);
    for (std::size_t i = 1; i <= j; ++i) t[j * e + i] = ring.add(t[(j - 1) * e + i - 1], t[(j - 1) * e + i]);
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(table));
  return it->second;
}

}  // namespace

CycloElement::CycloElement(const PadicRing& ring, int m)
    : ring_(&ring), m_(m), coeffs_(storage_size(ring.prime(), m), 0) {}

CycloElement::CycloElement(const PadicRing& ring, int m, std::vector<u128> coefficients)
    : ring_(&ring), m_(m), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != storage_size(ring.prime(), m))
    throw InvalidArgument("cyclotomic residue must have phi(p^m) coefficients");
  for (auto& c : coeffs_) c = ring.reduce(c);
}

CycloElement CycloElement::one(const PadicRing& ring, int m) {
  CycloElement z(ring, m);
  z.coeffs_[0] = ring.reduce(1);
  return z;
}

CycloElement CycloElement::zeta(const PadicRing& ring, int m) {
  std::vector<u128> poly(2, 0);
  poly[1] = ring.reduce(1);
  return from_polynomial(ring, m, std::move(poly));
}

CycloElement CycloElement::from_polynomial(const PadicRing& ring, int m, std::vector<u128> poly) {
  for (auto& c : poly) c = ring.reduce(c);
  return CycloElement(ring, m, reduce_mod_phi(ring, m, std::move(poly)));
}

bool CycloElement::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](u128 c) { return c == 0; });
}

void CycloElement::check_compatible(const CycloElement& o) const {
  if (ring_ != o.ring_) throw PrecisionMismatch("cyclotomic elements over different rings");
  if (m_ != o.m_) throw LevelMismatch("cyclotomic elements at different tower levels");
}

CycloElement& CycloElement::operator+=(const CycloElement& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = ring_->add(coeffs_[i], o.coeffs_[i]);
  return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = ring_->sub(coeffs_[i], o.coeffs_[i]);
  return *this;
}

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
  a.check_compatible(b);
  const PadicRing& ring = *a.ring_;
  const std::size_t e = a.coeffs_.size();
  std::vector<u128> prod(2 * e - 1, 0);
  for (std::size_t i = 0; i < e; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < e; ++j)
      if (b.coeffs_[j] != 0) prod[i + j] = ring.add(prod[i + j], ring.mul(a.coeffs_[i], b.coeffs_[j]));
  }
  return CycloElement(ring, a.m_, reduce_mod_phi(ring, a.m_, std::move(prod)));
}

std::string RamifiedValuation::to_string() const {
  const std::string v = std::to_string(numerator) + "/" + std::to_string(denominator);
  return exact ? v : ">=" + v;
}

CycloElement char_eval(const AlgebraElement& f, int m) {
  const AlgebraElement g = project_to(f, m);
  return CycloElement(f.ring(), m, reduce_mod_phi(f.ring(), m, std::vector<u128>(g.raw().begin(), g.raw().end())));
}

RamifiedValuation ramified_valuation(const CycloElement& z) {
  if (z.tower_level() < 1) throw InvalidArgument("Eisenstein valuation requires m >= 1");
  const PadicRing& ring = z.ring();
  const long e = static_cast<long>(z.degree());
  const auto table = binomial_table(ring, z.tower_level());
  const auto zc = z.raw();
  long best = e * ring.precision();
  bool found = false;
  for (long i = 0; i < e; ++i) {
    if (i >= best) break;  // candidates e*v + i are >= i
    u128 b = 0;
    for (long j = i; j < e; ++j)
      if (zc[j] != 0) b = ring.add(b, ring.mul(zc[j], (*table)[j * e + i]));
    if (b == 0) continue;
    const long cand = e * ring.valuation(b) + i;
    if (cand < best) {
      best = cand;
      found = true;
    }
  }
  return {best, e, found};
}

RamifiedValuation eisenstein_valuation(const CycloElement& z) {
  const RamifiedValuation v = ramified_valuation(z);
  if (!v.exact)
    throw ZeroAtPrecision("element of Z_p[zeta] is zero modulo " + std::to_string(z.ring().prime()) + "^" +
                          std::to_string(z.ring().precision()));
  return v;
}

bool cyclo_is_zero(const CycloElement& z) { return z.is_zero(); }

}  // namespace iwasawa
