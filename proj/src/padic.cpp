#include "iwasawa/padic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace iwasawa {

namespace {

constexpr u128 kModulusLimit = u128(1) << 126;

struct Wide {
  u128 hi;
  u128 lo;
};

inline Wide mul_wide(u128 a, u128 b) noexcept {
  const std::uint64_t a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
  const std::uint64_t b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
  const u128 p00 = u128(a0) * b0;
  const u128 p01 = u128(a0) * b1;
  const u128 p10 = u128(a1) * b0;
  const u128 p11 = u128(a1) * b1;
  const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
  Wide w;
  w.lo = (mid << 64) | static_cast<std::uint64_t>(p00);
  w.hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  return w;
}

}  // namespace

std::string to_decimal(u128 value) {
  if (value == 0) return "0";
  std::string s;
  while (value != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 parse_decimal(std::string_view text, bool& negative) {
  negative = false;
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw InvalidArgument("empty decimal literal");
  u128 v = 0;
  const u128 limit = (u128(1) << 127) / 10;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw InvalidArgument("invalid decimal literal '" + std::string(text) + "'");
    if (v > limit) throw InvalidArgument("decimal literal out of range");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string Valuation::to_string() const {
  return exact ? std::to_string(value) : ">=" + std::to_string(value);
}

// ---------------------------------------------------------------------------
// PadicRing

struct PadicRing::Family {
  std::uint32_t p = 0;
  std::vector<u128> powers;                          // p^0 .. p^cap
  std::vector<std::unique_ptr<PadicRing>> rings;     // index N-1
};

int PadicRing::max_precision(std::uint32_t p) {
  if (p < 2) throw InvalidArgument("prime must be at least 2");
  int n = 0;
  u128 m = 1;
  while (m <= (kModulusLimit - 1) / p) {
    m *= p;
    ++n;
  }
  return n;
}

const PadicRing& PadicRing::get(std::uint32_t p, int precision) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::unique_ptr<Family>> families;

  if (p < 3 || !is_prime(p)) throw InvalidArgument("p must be an odd prime, got " + std::to_string(p));
  const int cap = max_precision(p);
  if (precision < 1 || precision > cap)
    throw InvalidArgument("precision " + std::to_string(precision) + " outside [1, " + std::to_string(cap) +
                          "] for p = " + std::to_string(p));

  std::lock_guard<std::mutex> lock(mutex);
  auto& fam = families[p];
  if (!fam) {
    auto f = std::make_unique<Family>();
    f->p = p;
    f->powers.push_back(1);
    for (int k = 1; k <= cap; ++k) f->powers.push_back(f->powers.back() * p);
    for (int n = 1; n <= cap; ++n) f->rings.emplace_back(new PadicRing(p, n, f.get()));
    fam = std::move(f);
  }
  return *fam->rings[static_cast<std::size_t>(precision - 1)];
}

PadicRing::PadicRing(std::uint32_t p, int precision, const Family* family)
    : p_(p), n_(precision), m_(family->powers[static_cast<std::size_t>(precision)]), family_(family) {
  u128 inv = m_;  // correct to 3 bits for odd m
  for (int i = 0; i < 7; ++i) inv *= 2 - m_ * inv;
  m_neg_inv_ = u128(0) - inv;

  u128 r = (u128(0) - m_) % m_;  // 2^128 mod m
  for (int i = 0; i < 128; ++i) r = add(r, r);
  r2_ = r;

  two64_mod_p_ = static_cast<std::uint64_t>((u128(1) << 64) % p_);
}

u128 PadicRing::prime_power(int k) const {
  if (k < 0 || k > n_) throw InvalidArgument("prime power exponent out of range");
  return family_->powers[static_cast<std::size_t>(k)];
}

const PadicRing& PadicRing::sibling(int precision) const {
  if (precision < 1 || precision > static_cast<int>(family_->rings.size()))
    throw InvalidArgument("precision " + std::to_string(precision) + " out of range for p = " + std::to_string(p_));
  return *family_->rings[static_cast<std::size_t>(precision - 1)];
}

u128 PadicRing::redc(u128 hi, u128 lo) const noexcept {
  const u128 q = lo * m_neg_inv_;
  const Wide qm = mul_wide(q, m_);
  u128 t = hi + qm.hi + (lo != 0 ? 1 : 0);
  return t >= m_ ? t - m_ : t;
}

u128 PadicRing::mul(u128 a, u128 b) const noexcept {
  const Wide ab = mul_wide(a, b);
  const u128 x = redc(ab.hi, ab.lo);
  const Wide xr = mul_wide(x, r2_);
  return redc(xr.hi, xr.lo);
}

u128 PadicRing::pow(u128 a, std::uint64_t e) const noexcept {
  u128 result = reduce(1);
  u128 base = reduce(a);
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

u128 PadicRing::from_signed(std::int64_t v) const noexcept {
  if (v >= 0) return reduce(static_cast<u128>(v));
  const u128 mag = static_cast<u128>(-(v + 1)) + 1;
  return neg(reduce(mag));
}

std::uint32_t PadicRing::residue(u128 a) const noexcept {
  const std::uint64_t hi = static_cast<std::uint64_t>(a >> 64) % p_;
  const std::uint64_t lo = static_cast<std::uint64_t>(a) % p_;
  return static_cast<std::uint32_t>((hi * two64_mod_p_ + lo) % p_);
}

int PadicRing::valuation(u128 a) const noexcept {
  if (a == 0) return n_;
  int k = 0;
  while (residue(a) == 0) {
    a /= p_;
    ++k;
  }
  return k;
}

u128 PadicRing::inverse(u128 a) const {
  const std::uint64_t r = residue(a);
  if (r == 0) throw NotAUnit("element " + to_decimal(a) + " is not a unit modulo " + std::to_string(p_));
  // inverse mod p by Fermat, then Newton lifting
  std::uint64_t x0 = 1, base = r, e = p_ - 2;
  while (e != 0) {
    if (e & 1) x0 = x0 * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  u128 x = reduce(x0);
  const u128 ar = reduce(a);
  for (int known = 1; known < n_; known *= 2) x = mul(x, sub(reduce(2), mul(ar, x)));
  return x;
}

// ---------------------------------------------------------------------------
// PadicScalar

PadicScalar PadicScalar::parse(const PadicRing& ring, std::string_view decimal) {
  bool negative = false;
  const u128 mag = parse_decimal(decimal, negative);
  PadicScalar s = from_raw(ring, mag);
  return negative ? -s : s;
}

Valuation PadicScalar::valuation() const {
  if (value_ == 0) return Valuation::at_least(ring_->precision());
  return {ring_->valuation(value_), true};
}

PadicScalar PadicScalar::with_precision(int precision) const {
  return from_raw(ring_->sibling(precision), value_);
}

PadicScalar PadicScalar::shifted_down(int k) const {
  if (k == 0) return *this;
  if (k < 0 || k >= ring_->precision()) throw InvalidArgument("shift out of range");
  if (ring_->valuation(value_) < k) throw InvalidArgument("shifted_down: value not divisible by p^k");
  return from_raw(ring_->sibling(ring_->precision() - k), value_ / ring_->prime_power(k));
}

void PadicScalar::check_same_ring(const PadicScalar& o) const {
  if (ring_ != o.ring_)
    throw PrecisionMismatch("p-adic scalars from Z/" + std::to_string(prime()) + "^" + std::to_string(precision()) +
                            " and Z/" + std::to_string(o.prime()) + "^" + std::to_string(o.precision()) +
                            " cannot be combined");
}

PadicScalar& PadicScalar::operator+=(const PadicScalar& o) {
  check_same_ring(o);
  value_ = ring_->add(value_, o.value_);
  return *this;
}

PadicScalar& PadicScalar::operator-=(const PadicScalar& o) {
  check_same_ring(o);
  value_ = ring_->sub(value_, o.value_);
  return *this;
}

PadicScalar& PadicScalar::operator*=(const PadicScalar& o) {
  check_same_ring(o);
  value_ = ring_->mul(value_, o.value_);
  return *this;
}

Valuation val_p(const PadicScalar& a) { return a.valuation(); }

PadicScalar unit_inverse(const PadicScalar& a) { return a.inverse(); }

// ---------------------------------------------------------------------------
// PadicNumber

namespace {

int clamp_abs(long a) {
  return static_cast<int>(std::min<long>(a, PadicNumber::kExact));
}

}  // namespace

PadicNumber PadicNumber::zero(std::uint32_t p, int absolute_precision) {
  PadicNumber z;
  z.p_ = p;
  z.abs_ = std::min(absolute_precision, kExact);
  z.shift_ = z.abs_;
  return z;
}

// Normalizes p^vm * s where s is read modulo p^digits, digits = abs - vm.
PadicNumber PadicNumber::make(std::uint32_t p, int abs, int vm, u128 s, int digits, const PadicRing& base) {
  if (digits <= 0) return zero(p, abs);
  const PadicRing& ring = base.sibling(digits);
  s = ring.reduce(s);
  if (s == 0) return zero(p, abs);
  const int t = ring.valuation(s);
  PadicNumber r;
  r.p_ = p;
  r.abs_ = abs;
  r.shift_ = vm + t;
  r.unit_ring_ = &ring.sibling(digits - t);
  r.unit_ = s / ring.prime_power(t);
  return r;
}

PadicNumber PadicNumber::from_scalar(const PadicScalar& s) {
  return make(s.prime(), s.precision(), 0, s.value(), s.precision(), s.ring());
}

PadicNumber PadicNumber::from_integer(std::uint32_t p, std::int64_t v, int relative_precision) {
  if (v == 0) return zero(p);
  const PadicRing& ring = PadicRing::get(p, relative_precision);
  int k = 0;
  std::int64_t w = v;
  while (w % static_cast<std::int64_t>(p) == 0) {
    w /= static_cast<std::int64_t>(p);
    ++k;
  }
  PadicNumber r;
  r.p_ = p;
  r.shift_ = k;
  r.abs_ = k + relative_precision;
  r.unit_ring_ = &ring;
  r.unit_ = ring.from_signed(w);
  return r;
}

PadicNumber PadicNumber::from_parts(int shift, const PadicScalar& unit) {
  if (!unit.is_unit()) throw NotAUnit("from_parts: unit part is divisible by p");
  PadicNumber r;
  r.p_ = unit.prime();
  r.shift_ = shift;
  r.abs_ = shift + unit.precision();
  r.unit_ring_ = &unit.ring();
  r.unit_ = unit.value();
  return r;
}

Valuation PadicNumber::valuation() const {
  if (is_zero()) return Valuation::at_least(abs_);
  return {shift_, true};
}

PadicScalar PadicNumber::unit() const {
  if (is_zero()) throw ZeroAtPrecision("unit part of a zero p-adic number");
  return PadicScalar::from_raw(*unit_ring_, unit_);
}

PadicScalar PadicNumber::to_scalar(int precision) const {
  const int n = std::min(precision, abs_);
  if (n < 1) throw PrecisionExhausted("no integral digits known (absolute precision " + std::to_string(abs_) + ")");
  const PadicRing& ring = PadicRing::get(p_, n);
  if (is_zero()) return PadicScalar(ring);
  if (shift_ < 0) throw InvalidArgument("p-adic number " + to_string() + " is not integral");
  if (shift_ >= n) return PadicScalar(ring);
  return PadicScalar::from_raw(ring, ring.mul(ring.reduce(unit_), ring.prime_power(shift_)));
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  PadicNumber r = *this;
  r.unit_ = unit_ring_->neg(unit_);
  return r;
}

PadicNumber PadicNumber::truncated(int a) const {
  if (a >= abs_) return *this;
  if (is_zero() || a <= shift_) return zero(p_, a);
  PadicNumber r = *this;
  r.abs_ = a;
  r.unit_ring_ = &unit_ring_->sibling(a - shift_);
  r.unit_ = r.unit_ring_->reduce(unit_);
  return r;
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw PrecisionMismatch("p-adic numbers over different primes");
  if (a.is_zero()) return b.truncated(std::min(a.abs_, b.abs_));
  if (b.is_zero()) return a.truncated(std::min(a.abs_, b.abs_));
  const int abs = std::min(a.abs_, b.abs_);
  const int vm = std::min(a.shift_, b.shift_);
  const int digits = abs - vm;
  if (digits <= 0) return PadicNumber::zero(a.p_, abs);
  const PadicRing& ring = a.unit_ring_->sibling(digits);
  auto term = [&](const PadicNumber& x) -> u128 {
    const int d = x.shift_ - vm;
    if (d >= digits) return 0;
    return ring.mul(ring.reduce(x.unit_), ring.prime_power(d));
  };
  const u128 s = ring.add(term(a), term(b));
  return PadicNumber::make(a.p_, abs, vm, s, digits, ring);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw PrecisionMismatch("p-adic numbers over different primes");
  if (a.is_zero() && b.is_zero()) return PadicNumber::zero(a.p_, clamp_abs(long(a.abs_) + b.abs_));
  if (a.is_zero()) return PadicNumber::zero(a.p_, clamp_abs(long(a.abs_) + b.shift_));
  if (b.is_zero()) return PadicNumber::zero(a.p_, clamp_abs(long(b.abs_) + a.shift_));
  const int r = std::min(a.relative_precision(), b.relative_precision());
  const PadicRing& ring = a.unit_ring_->sibling(r);
  PadicNumber out;
  out.p_ = a.p_;
  out.shift_ = a.shift_ + b.shift_;
  out.abs_ = out.shift_ + r;
  out.unit_ring_ = &ring;
  out.unit_ = ring.mul(ring.reduce(a.unit_), ring.reduce(b.unit_));
  return out;
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw PrecisionMismatch("p-adic numbers over different primes");
  if (b.is_zero()) throw ZeroAtPrecision("division by a p-adic number that is zero at precision");
  if (a.is_zero()) return PadicNumber::zero(a.p_, clamp_abs(long(a.abs_) - b.shift_));
  const int r = std::min(a.relative_precision(), b.relative_precision());
  const PadicRing& ring = a.unit_ring_->sibling(r);
  PadicNumber out;
  out.p_ = a.p_;
  out.shift_ = a.shift_ - b.shift_;
  out.abs_ = out.shift_ + r;
  out.unit_ring_ = &ring;
  out.unit_ = ring.mul(ring.reduce(a.unit_), ring.inverse(ring.reduce(b.unit_)));
  return out;
}

PadicNumber PadicNumber::times_p_power(int k) const {
  PadicNumber r = *this;
  if (is_zero()) {
    if (!is_exact_zero()) r.abs_ = clamp_abs(long(abs_) + k);
    r.shift_ = r.abs_;
    return r;
  }
  r.shift_ += k;
  r.abs_ += k;
  return r;
}

std::string PadicNumber::to_string() const {
  const std::string prec = "O(" + std::to_string(p_) + "^" + std::to_string(abs_) + ")";
  if (is_exact_zero()) return "0";
  if (is_zero()) return prec;
  std::string s = to_decimal(unit_);
  if (shift_ != 0) s += "*" + std::to_string(p_) + "^" + std::to_string(shift_);
  return s + " + " + prec;
}

}  // namespace iwasawa
