#include "iwasawa/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace iwasawa {

std::size_t group_order(std::uint32_t p, int level) {
  if (level < 0) throw InvalidArgument("level must be nonnegative");
  std::size_t n = 1;
  for (int i = 0; i < level; ++i) {
    if (n > std::numeric_limits<std::size_t>::max() / p) throw InvalidArgument("group order overflows");
    n *= p;
  }
  return n;
}

AlgebraElement::AlgebraElement(const PadicRing& ring, int level)
    : ring_(&ring), level_(level), coeffs_(group_order(ring.prime(), level), 0) {}

AlgebraElement::AlgebraElement(const PadicRing& ring, int level, std::vector<u128> coefficients)
    : ring_(&ring), level_(level), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != group_order(ring.prime(), level))
    throw InvalidArgument("coefficient vector of length " + std::to_string(coeffs_.size()) +
                          " does not match level " + std::to_string(level));
  for (auto& c : coeffs_) c = ring.reduce(c);
}

AlgebraElement AlgebraElement::from_coefficients(int level, std::span<const PadicScalar> coefficients) {
  if (coefficients.empty()) throw InvalidArgument("empty coefficient list");
  const PadicRing& ring = coefficients.front().ring();
  std::vector<u128> raw;
  raw.reserve(coefficients.size());
  for (const auto& c : coefficients) {
    if (&c.ring() != &ring) throw PrecisionMismatch("coefficients with different (p, N)");
    raw.push_back(c.value());
  }
  return AlgebraElement(ring, level, std::move(raw));
}

AlgebraElement AlgebraElement::one(const PadicRing& ring, int level) { return gamma_power(ring, level, 0); }

AlgebraElement AlgebraElement::gamma_power(const PadicRing& ring, int level, std::uint64_t k) {
  AlgebraElement e(ring, level);
  e.coeffs_[k % e.size()] = ring.reduce(1);
  return e;
}

AlgebraElement AlgebraElement::constant(const PadicScalar& c, int level) {
  AlgebraElement e(c.ring(), level);
  e.coeffs_[0] = c.value();
  return e;
}

void AlgebraElement::set_coefficient(std::size_t i, const PadicScalar& c) {
  if (&c.ring() != ring_) throw PrecisionMismatch("coefficient from a different ring");
  coeffs_.at(i) = c.value();
}

bool AlgebraElement::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](u128 c) { return c == 0; });
}

void AlgebraElement::check_compatible(const AlgebraElement& o) const {
  if (ring_ != o.ring_)
    throw PrecisionMismatch("group-ring elements over Z/" + std::to_string(prime()) + "^" +
                            std::to_string(precision()) + " and Z/" + std::to_string(o.prime()) + "^" +
                            std::to_string(o.precision()));
  if (level_ != o.level_)
    throw LevelMismatch("group-ring elements at levels " + std::to_string(level_) + " and " +
                        std::to_string(o.level_));
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& c : r.coeffs_) c = ring_->neg(c);
  return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = ring_->add(coeffs_[i], o.coeffs_[i]);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = ring_->sub(coeffs_[i], o.coeffs_[i]);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const PadicScalar& c) {
  if (&c.ring() != ring_) throw PrecisionMismatch("scalar from a different ring");
  for (auto& x : coeffs_) x = ring_->mul(x, c.value());
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

std::string AlgebraElement::to_text() const {
  std::string s = "level " + std::to_string(level_) + "; [";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i != 0) s += ", ";
    s += to_decimal(coeffs_[i]);
  }
  s += "] mod " + std::to_string(prime()) + "^" + std::to_string(precision());
  return s;
}

namespace {

class TextCursor {
 public:
  explicit TextCursor(std::string_view t) : text_(t) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  std::string_view number() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a number");
    return text_.substr(start, pos_ - start);
  }
  long small_number() {
    bool negative = false;
    const u128 v = parse_decimal(number(), negative);
    if (negative || v > 1000000) fail("number out of range");
    return static_cast<long>(v);
  }
  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("cannot parse group-ring element at offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement AlgebraElement::parse_text(std::string_view text) {
  TextCursor cur(text);
  cur.expect("level");
  const int level = static_cast<int>(cur.small_number());
  cur.expect(";");
  cur.expect("[");
  std::vector<std::string_view> literals;
  if (!cur.accept("]")) {
    do {
      literals.push_back(cur.number());
    } while (cur.accept(","));
    cur.expect("]");
  }
  cur.expect("mod");
  const auto p = static_cast<std::uint32_t>(cur.small_number());
  cur.expect("^");
  const int n = static_cast<int>(cur.small_number());
  if (!cur.at_end()) cur.fail("trailing characters");
  const PadicRing& ring = PadicRing::get(p, n);
  std::vector<u128> raw;
  raw.reserve(literals.size());
  for (auto lit : literals) raw.push_back(PadicScalar::parse(ring, lit).value());
  return AlgebraElement(ring, level, std::move(raw));
}

// ---------------------------------------------------------------------------

AlgebraElement multiply(const AlgebraElement& f, const AlgebraElement& g) {
  f.check_compatible(g);
  const PadicRing& ring = f.ring();
  const std::size_t n = f.size();
  const auto a = f.raw();
  const auto b = g.raw();
  std::vector<u128> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      std::size_t k = i + j;
      if (k >= n) k -= n;
      out[k] = ring.add(out[k], ring.mul(a[i], b[j]));
    }
  }
  return AlgebraElement(ring, f.level(), std::move(out));
}

AlgebraElement project_to(const AlgebraElement& f, int level) {
  if (level < 0 || level > f.level())
    throw LevelMismatch("cannot project level " + std::to_string(f.level()) + " to level " + std::to_string(level));
  const PadicRing& ring = f.ring();
  const std::size_t m = group_order(f.prime(), level);
  std::vector<u128> out(m, 0);
  const auto a = f.raw();
  for (std::size_t i = 0; i < a.size(); ++i) out[i % m] = ring.add(out[i % m], a[i]);
  return AlgebraElement(ring, level, std::move(out));
}

AlgebraElement project_pi(const AlgebraElement& f) {
  if (f.level() == 0) throw LevelZero("pi is undefined at level 0");
  return project_to(f, f.level() - 1);
}

AlgebraElement lift_nu(const AlgebraElement& f) {
  const std::size_t small = f.size();
  const std::size_t big = small * f.prime();
  std::vector<u128> out(big);
  const auto a = f.raw();
  for (std::size_t i = 0; i < big; ++i) out[i] = a[i % small];
  return AlgebraElement(f.ring(), f.level() + 1, std::move(out));
}

AlgebraElement xi(const PadicRing& ring, int level) {
  if (level < 1) throw InvalidArgument("xi_n requires n >= 1");
  return cyclotomic_factor(ring, level, level);
}

AlgebraElement cyclotomic_factor(const PadicRing& ring, int level, int m) {
  if (m < 0 || m > level) throw InvalidArgument("cyclotomic factor index must satisfy 0 <= m <= n");
  AlgebraElement e(ring, level);
  std::vector<u128> c(e.size(), 0);
  if (m == 0) {
    c[1 % c.size()] = ring.add(c[1 % c.size()], ring.reduce(1));
    c[0] = ring.sub(c[0], ring.reduce(1));
  } else {
    const std::size_t step = group_order(ring.prime(), m - 1);
    for (std::uint32_t a = 0; a < ring.prime(); ++a) c[a * step] = ring.reduce(1);
  }
  return AlgebraElement(ring, level, std::move(c));
}

AlgebraElement omega(const PadicRing& ring, int level, Sign sign) {
  AlgebraElement w = AlgebraElement::one(ring, level);
  for (int m = (sign == Sign::Plus ? 2 : 1); m <= level; m += 2) w = multiply(w, cyclotomic_factor(ring, level, m));
  return w;
}

int mu_invariant(const AlgebraElement& f) {
  const PadicRing& ring = f.ring();
  int mu = ring.precision();
  for (u128 c : f.raw())
    if (c != 0) mu = std::min(mu, ring.valuation(c));
  if (mu >= ring.precision())
    throw PrecisionExhausted("mu undefined: element is zero modulo " + std::to_string(ring.prime()) + "^" +
                             std::to_string(ring.precision()));
  return mu;
}

namespace {

// binom(a, b) mod p for 0 <= a, b < p via factorials.
class SmallBinomials {
 public:
  explicit SmallBinomials(std::uint32_t p) : p_(p), fact_(p), inv_fact_(p) {
    fact_[0] = 1;
    for (std::uint32_t i = 1; i < p; ++i) fact_[i] = fact_[i - 1] * i % p;
    inv_fact_[p - 1] = power(fact_[p - 1], p - 2);
    for (std::uint32_t i = p - 1; i > 0; --i) inv_fact_[i - 1] = inv_fact_[i] * i % p;
  }
  std::uint64_t operator()(std::uint64_t a, std::uint64_t b) const {
    if (b > a) return 0;
    return fact_[a] * inv_fact_[b] % p_ * inv_fact_[a - b] % p_;
  }
  // Lucas' theorem.
  std::uint64_t lucas(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 1;
    while (b != 0 || a != 0) {
      const std::uint64_t ad = a % p_, bd = b % p_;
      if (bd > ad) return 0;
      r = r * (*this)(ad, bd) % p_;
      a /= p_;
      b /= p_;
    }
    return r;
  }

 private:
  std::uint64_t power(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return r;
  }
  std::uint64_t p_;
  std::vector<std::uint64_t> fact_;
  std::vector<std::uint64_t> inv_fact_;
};

}  // namespace

int lambda_invariant(const AlgebraElement& f) {
  const int mu = mu_invariant(f);
  const PadicRing& ring = f.ring();
  const std::uint32_t p = ring.prime();
  const u128 scale = ring.prime_power(mu);
  std::vector<std::uint64_t> g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = ring.residue(f.raw()[i] / scale);

  const SmallBinomials binom(p);
  for (std::size_t k = 0; k < g.size(); ++k) {
    std::uint64_t b = 0;
    for (std::size_t i = k; i < g.size(); ++i)
      if (g[i] != 0) b = (b + g[i] * binom.lucas(i, k)) % p;
    if (b != 0) return static_cast<int>(k);
  }
  // unreachable: the binomial transform is invertible and g != 0
  throw PrecisionExhausted("lambda undefined");
}

Invariants invariants(const AlgebraElement& f) { return {mu_invariant(f), lambda_invariant(f)}; }

AlgebraElement random_element(Rng& rng, const PadicRing& ring, int level, const RandomConstraint& constraint) {
  const std::size_t n = group_order(ring.prime(), level);
  auto uniform = [&] {
    std::vector<u128> c(n);
    for (auto& x : c) x = rng.uniform_below(ring.modulus());
    return c;
  };

  if (std::holds_alternative<RandomConstraint::None>(constraint.kind())) return AlgebraElement(ring, level, uniform());

  if (std::holds_alternative<RandomConstraint::Unit>(constraint.kind())) {
    for (;;) {
      auto c = uniform();
      if (std::any_of(c.begin(), c.end(), [&](u128 x) { return ring.residue(x) != 0; }))
        return AlgebraElement(ring, level, std::move(c));
    }
  }

  const AlgebraElement& target = std::get<RandomConstraint::LiftOf>(constraint.kind()).target;
  if (&target.ring() != &ring) throw PrecisionMismatch("lift target from a different ring");
  if (target.level() + 1 != level)
    throw LevelMismatch("lift of a level-" + std::to_string(target.level()) + " element must live at level " +
                        std::to_string(target.level() + 1));
  const std::size_t small = target.size();
  std::vector<u128> c(n, 0);
  for (std::size_t i = small; i < n; ++i) c[i] = rng.uniform_below(ring.modulus());
  for (std::size_t j = 0; j < small; ++j) {
    u128 s = target.raw()[j];
    for (std::size_t i = j + small; i < n; i += small) s = ring.sub(s, c[i]);
    c[j] = s;
  }
  return AlgebraElement(ring, level, std::move(c));
}

}  // namespace iwasawa
