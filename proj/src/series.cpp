#include "iwasawa/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace iwasawa {

MonomialIndex::MonomialIndex(int variables, int degree) : vars_(variables), degree_(degree) {
  if (variables < 1 || variables > kMaxVariables) throw InvalidArgument("series need 1 to 3 variables");
  if (degree < 0) throw InvalidArgument("series degree must be >= 0");
  for (int d = 0; d <= degree; ++d) {
    starts_.push_back(monomials_.size());
    // lexicographic order within a degree, first variable highest
    Exponents e{};
    if (variables == 1) {
      e[0] = d;
      monomials_.push_back(e);
    } else if (variables == 2) {
      for (int i = d; i >= 0; --i) monomials_.push_back({i, d - i, 0});
    } else {
      for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) monomials_.push_back({i, j, d - i - j});
    }
  }
  starts_.push_back(monomials_.size());
  for (const auto& m : monomials_) total_.push_back(m[0] + m[1] + m[2]);

  const std::size_t n = monomials_.size();
  table_.assign(n * n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (total_[i] + total_[j] > degree) continue;
      const Exponents s{monomials_[i][0] + monomials_[j][0], monomials_[i][1] + monomials_[j][1],
                        monomials_[i][2] + monomials_[j][2]};
      table_[i * n + j] = index(s);
    }
}

long MonomialIndex::index(const Exponents& e) const {
  for (int v = vars_; v < kMaxVariables; ++v)
    if (e[v] != 0) return -1;
  const int d = e[0] + e[1] + e[2];
  if (d > degree_) return -1;
  long off = 0;
  if (vars_ == 2) {
    off = d - e[0];
  } else if (vars_ == 3) {
    // monomials of degree d with first exponent > e[0] come first
    for (int i = d; i > e[0]; --i) off += d - i + 1;
    off += (d - e[0]) - e[1];
  }
  return static_cast<long>(starts_[d]) + off;
}

std::shared_ptr<const MonomialIndex> MonomialIndex::get(int variables, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialIndex>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{variables, degree}];
  if (!slot) slot = std::make_shared<const MonomialIndex>(variables, degree);
  return slot;
}

// ---------------------------------------------------------------------------

TruncatedSeries::TruncatedSeries(std::uint32_t p, int variables, int degree)
    : p_(p), index_(MonomialIndex::get(variables, degree)), coeffs_(index_->size(), PadicNumber::zero(p)) {}

TruncatedSeries TruncatedSeries::variable(std::uint32_t p, int variables, int degree, int i) {
  if (i < 0 || i >= variables) throw InvalidArgument("variable index out of range");
  TruncatedSeries s(p, variables, degree);
  if (degree >= 1) {
    MonomialIndex::Exponents e{};
    e[i] = 1;
    s.set_coefficient(e, PadicNumber::from_integer(p, 1, PadicRing::max_precision(p)));
  }
  return s;
}

TruncatedSeries TruncatedSeries::univariate(std::uint32_t p, std::vector<PadicNumber> coefficients) {
  if (coefficients.empty()) throw InvalidArgument("univariate series needs a constant term");
  TruncatedSeries s(p, 1, static_cast<int>(coefficients.size()) - 1);
  for (const auto& c : coefficients)
    if (c.prime() != p) throw PrecisionMismatch("series coefficient over a different prime");
  s.coeffs_ = std::move(coefficients);
  return s;
}

const PadicNumber& TruncatedSeries::coefficient(const MonomialIndex::Exponents& e) const {
  const long i = index_->index(e);
  if (i < 0) throw InvalidArgument("monomial outside the truncation");
  return coeffs_[static_cast<std::size_t>(i)];
}

void TruncatedSeries::set_coefficient(const MonomialIndex::Exponents& e, PadicNumber c) {
  const long i = index_->index(e);
  if (i < 0) throw InvalidArgument("monomial outside the truncation");
  if (c.prime() != p_) throw PrecisionMismatch("series coefficient over a different prime");
  coeffs_[static_cast<std::size_t>(i)] = std::move(c);
}

const PadicNumber& TruncatedSeries::operator[](int k) const {
  if (variables() != 1) throw InvalidArgument("indexing by degree needs a univariate series");
  return coeffs_.at(static_cast<std::size_t>(k));
}

namespace {

void check_same_shape(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.prime() != b.prime()) throw PrecisionMismatch("series over different primes");
  if (a.variables() != b.variables() || a.degree() != b.degree())
    throw InvalidArgument("series of different shapes");
}

}  // namespace

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  check_same_shape(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  check_same_shape(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same_shape(a, b);
  TruncatedSeries out(a.p_, a.variables(), a.degree());
  const MonomialIndex& idx = *a.index_;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i].is_exact_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const long k = idx.product(i, j);
      if (k < 0) {
        // later j in the same or higher degree are truncated as well
        if (idx.total_degree(i) + idx.total_degree(j) > idx.degree()) break;
        continue;
      }
      if (b.coeffs_[j].is_exact_zero()) continue;
      out.coeffs_[static_cast<std::size_t>(k)] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

TruncatedSeries operator*(const PadicNumber& c, TruncatedSeries a) {
  for (auto& x : a.coeffs_) x = c * x;
  return a;
}

TruncatedSeries TruncatedSeries::embedded(int variables, int degree) const {
  if (variables < this->variables()) throw InvalidArgument("cannot drop variables by embedding");
  TruncatedSeries out(p_, variables, degree);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const long k = out.index_->index(index_->exponents(i));
    if (k >= 0) out.coeffs_[static_cast<std::size_t>(k)] = coeffs_[i];
  }
  return out;
}

TruncatedSeries TruncatedSeries::with_zero(int v) const {
  TruncatedSeries out(p_, variables(), degree());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (index_->exponents(i)[v] == 0) out.coeffs_[i] = coeffs_[i];
  return out;
}

TruncatedSeries TruncatedSeries::swapped(int a, int b) const {
  TruncatedSeries out(p_, variables(), degree());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    auto e = index_->exponents(i);
    std::swap(e[a], e[b]);
    out.coeffs_[static_cast<std::size_t>(index_->index(e))] = coeffs_[i];
  }
  return out;
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& f, std::span<const TruncatedSeries> args) {
  if (static_cast<int>(args.size()) != f.variables()) throw InvalidArgument("compose: one argument per variable");
  const std::uint32_t p = f.prime();
  const int vars = args.front().variables();
  int degree = f.degree();
  for (const auto& g : args) {
    if (g.prime() != p) throw PrecisionMismatch("series over different primes");
    if (g.variables() != vars) throw InvalidArgument("compose: arguments must share a variable count");
    if (!g.has_zero_constant()) throw InvalidArgument("compose: arguments need zero constant term");
    degree = std::min(degree, g.degree());
  }

  // powers[i][k] = g_i^k
  std::vector<std::vector<TruncatedSeries>> powers(args.size());
  TruncatedSeries one(p, vars, degree);
  one.coeffs_[0] = PadicNumber::from_integer(p, 1, PadicRing::max_precision(p));
  for (std::size_t i = 0; i < args.size(); ++i) {
    const TruncatedSeries g = args[i].embedded(vars, degree);
    powers[i].push_back(one);
    for (int k = 1; k <= degree; ++k) powers[i].push_back(powers[i].back() * g);
  }

  TruncatedSeries out(p, vars, degree);
  const MonomialIndex& idx = f.index();
  for (std::size_t m = 0; m < idx.degree_start(degree + 1); ++m) {
    const PadicNumber& c = f.coeffs_[m];
    if (c.is_exact_zero()) continue;
    const auto& e = idx.exponents(m);
    TruncatedSeries term = powers[0][e[0]];
    for (std::size_t i = 1; i < args.size(); ++i)
      if (e[i] != 0) term = term * powers[i][e[i]];
    out += c * term;
  }
  return out;
}

TruncatedSeries TruncatedSeries::compositional_inverse() const {
  if (variables() != 1) throw InvalidArgument("compositional inverse needs a univariate series");
  if (degree() < 1 || !has_zero_constant()) throw InvalidArgument("compositional inverse needs zero constant term");
  const PadicNumber& c1 = coeffs_[1];
  if (c1.is_zero()) throw PrecisionExhausted("linear coefficient is zero at precision");
  const int D = degree();
  const std::uint32_t p = p_;
  const PadicNumber unit = PadicNumber::from_integer(p, 1, PadicRing::max_precision(p));

  TruncatedSeries g(p, 1, D);
  g.coeffs_[1] = unit / c1;
  // b_n = -[X^n] f(g_{<n}) / c_1, where the power table of g is kept
  // up to date as coefficients are fixed
  std::vector<TruncatedSeries> pw;  // pw[k] = g^k for the coefficients fixed so far
  for (int n = 2; n <= D; ++n) {
    pw.assign(1, TruncatedSeries(p, 1, D));
    pw[0].coeffs_[0] = unit;
    PadicNumber s = PadicNumber::zero(p);
    for (int j = 2; j <= n; ++j) {
      // [X^n] g^j needs g only below degree n
      while (static_cast<int>(pw.size()) <= j) pw.push_back(pw.back() * g);
      if (!coeffs_[j].is_exact_zero()) s += coeffs_[j] * pw[j].coeffs_[n];
    }
    g.coeffs_[n] = -(s / c1);
  }
  return g;
}

int TruncatedSeries::min_absolute_precision() const {
  int a = PadicNumber::kExact;
  for (const auto& c : coeffs_) a = std::min(a, c.absolute_precision());
  return a;
}

int TruncatedSeries::min_valuation() const {
  int v = PadicNumber::kExact;
  for (const auto& c : coeffs_)
    if (!c.is_zero()) v = std::min(v, c.shift());
  return v;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const PadicNumber& c) { return c.is_zero(); });
}

std::string describe(const PadicNumber& x) {
  if (x.is_exact_zero()) return "0";
  if (x.is_zero()) return "0 (abs=" + std::to_string(x.absolute_precision()) + ")";
  return "val=" + std::to_string(x.shift()) + ", unit=" + x.unit().to_string();
}

std::vector<std::string> TruncatedSeries::dump_lines() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_exact_zero()) continue;
    const auto& e = index_->exponents(i);
    std::string deg;
    if (variables() == 1) {
      deg = std::to_string(e[0]);
    } else {
      deg = "(";
      for (int v = 0; v < variables(); ++v) deg += (v ? "," : "") + std::to_string(e[v]);
      deg += ")";
    }
    out.push_back("deg " + deg + ": " + describe(coeffs_[i]));
  }
  return out;
}

}  // namespace iwasawa
