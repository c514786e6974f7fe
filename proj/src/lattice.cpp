#include "iwasawa/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace iwasawa {

PMatrix::PMatrix(const PadicRing& ring, std::size_t rows, std::size_t cols)
    : ring_(&ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

PMatrix PMatrix::identity(const PadicRing& ring, std::size_t n) {
  PMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.raw(i, i) = ring.reduce(1);
  return m;
}

PMatrix PMatrix::diagonal(std::span<const PadicScalar> entries) {
  if (entries.empty()) throw InvalidArgument("diagonal matrix needs at least one entry");
  PMatrix m(entries.front().ring(), entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
  return m;
}

PMatrix PMatrix::hconcat(const PMatrix& a, const PMatrix& b) {
  if (a.ring_ != b.ring_) throw PrecisionMismatch("matrices over different rings");
  if (a.rows_ != b.rows_) throw InvalidArgument("hconcat: row counts differ");
  PMatrix m(*a.ring_, a.rows_, a.cols_ + b.cols_);
  std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
  return m;
}

void PMatrix::set(std::size_t r, std::size_t c, const PadicScalar& v) {
  if (&v.ring() != ring_) throw PrecisionMismatch("matrix entry from a different ring");
  raw(r, c) = v.value();
}

PMatrix operator*(const PMatrix& a, const PMatrix& b) {
  if (a.ring_ != b.ring_) throw PrecisionMismatch("matrices over different rings");
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: inner dimensions differ");
  const PadicRing& ring = *a.ring_;
  PMatrix m(ring, a.rows_, b.cols_);
  for (std::size_t j = 0; j < b.cols_; ++j)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const u128 x = b.raw(k, j);
      if (x == 0) continue;
      for (std::size_t i = 0; i < a.rows_; ++i) m.raw(i, j) = ring.add(m.raw(i, j), ring.mul(a.raw(i, k), x));
    }
  return m;
}

long DivisorProfile::order_exponent() const { return std::accumulate(exponents.begin(), exponents.end(), 0L); }

std::vector<int> DivisorProfile::nontrivial() const {
  std::vector<int> out;
  for (int d : exponents)
    if (d > 0) out.push_back(d);
  return out;
}

std::string DivisorProfile::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int d : nontrivial()) {
    if (!first) s += ",";
    s += std::to_string(d);
    first = false;
  }
  s += "}";
  if (rank_deficit != 0) s += " deficit " + std::to_string(rank_deficit);
  return s;
}

// ---------------------------------------------------------------------------

Submodule::Submodule(PMatrix generators) : echelon_(std::move(generators)) {
  PMatrix& m = echelon_;
  const PadicRing& ring = m.ring();
  const int n = ring.precision();

  std::vector<std::size_t> rows(m.rows()), cols(m.cols());
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);

  while (!rows.empty() && !cols.empty()) {
    // minimal-valuation entry of the remaining block; any unit ends the search
    std::size_t best_r = 0, best_c = 0;
    int best_v = n;
    for (std::size_t ci = 0; ci < cols.size() && best_v > 0; ++ci) {
      const auto col = m.column(cols[ci]);
      for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        const u128 x = col[rows[ri]];
        if (x == 0) continue;
        if (ring.residue(x) != 0) {
          best_v = 0;
          best_r = ri;
          best_c = ci;
          break;
        }
        const int v = ring.valuation(x);
        if (v < best_v) {
          best_v = v;
          best_r = ri;
          best_c = ci;
        }
      }
    }
    if (best_v >= n) break;

    const std::size_t pr = rows[best_r], pc = cols[best_c];
    const u128 scale = ring.prime_power(best_v);
    const u128 winv = ring.inverse(m.raw(pr, pc) / scale);
    pivots_.push_back({pr, pc, best_v, winv});
    profile_.exponents.push_back(best_v);

    rows[best_r] = rows.back();
    rows.pop_back();
    cols[best_c] = cols.back();
    cols.pop_back();

    // clear the pivot row in every remaining column; the pivot column keeps
    // its entries, which row operations could remove without touching the rest
    const auto pivot_col = m.column(pc);
    for (std::size_t c : cols) {
      auto col = m.column(c);
      const u128 x = col[pr];
      if (x == 0) continue;
      const u128 q = ring.mul(x / scale, winv);
      col[pr] = 0;
      for (std::size_t r : rows) {
        const u128 y = pivot_col[r];
        if (y != 0) col[r] = ring.sub(col[r], ring.mul(q, y));
      }
    }
  }
  std::sort(profile_.exponents.begin(), profile_.exponents.end());
  profile_.rank_deficit = m.rows() - pivots_.size();
}

Submodule Submodule::ideal(std::span<const AlgebraElement> generators) {
  if (generators.empty()) throw InvalidArgument("ideal needs at least one generator");
  const AlgebraElement& first = generators.front();
  const std::size_t size = first.size();
  const std::uint32_t p = first.prime();

  // gamma^i g for i below the period of g; further shifts repeat columns
  std::vector<std::pair<const AlgebraElement*, std::size_t>> blocks;
  std::size_t total = 0;
  for (const auto& g : generators) {
    first.check_compatible(g);
    std::size_t period = 1;
    const auto c = g.raw();
    while (period < size) {
      bool periodic = true;
      for (std::size_t i = period; i < size && periodic; ++i) periodic = c[i] == c[i - period];
      if (periodic) break;
      period *= p;
    }
    blocks.emplace_back(&g, period);
    total += period;
  }
  PMatrix m(first.ring(), size, total);
  std::size_t col = 0;
  for (const auto& [g, period] : blocks) {
    const auto c = g->raw();
    for (std::size_t shift = 0; shift < period; ++shift, ++col)
      for (std::size_t r = 0; r < size; ++r) m.raw(r, col) = c[(r + size - shift) % size];
  }
  return Submodule(std::move(m));
}

bool Submodule::contains(std::span<const u128> vector) const {
  if (vector.size() != echelon_.rows()) throw InvalidArgument("vector length does not match the ambient module");
  const PadicRing& ring = echelon_.ring();
  std::vector<u128> v(vector.begin(), vector.end());
  for (auto& x : v) x = ring.reduce(x);
  for (const Pivot& pv : pivots_) {
    const u128 x = v[pv.row];
    if (x == 0) continue;
    if (ring.valuation(x) < pv.exponent) return false;
    const u128 q = ring.mul(x / ring.prime_power(pv.exponent), pv.unit_inverse);
    const auto col = echelon_.column(pv.col);
    for (std::size_t r = 0; r < v.size(); ++r)
      if (col[r] != 0) v[r] = ring.sub(v[r], ring.mul(q, col[r]));
  }
  return std::all_of(v.begin(), v.end(), [](u128 x) { return x == 0; });
}

bool Submodule::contains(const AlgebraElement& f) const {
  if (&f.ring() != &echelon_.ring()) throw PrecisionMismatch("element from a different ring");
  return contains(f.raw());
}

DivisorProfile smith_form(const PMatrix& m) { return Submodule(m).profile(); }

PMatrix mult_matrix(const AlgebraElement& f) {
  const std::size_t n = f.size();
  PMatrix m(f.ring(), n, n);
  const auto c = f.raw();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r) m.raw(r, i) = c[(r + n - i) % n];
  return m;
}

DivisorProfile quotient_profile(std::span<const AlgebraElement> generators) {
  return Submodule::ideal(generators).profile();
}

bool ideal_membership(const AlgebraElement& f, std::span<const AlgebraElement> generators) {
  for (const auto& g : generators) f.check_compatible(g);
  return Submodule::ideal(generators).contains(f);
}

}  // namespace iwasawa
