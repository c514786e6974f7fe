#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iwasawa/algebra.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/lattice.hpp"
#include "iwasawa/random.hpp"

namespace iwasawa {

// q_0 = q_1 = 0; q_n = p^{n-1} - p^{n-2} + ... down to p - 1 (n even) or
// p^2 - p (n odd).
long q_n(std::uint32_t p, int n);
// e_0 = e_1 = 0; e_n = p^{n-1} + p^{n-3} + ... - floor(n/2).
long e_n(std::uint32_t p, int n);

struct SimConfig {
  std::uint32_t p;
  PadicScalar a_p;  // its ring fixes the working precision N
  std::string a_p_decimal;  // re-read when the precision changes
  int n_max;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;

  // a_p given in decimal and read modulo p^N; N defaults to
  // default_precision(p, n_max).
  static SimConfig make(std::uint32_t p, std::string_view a_p, int n_max, std::uint64_t seed = 0,
                        std::uint64_t trials = 1, std::optional<int> precision = std::nullopt);
  static int default_precision(std::uint32_t p, int n_max);

  int precision() const noexcept { return a_p.precision(); }
  bool a_p_is_zero() const noexcept { return a_p.is_zero(); }
  // Throws InvalidArgument unless p is an odd prime, p | a_p and n_max >= 0.
  void validate() const;
  // The same configuration at another precision.
  SimConfig at_precision(int precision) const;
};

struct LevelRecord {
  int level = 0;
  Invariants invariants;
  // Profile of Lambda_n / J_n with J_0 = (P_0), J_n = (P_n, nu(P_{n-1})).
  DivisorProfile profile;
  // ord of chi(P_n) for chi of order p^n, as a valuation of Z_p[zeta_{p^n}];
  // the augmentation valuation at level 0.
  RamifiedValuation character_valuation;
};

struct PSequenceTrace {
  SimConfig config;
  PadicScalar u;
  std::vector<AlgebraElement> P;
  std::vector<LevelRecord> levels;

  const PadicRing& ring() const noexcept { return config.a_p.ring(); }
  // The generators of J_n.
  std::vector<AlgebraElement> j_generators(int n) const;
};

// Draws an admissible sequence: P_0 and u random units, P_1 a random lift of
// u P_0, P_{n+1} a random lift of a_p P_n - nu(P_{n-1}). Fills the per-level
// records. Throws PrecisionExhausted when a quotient is infinite at precision
// N, i.e. N is too small to see an elementary divisor.
PSequenceTrace simulate(const SimConfig& config, Rng& rng);

struct CheckResult {
  std::string name;
  int level = 0;
  bool passed = false;
  std::string expected;
  std::string actual;
};

struct Report {
  std::vector<CheckResult> checks;

  bool passed() const;
  void add(std::string name, int level, bool ok, std::string expected, std::string actual);
  void append(const Report& other);
  // First failing check rendered as text, or empty.
  std::string first_failure() const;
};

// Both recursion identities, re-checked on the stored elements.
Report verify_recursion(const PSequenceTrace& trace);
// mu(P_n) = 0 and lambda(P_n) = q_n.
Report verify_invariants(const PSequenceTrace& trace, int n);
// ord_p #(Lambda_n / J_n) = e_n.
Report verify_order(const PSequenceTrace& trace, int n);
// ord(J_n) = ord(J_{n-1}) + ord chi(P_n) and ord chi(P_n) = q_n, n >= 1.
Report verify_exact_sequence(const PSequenceTrace& trace, int n);
// Requires a_p = 0: vanishing of chi(P_n) at levels 1 <= m <= n of parity
// opposite to n, membership of the generators of J_n in (omega^+, omega^-),
// and equality of the two elementary-divisor profiles.
Report verify_structure_ap0(const PSequenceTrace& trace, int n);
// ord_p #(Lambda_n / (omega_n^+, omega_n^-)) = e_n.
Report mtt_consistency(std::uint32_t p, int n);

struct TrialResult {
  std::uint64_t trial = 0;
  int precision = 0;  // after any automatic increase
  std::optional<PSequenceTrace> trace;
  Report report;
  // Set when precision ran out even at the cap.
  std::optional<std::string> exhausted;
};

// One seeded trial with every applicable check. The random stream is keyed
// by (seed, trial), so results do not depend on scheduling. When a quotient
// looks infinite the trial is rerun at doubled precision, up to the cap.
TrialResult run_trial(const SimConfig& config, std::uint64_t trial);

}  // namespace iwasawa
