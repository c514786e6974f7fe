#include "iwasawa/theorem.hpp"

#include <algorithm>

namespace iwasawa {

namespace {

long ipow(long p, int k) {
  long r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

std::string profile_text(const DivisorProfile& d) { return d.to_string(); }

const char* sign_word(bool ok) { return ok ? "yes" : "no"; }

}  // namespace

long q_n(std::uint32_t p, int n) {
  if (n < 0) throw InvalidArgument("q_n requires n >= 0");
  if (n < 2) return 0;
  long s = 0;
  for (int i = 1; i < n; ++i) s += ((n - 1 - i) % 2 == 0 ? 1 : -1) * ipow(p, i);
  if (n % 2 == 0) s -= 1;
  return s;
}

long e_n(std::uint32_t p, int n) {
  if (n < 0) throw InvalidArgument("e_n requires n >= 0");
  if (n < 2) return 0;
  long s = 0;
  for (int i = n - 1; i >= 1; i -= 2) s += ipow(p, i);
  return s - n / 2;
}

// ---------------------------------------------------------------------------

int SimConfig::default_precision(std::uint32_t p, int n_max) {
  const long want = e_n(p, std::max(n_max, 0)) + 8;
  const int cap = PadicRing::max_precision(p);
  return static_cast<int>(std::min<long>(want, cap));
}

SimConfig SimConfig::make(std::uint32_t p, std::string_view a_p, int n_max, std::uint64_t seed,
                          std::uint64_t trials, std::optional<int> precision) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("p must be an odd prime, got " + std::to_string(p));
  if (n_max < 0) throw InvalidArgument("n_max must be >= 0");
  const int n = precision ? *precision : default_precision(p, n_max);
  if (n < 1 || n > PadicRing::max_precision(p))
    throw InvalidArgument("precision must lie in [1, " + std::to_string(PadicRing::max_precision(p)) + "]");
  const PadicRing& ring = PadicRing::get(p, n);
  SimConfig c{p, PadicScalar::parse(ring, a_p), std::string(a_p), n_max, seed, trials};
  c.validate();
  return c;
}

void SimConfig::validate() const {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("p must be an odd prime, got " + std::to_string(p));
  if (a_p.prime() != p) throw InvalidArgument("a_p lives over a different prime");
  if (a_p.is_unit()) throw InvalidArgument("a_p must be divisible by p (supersingular reduction)");
  if (n_max < 0) throw InvalidArgument("n_max must be >= 0");
}

SimConfig SimConfig::at_precision(int precision) const {
  SimConfig c = *this;
  const PadicRing& ring = a_p.ring().sibling(precision);
  c.a_p = a_p_decimal.empty() ? a_p.with_precision(precision) : PadicScalar::parse(ring, a_p_decimal);
  return c;
}

std::vector<AlgebraElement> PSequenceTrace::j_generators(int n) const {
  if (n == 0) return {P.at(0)};
  return {P.at(n), lift_nu(P.at(n - 1))};
}

PSequenceTrace simulate(const SimConfig& config, Rng& rng) {
  config.validate();
  const PadicRing& ring = config.a_p.ring();
  PSequenceTrace t{config, rng.unit(ring), {}, {}};

  t.P.push_back(random_element(rng, ring, 0, RandomConstraint::unit()));
  if (config.n_max >= 1) t.P.push_back(random_element(rng, ring, 1, RandomConstraint::lift_of(t.u * t.P[0])));
  for (int n = 1; n < config.n_max; ++n) {
    const AlgebraElement target = config.a_p * t.P[n] - lift_nu(t.P[n - 1]);
    t.P.push_back(random_element(rng, ring, n + 1, RandomConstraint::lift_of(target)));
  }

  for (int n = 0; n <= config.n_max; ++n) {
    LevelRecord r;
    r.level = n;
    r.invariants = invariants(t.P[n]);
    r.profile = quotient_profile(t.j_generators(n));
    if (!r.profile.finite())
      throw PrecisionExhausted("Lambda_" + std::to_string(n) + "/J_" + std::to_string(n) +
                               " has an elementary divisor beyond p^" + std::to_string(ring.precision()));
    if (n == 0) {
      const Valuation v = t.P[0].coefficient(0).valuation();
      r.character_valuation = {v.value, 1, v.exact};
    } else {
      r.character_valuation = ramified_valuation(char_eval(t.P[n], n));
    }
    t.levels.push_back(std::move(r));
  }
  return t;
}

// ---------------------------------------------------------------------------

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void Report::add(std::string name, int level, bool ok, std::string expected, std::string actual) {
  checks.push_back({std::move(name), level, ok, std::move(expected), std::move(actual)});
}

void Report::append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

std::string Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed)
      return c.name + " at n=" + std::to_string(c.level) + ": expected " + c.expected + ", got " + c.actual;
  return {};
}

Report verify_recursion(const PSequenceTrace& trace) {
  Report rep;
  const auto& P = trace.P;
  if (P.size() >= 2) {
    const bool ok = project_pi(P[1]) == trace.u * P[0];
    rep.add("recursion", 1, ok, "pi(P_1) = u P_0", sign_word(ok));
  }
  for (std::size_t n = 1; n + 1 < P.size(); ++n) {
    const bool ok = project_pi(P[n + 1]) == trace.config.a_p * P[n] - lift_nu(P[n - 1]);
    rep.add("recursion", static_cast<int>(n + 1), ok, "pi(P_{n+1}) = a_p P_n - nu(P_{n-1})", sign_word(ok));
  }
  return rep;
}

Report verify_invariants(const PSequenceTrace& trace, int n) {
  Report rep;
  const Invariants& inv = trace.levels.at(n).invariants;
  rep.add("mu", n, inv.mu == 0, "0", std::to_string(inv.mu));
  const long q = q_n(trace.config.p, n);
  rep.add("lambda", n, inv.lambda == q, std::to_string(q), std::to_string(inv.lambda));
  return rep;
}

Report verify_order(const PSequenceTrace& trace, int n) {
  Report rep;
  const DivisorProfile& d = trace.levels.at(n).profile;
  const long e = e_n(trace.config.p, n);
  const bool ok = d.finite() && d.order_exponent() == e;
  rep.add("order", n, ok, std::to_string(e), d.finite() ? std::to_string(d.order_exponent()) : "infinite");
  return rep;
}

Report verify_exact_sequence(const PSequenceTrace& trace, int n) {
  if (n < 1 || n >= static_cast<int>(trace.levels.size()))
    throw InvalidArgument("exact sequence check needs 1 <= n <= n_max");
  Report rep;
  const LevelRecord& cur = trace.levels[n];
  const LevelRecord& prev = trace.levels[n - 1];
  const RamifiedValuation& v = cur.character_valuation;
  // #Z_p[zeta_{p^n}]/(z) = p^{ord_pi z}; numerator is ord_pi since the
  // denominator is the ramification index
  const long contribution = v.exact ? v.numerator : -1;
  const long q = q_n(trace.config.p, n);
  rep.add("character_order", n, contribution == q, std::to_string(q), v.to_string());
  const long lhs = cur.profile.order_exponent();
  const long rhs = prev.profile.order_exponent() + contribution;
  rep.add("exact_sequence", n, v.exact && lhs == rhs, std::to_string(rhs), std::to_string(lhs));
  return rep;
}

namespace {

std::vector<AlgebraElement> omega_pair(const PadicRing& ring, int n) {
  return {omega(ring, n, Sign::Plus), omega(ring, n, Sign::Minus)};
}

}  // namespace

Report verify_structure_ap0(const PSequenceTrace& trace, int n) {
  if (!trace.config.a_p_is_zero()) throw InvalidArgument("structure checks require a_p = 0");
  if (n < 0 || n >= static_cast<int>(trace.levels.size())) throw InvalidArgument("level out of range");
  Report rep;
  const PadicRing& ring = trace.ring();
  const AlgebraElement& Pn = trace.P[n];

  bool vanish = true;
  std::string missing;
  for (int m = 1; m <= n; ++m) {
    if ((m - n) % 2 == 0) continue;
    if (!cyclo_is_zero(char_eval(Pn, m))) {
      vanish = false;
      missing += (missing.empty() ? "" : ",") + std::to_string(m);
    }
  }
  rep.add("vanishing", n, vanish, "chi(P_n) = 0 at opposite-parity levels",
          vanish ? "yes" : "nonzero at m=" + missing);

  const auto omegas = omega_pair(ring, n);
  const Submodule target = Submodule::ideal(omegas);
  bool member = true;
  for (const auto& g : trace.j_generators(n)) member = member && target.contains(g);
  rep.add("membership", n, member, "J_n in (omega+, omega-)", sign_word(member));

  const DivisorProfile& mine = trace.levels[n].profile;
  const DivisorProfile& theirs = target.profile();
  rep.add("profile_match", n, mine == theirs, profile_text(theirs), profile_text(mine));
  return rep;
}

Report mtt_consistency(std::uint32_t p, int n) {
  if (n < 0) throw InvalidArgument("mtt_consistency requires n >= 0");
  const PadicRing& ring = PadicRing::get(p, SimConfig::default_precision(p, n));
  const DivisorProfile d = quotient_profile(omega_pair(ring, n));
  const long e = e_n(p, n);
  Report rep;
  rep.add("omega_order", n, d.finite() && d.order_exponent() == e, std::to_string(e),
          d.finite() ? std::to_string(d.order_exponent()) : "infinite");
  return rep;
}

TrialResult run_trial(const SimConfig& config, std::uint64_t trial) {
  TrialResult out;
  out.trial = trial;
  SimConfig c = config;
  const int cap = PadicRing::max_precision(config.p);
  for (;;) {
    Rng rng(config.seed, trial);
    try {
      out.trace = simulate(c, rng);
      break;
    } catch (const PrecisionExhausted& e) {
      if (c.precision() >= cap) {
        out.precision = c.precision();
        out.exhausted = e.what();
        return out;
      }
      c = c.at_precision(std::min(cap, 2 * c.precision()));
    }
  }
  out.precision = c.precision();
  const PSequenceTrace& t = *out.trace;
  out.report.append(verify_recursion(t));
  for (int n = 0; n <= c.n_max; ++n) {
    out.report.append(verify_invariants(t, n));
    out.report.append(verify_order(t, n));
    if (n >= 1) out.report.append(verify_exact_sequence(t, n));
    if (c.a_p_is_zero()) out.report.append(verify_structure_ap0(t, n));
  }
  return out;
}

}  // namespace iwasawa
