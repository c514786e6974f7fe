#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "iwasawa/padic.hpp"
#include "iwasawa/series.hpp"

namespace iwasawa {

// The data of a Honda type t^2 - a_p t + p: an odd prime and a_p with
// p | a_p. a_p is stored at the largest supported precision so that it can
// be read at any working precision.
struct HondaType {
  std::uint32_t p;
  PadicScalar a_p;

  static HondaType make(std::uint32_t p, std::string_view a_p_decimal);
  static HondaType make(std::uint32_t p, std::int64_t a_p);
  PadicScalar a_p_at(int precision) const { return a_p.with_precision(precision); }
};

// x_{-1} = 0, x_0 = 1, p x_k = a_p x_{k-1} - x_{k-2}.
struct HondaCoeffs {
  std::vector<PadicNumber> x;
};

// x_0..x_K with a_p read modulo p^W.
HondaCoeffs honda_coeffs(const HondaType& type, int K, int W);
// Residuals p x_k - a_p x_{k-1} + x_{k-2} are zero at their precision.
bool check_recursion(const HondaType& type, const HondaCoeffs& c);

struct SeriesPlan {
  int terms = 0;              // x_0..x_{terms-1} enter the sum
  int working_precision = 0;  // W for a_p and the binomials
};

// Terms and precision so that every log coefficient up to degree D is known
// to absolute precision `target`.
SeriesPlan log_plan(std::uint32_t p, int degree, int target);

// Sum over k >= 0 of x_k ((1 + X)^{p^k} - 1) truncated at degree D; the
// infinite tail is dropped once its valuation exceeds `target`, and each
// coefficient's precision is capped accordingly.
TruncatedSeries log_series(const HondaType& type, int degree, int target);
// Compositional inverse of a log-type series.
TruncatedSeries exp_series(const TruncatedSeries& log);

struct GroupLaw {
  TruncatedSeries log;
  TruncatedSeries exp;
  TruncatedSeries law;  // F(X, Y) = exp(log X + log Y)
  int target = 0;       // absolute precision the log was built for
};

// Builds F to total degree D. Throws IntegralityViolation if a coefficient
// has negative valuation, PrecisionExhausted if a coefficient is unknown
// even modulo 1.
GroupLaw group_law(const HondaType& type, int degree, int target);

// Ledger over the bivariate law: the smallest absolute precision seen.
int law_precision(const GroupLaw& g);
bool unit_axiom_holds(const GroupLaw& g);  // F(X, 0) = X
bool symmetric(const GroupLaw& g);
// log(F(X,Y)) - log X - log Y vanishes; returns the absolute precision of
// the difference, or -1 when some coefficient is nonzero.
int homomorphism_residual(const GroupLaw& g);
// F(F(X,Y),Z) - F(X,F(Y,Z)) to total degree `degree`; same return convention.
int associativity_residual(const GroupLaw& g, int degree);

struct Epsilon {
  PadicScalar value;     // modulo p^target
  PadicNumber residual;  // log(eps) - p/(p+1-a_p)
  int iterations = 0;
};

// Value of the (full, infinite) log at x with v(x) >= 1, correct modulo p^target.
PadicNumber log_at(const HondaType& type, const PadicScalar& x, int target);
// Newton iteration for log(eps) = p/(p+1-a_p) starting at p/(p+1-a_p).
// Throws NonConvergence when an increment fails to shrink.
Epsilon solve_epsilon(const HondaType& type, int target);

// a_p - (p-1)/(a_p-2) modulo p^N.
PadicScalar trace_unit_u(const PadicRing& ring, const PadicScalar& a_p);

}  // namespace iwasawa
