#include <gtest/gtest.h>

#include "iwasawa/lattice.hpp"
#include "iwasawa/theorem.hpp"
#include "oracles.hpp"

using namespace iwasawa;
using namespace iwasawa::testing;

namespace {

AlgebraElement reduce_to(const AlgebraElement& f, const PadicRing& ring) {
  std::vector<u128> c;
  for (u128 x : f.raw()) c.push_back(x % ring.modulus());
  return AlgebraElement(ring, f.level(), std::move(c));
}

// log_p #(Lambda_n / (gens) + p^3) from the library: divisors that reach p^3
// sit in the deficit
long library_order_mod_p3(const std::vector<AlgebraElement>& gens) {
  const PadicRing& ring = PadicRing::get(gens.front().prime(), 3);
  std::vector<AlgebraElement> g;
  for (const auto& x : gens) g.push_back(reduce_to(x, ring));
  const DivisorProfile d = quotient_profile(g);
  return d.order_exponent() + 3 * static_cast<long>(d.rank_deficit);
}

}  // namespace

TEST(Oracle, LambdaBySpanSeesKnownValues) {
  const PadicRing& ring = PadicRing::get(3, 5);
  EXPECT_EQ(lambda_by_span(xi(ring, 2)), 6);
  EXPECT_EQ(lambda_by_span(AlgebraElement::one(ring, 1)), 0);
  EXPECT_EQ(lambda_by_span(AlgebraElement(ring, 1)), -1);
}

TEST(Oracle, OmegaIdealsArePrincipal) {
  for (int n = 1; n <= 3; ++n)
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const PrincipalityResult r = omega_principality(3, n, s);
      EXPECT_TRUE(r.principal()) << "n=" << n << " kernel " << r.kernel_dimension << " rank " << r.lattice_rank
                                 << " mod p " << r.rank_mod_p;
    }
  // p = 5 at level 2 as well
  EXPECT_TRUE(omega_principality(5, 2, Sign::Plus).principal());
  EXPECT_TRUE(omega_principality(5, 2, Sign::Minus).principal());
}

TEST(Oracle, EnumerationOnHandExamples) {
  const PadicRing& ring = PadicRing::get(3, 3);
  // Lambda_1 / (gamma - 1, 3) = F_3
  const AlgebraElement t = AlgebraElement::gamma_power(ring, 1, 1) - AlgebraElement::one(ring, 1);
  const AlgebraElement three = AlgebraElement::constant(PadicScalar(ring, 3), 1);
  EXPECT_EQ(quotient_order_by_enumeration(3, ideal_columns_mod_p3({t, three})), 1);
  // Lambda_1 / (9) modulo 27 has order 9^3
  const AlgebraElement nine = AlgebraElement::constant(PadicScalar(ring, 9), 1);
  EXPECT_EQ(quotient_order_by_enumeration(3, ideal_columns_mod_p3({nine})), 6);
}

TEST(Oracle, EnumerationMatchesSmithFormAtLevelOne) {
  const PadicRing& ring = PadicRing::get(3, 3);
  Rng rng(31, 0);
  for (int i = 0; i < 200; ++i) {
    AlgebraElement f = random_element(rng, ring, 1), g = random_element(rng, ring, 1);
    if (i % 2 == 0) f = f * PadicScalar(ring, 3);
    if (i % 3 == 0) g = g * (AlgebraElement::gamma_power(ring, 1, 1) - AlgebraElement::one(ring, 1));
    const std::vector<AlgebraElement> gens{f, g};
    EXPECT_EQ(quotient_order_by_enumeration(3, ideal_columns_mod_p3(gens)), library_order_mod_p3(gens))
        << f.to_text() << " " << g.to_text();
  }
}

TEST(Oracle, EnumerationMatchesSmithFormAtLevelTwo) {
  // the simulator's J_2 and a structured pair
  const SimConfig c = SimConfig::make(3, "0", 2, 5);
  Rng rng(5, 0);
  const PSequenceTrace t = simulate(c, rng);
  const auto j2 = t.j_generators(2);
  EXPECT_EQ(quotient_order_by_enumeration(3, ideal_columns_mod_p3({reduce_to(j2[0], PadicRing::get(3, 3)),
                                                                   reduce_to(j2[1], PadicRing::get(3, 3))})),
            library_order_mod_p3(j2));
  const PadicRing& ring = PadicRing::get(3, 10);
  const std::vector<AlgebraElement> w{omega(ring, 2, Sign::Plus), omega(ring, 2, Sign::Minus)};
  EXPECT_EQ(quotient_order_by_enumeration(3, ideal_columns_mod_p3({reduce_to(w[0], PadicRing::get(3, 3)),
                                                                   reduce_to(w[1], PadicRing::get(3, 3))})),
            library_order_mod_p3(w));
}
