#include <catch_amalgamated.hpp>

#include <random>

#include "csafe/safety.hpp"
#include "csafe/set_theoretic.hpp"
#include "test_support.hpp"

using namespace csafe;

namespace {

// Random symmetric payoff tables: U_i(s,t) = U_i(t,s) for both players.
BimatrixGame random_symmetric_game(std::mt19937_64& rng, std::size_t l) {
  PayoffMatrix u1(l, std::vector<Rational>(l)), u2(l, std::vector<Rational>(l));
  for (std::size_t s = 0; s < l; ++s)
    for (std::size_t t = s; t < l; ++t) {
      u1[s][t] = u1[t][s] = testing::random_rational(rng, 0, 20, 5);
      u2[s][t] = u2[t][s] = testing::random_rational(rng, 0, 20, 5);
    }
  return BimatrixGame(std::move(u1), std::move(u2));
}

// Three candidates, coordination payoffs: agreement on candidate i pays
// 4 to both, disagreement pays 1. Full-support equilibrium is uniform.
BimatrixGame three_candidate_voting_game() {
  PayoffMatrix u(3, std::vector<Rational>(3, Rational(1)));
  for (std::size_t i = 0; i < 3; ++i) u[i][i] = 4;
  return BimatrixGame(u, u);
}

}  // namespace

TEST_CASE("set-theoretic construction accepts symmetric games only") {
  CHECK_NOTHROW(make_set_theoretic(make_leader_election(2, 6, 4, 2)));
  CHECK_NOTHROW(make_set_theoretic(BimatrixGame(PayoffMatrix{{5}}, PayoffMatrix{{7}})));
  CHECK_THROWS_WITH(make_set_theoretic(make_aumann_game()),
                    Catch::Matchers::ContainsSubstring("U1(0,1)"));
  CHECK_THROWS_AS(make_set_theoretic(BimatrixGame(PayoffMatrix{{1, 2}},
                                                  PayoffMatrix{{1, 2}})),
                  std::invalid_argument);
  // Larger than the exact-solve cap.
  PayoffMatrix big(7, std::vector<Rational>(7, Rational(1)));
  CHECK_THROWS_WITH(make_set_theoretic(BimatrixGame(big, big)),
                    Catch::Matchers::ContainsSubstring("at most 6"));
}

TEST_CASE("leader election full-support equilibrium") {
  SECTION("symmetric instance") {
    SetTheoreticGame g = make_set_theoretic(make_leader_election(1, 1, 1, 1));
    auto eq = strictly_mixed_equilibrium_support_enum(g);
    REQUIRE(eq);
    CHECK(eq->t1.probs == MixedStrategy::uniform(2).probs);
    CHECK(eq->t2.probs == MixedStrategy::uniform(2).probs);
  }
  SECTION("general instance matches the closed form") {
    std::mt19937_64 rng(307);
    for (int i = 0; i < 100; ++i) {
      Rational a = testing::random_positive_rational(rng);
      Rational b = testing::random_positive_rational(rng);
      Rational c = testing::random_positive_rational(rng);
      Rational d = testing::random_positive_rational(rng);
      SetTheoreticGame g = make_set_theoretic(make_leader_election(a, b, c, d));
      auto eq = strictly_mixed_equilibrium_support_enum(g);
      REQUIRE(eq);
      // Player 2's weight on the first strategy makes player 1 indifferent.
      CHECK(eq->t2.probs[0] == c / (a + c));
      CHECK(eq->payoff1 == a * c / (a + c));
    }
  }
}

TEST_CASE("three-candidate voting game solves to uniform") {
  SetTheoreticGame g = make_set_theoretic(three_candidate_voting_game());
  auto eq = strictly_mixed_equilibrium_support_enum(g);
  REQUIRE(eq);
  CHECK(eq->t1.probs == MixedStrategy::uniform(3).probs);
  CHECK(eq->payoff1 == 2);  // (4 + 1 + 1) / 3

  SafetyReport rep = transplant_safety_value(g, *eq, 1);
  CHECK(rep.value == 2);
  CHECK(rep.value == safety_level_lp(g.base(), 1).value);
}

TEST_CASE("singular indifference systems are reported, not solved") {
  PayoffMatrix flat(3, std::vector<Rational>(3, Rational(1)));
  SetTheoreticGame g = make_set_theoretic(BimatrixGame(flat, flat));
  std::string why;
  CHECK_FALSE(strictly_mixed_equilibrium_support_enum(g, &why));
  CHECK(why == "singular indifference system");
}

TEST_CASE("transplant rejects non-full-support input") {
  SetTheoreticGame g = make_set_theoretic(make_leader_election(1, 1, 1, 1));
  FullSupportEquilibrium fake;
  fake.t1 = MixedStrategy::point_mass(2, 0);
  fake.t2 = MixedStrategy::point_mass(2, 0);
  CHECK_THROWS_AS(transplant_safety_value(g, fake, 1), std::invalid_argument);
}

TEST_CASE("transplanted strategy guarantees the equilibrium payoff") {
  std::mt19937_64 rng(311);
  int found = 0, attempts = 0;
  while (found < 100 && attempts < 20000) {
    ++attempts;
    std::uniform_int_distribution<std::size_t> size_d(2, 4);
    SetTheoreticGame g = make_set_theoretic(random_symmetric_game(rng, size_d(rng)));
    auto eq = strictly_mixed_equilibrium_support_enum(g);
    if (!eq) continue;
    ++found;

    for (int player : {1, 2}) {
      SafetyReport rep = transplant_safety_value(g, *eq, player);
      const Rational& eq_payoff = player == 1 ? eq->payoff1 : eq->payoff2;
      REQUIRE(rep.value == eq_payoff);

      // Constant payoff against every opponent pure strategy.
      const std::size_t l = g.size();
      for (std::size_t e = 0; e < l; ++e) {
        Rational v = 0;
        for (std::size_t j = 0; j < l; ++j)
          v += rep.strategy.probs[j] * g.base().own_payoff(player, j, e);
        REQUIRE(v == eq_payoff);
      }

      // The transplant is optimal, not just feasible.
      REQUIRE(rep.value == safety_level_lp(g.base(), player).value);
    }
  }
  REQUIRE(found == 100);
}
