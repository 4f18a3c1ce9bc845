#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "csafe/game.hpp"
#include "test_support.hpp"

using namespace csafe;
using csafe::testing::random_game;
using csafe::testing::random_mixed;
using csafe::testing::random_rational;

TEST_CASE("rational parsing and printing round-trips") {
  CHECK(to_string(parse_rational("4/6")) == "2/3");
  CHECK(to_string(parse_rational("-4/6")) == "-2/3");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK(parse_rational("1/2") + parse_rational("1/3") == Rational(5, 6));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational r = random_rational(rng, -1000, 1000, 999);
    CHECK(parse_rational(to_string(r)) == r);
  }
}

TEST_CASE("expected payoff on known games") {
  BimatrixGame g51 = make_pure_safety_gap_game();
  StrategyProfile2P pure{MixedStrategy::point_mass(2, 0), MixedStrategy::point_mass(2, 0)};
  CHECK(expected_payoff(g51, 1, pure) == 100);
  CHECK(expected_payoff(g51, 2, pure) == 100);

  BimatrixGame aumann = make_aumann_game();
  StrategyProfile2P profile{MixedStrategy({Rational(3, 4), Rational(1, 4)}),
                            MixedStrategy({Rational(1, 2), Rational(1, 2)})};
  CHECK(expected_payoff(aumann, 1, profile) == 3);

  // Point masses pick out single cells.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    BimatrixGame g = random_game(rng, 3, 2);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 2; ++c) {
        StrategyProfile2P p{MixedStrategy::point_mass(3, r), MixedStrategy::point_mass(2, c)};
        CHECK(expected_payoff(g, 1, p) == g.u1()[r][c]);
        CHECK(expected_payoff(g, 2, p) == g.u2()[r][c]);
      }
  }
}

TEST_CASE("expected payoff dimension mismatch is rejected") {
  BimatrixGame g = make_aumann_game();
  StrategyProfile2P bad{MixedStrategy::uniform(3), MixedStrategy::uniform(2)};
  CHECK_THROWS_AS(expected_payoff(g, 1, bad), std::invalid_argument);
}

TEST_CASE("expected payoff is bilinear") {
  std::mt19937_64 rng(23);
  for (std::size_t size : {std::size_t{2}, std::size_t{3}}) {
    for (int i = 0; i < 50; ++i) {
      BimatrixGame g = random_game(rng, size, size);
      MixedStrategy t = random_mixed(rng, size);
      MixedStrategy t2 = random_mixed(rng, size);
      MixedStrategy opp = random_mixed(rng, size);
      std::uniform_int_distribution<long long> lnum(0, 10);
      Rational lambda(lnum(rng), 10);

      std::vector<Rational> mixed(size);
      for (std::size_t j = 0; j < size; ++j)
        mixed[j] = lambda * t.probs[j] + (1 - lambda) * t2.probs[j];
      Rational lhs = expected_payoff(g, 1, {MixedStrategy(mixed), opp});
      Rational rhs = lambda * expected_payoff(g, 1, {t, opp}) +
                     (1 - lambda) * expected_payoff(g, 1, {t2, opp});
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("dominance on known games") {
  BimatrixGame g51 = make_pure_safety_gap_game();
  CHECK_FALSE(dominates(g51, 1, 0, 1));  // 100 > 60 but 40 < 50
  CHECK_FALSE(dominates(g51, 1, 1, 0));

  BimatrixGame dominated(PayoffMatrix{{1, 1}, {0, 0}}, PayoffMatrix{{0, 0}, {0, 0}});
  CHECK(dominates(dominated, 1, 0, 1));
  CHECK_FALSE(dominates(dominated, 1, 1, 0));

  BimatrixGame aumann = make_aumann_game();
  for (int player : {1, 2})
    for (std::size_t e = 0; e < 2; ++e)
      for (std::size_t f = 0; f < 2; ++f)
        CHECK_FALSE(dominates(aumann, player, e, f));

  CHECK_THROWS_AS(dominates(aumann, 1, 0, 5), std::out_of_range);
}

TEST_CASE("dominance against pure opponents implies dominance against mixed") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    BimatrixGame g = random_game(rng, 2, 3);
    for (std::size_t e = 0; e < 2; ++e)
      for (std::size_t f = 0; f < 2; ++f) {
        if (e == f || !dominates(g, 1, e, f)) continue;
        MixedStrategy opp = random_mixed(rng, 3);
        Rational ve = expected_payoff(g, 1, {MixedStrategy::point_mass(2, e), opp});
        Rational vf = expected_payoff(g, 1, {MixedStrategy::point_mass(2, f), opp});
        CHECK(ve >= vf);
      }
  }
}

TEST_CASE("genericity and non-reducibility on known games") {
  CHECK(is_generic(make_pure_safety_gap_game()));
  CHECK(is_non_reducible(make_pure_safety_gap_game()));
  CHECK(is_generic(make_aumann_game()));
  CHECK(is_non_reducible(make_aumann_game()));

  bool warn = false;
  BimatrixGame lb = make_load_balancing_2x2(Rational(3, 4), 1, &warn);
  CHECK_FALSE(warn);
  CHECK(is_non_reducible(lb));

  BimatrixGame tie(PayoffMatrix{{1, 2}, {1, 3}}, PayoffMatrix{{0, 1}, {2, 3}});
  CHECK_FALSE(is_generic(tie));  // repeated column entry for player 1

  BimatrixGame reducible(PayoffMatrix{{5, 5}, {0, 0}}, PayoffMatrix{{1, 2}, {3, 4}});
  CHECK_FALSE(is_non_reducible(reducible));
}

namespace {

// Brute-force re-implementations, deliberately written from the
// definitions rather than reusing the library predicates.
bool brute_generic(const BimatrixGame& g) {
  for (std::size_t k = 0; k < 2; ++k) {
    if (g.u1()[0][k] == g.u1()[1][k]) return false;
    if (g.u2()[k][0] == g.u2()[k][1]) return false;
  }
  return true;
}

bool brute_non_reducible(const BimatrixGame& g) {
  auto dominated = [](const Rational& e0, const Rational& e1, const Rational& f0,
                      const Rational& f1) {
    return e0 >= f0 && e1 >= f1 && (e0 > f0 || e1 > f1);
  };
  if (dominated(g.u1()[0][0], g.u1()[0][1], g.u1()[1][0], g.u1()[1][1])) return false;
  if (dominated(g.u1()[1][0], g.u1()[1][1], g.u1()[0][0], g.u1()[0][1])) return false;
  if (dominated(g.u2()[0][0], g.u2()[1][0], g.u2()[0][1], g.u2()[1][1])) return false;
  if (dominated(g.u2()[0][1], g.u2()[1][1], g.u2()[0][0], g.u2()[1][0])) return false;
  return true;
}

}  // namespace

TEST_CASE("predicates agree with brute force on all {0,1,2} games") {
  // 3^8 = 6561 games: every 2x2 game with entries in {0,1,2}.
  int digits[8];
  for (int code = 0; code < 6561; ++code) {
    int rest = code;
    for (int& d : digits) {
      d = rest % 3;
      rest /= 3;
    }
    BimatrixGame g(PayoffMatrix{{digits[0], digits[1]}, {digits[2], digits[3]}},
                   PayoffMatrix{{digits[4], digits[5]}, {digits[6], digits[7]}});
    REQUIRE(is_generic(g) == brute_generic(g));
    REQUIRE(is_non_reducible(g) == brute_non_reducible(g));
  }
}

TEST_CASE("dominance is antisymmetric on generic games") {
  std::mt19937_64 rng(41);
  int checked = 0;
  while (checked < 200) {
    BimatrixGame g = random_game(rng, 2, 2);
    if (!is_generic(g)) continue;
    ++checked;
    for (int player : {1, 2})
      CHECK_FALSE((dominates(g, player, 0, 1) && dominates(g, player, 1, 0)));
  }
}

TEST_CASE("load balancing 2x2 constructor") {
  BimatrixGame g = make_load_balancing_2x2(Rational(4, 5), 1);
  CHECK(g.u1()[0][0] == Rational(1, 2));
  CHECK(g.u1()[0][1] == 1);
  CHECK(g.u1()[1][0] == Rational(4, 5));
  CHECK(g.u1()[1][1] == Rational(2, 5));
  CHECK(g.u2()[0][1] == Rational(4, 5));
  CHECK(g.u2()[1][0] == 1);

  BimatrixGame g2 = make_load_balancing_2x2(Rational(3, 5), 2);
  CHECK(g2.u1()[1][1] == Rational(3, 5));

  bool warn = false;
  BimatrixGame sym = make_load_balancing_2x2(1, 1, &warn);
  CHECK(warn);
  CHECK(sym.u1()[0][0] == sym.u1()[1][1]);

  CHECK_THROWS_AS(make_load_balancing_2x2(Rational(3, 4), 0), std::invalid_argument);
  CHECK_THROWS_AS(make_load_balancing_2x2(Rational(3, 4), -1), std::invalid_argument);
  CHECK_THROWS_AS(make_load_balancing_2x2(Rational(5, 4), 1), std::invalid_argument);
}

TEST_CASE("leader election constructor") {
  BimatrixGame g = make_leader_election(2, 6, 4, 2);
  CHECK(g.u1()[0][0] == 2);
  CHECK(g.u1()[1][1] == 4);
  CHECK(g.u2()[0][0] == 6);
  CHECK(g.u2()[1][1] == 2);
  for (int player : {1, 2}) {
    CHECK(g.payoff(player, 0, 1) == 0);
    CHECK(g.payoff(player, 1, 0) == 0);
  }
  CHECK_THROWS_AS(make_leader_election(0, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_leader_election(1, 1, -2, 1), std::invalid_argument);
}

TEST_CASE("named games are generic and non-reducible") {
  for (const BimatrixGame& g : {make_aumann_game(), make_pure_safety_gap_game()}) {
    CHECK(is_generic(g));
    CHECK(is_non_reducible(g));
  }
  CHECK(make_pure_safety_gap_game().u2() ==
        PayoffMatrix{{100, 210}, {200, 90}});
}

TEST_CASE("game json round-trip") {
  nlohmann::json j = nlohmann::json::parse(R"({
    "strategies": [["r1", "r2"], ["c1", "c2"]],
    "u1": [["1/2", "1"], ["4/5", "2/5"]],
    "u2": [["1/2", "4/5"], [1, "2/5"]]
  })");
  BimatrixGame g = game_from_json(j);
  CHECK(g.u1()[1][0] == Rational(4, 5));
  CHECK(g.u2()[1][0] == 1);
  CHECK(game_from_json(game_to_json(g)).u1() == g.u1());

  nlohmann::json bad = j;
  bad["u1"][0][1] = "x/y";
  CHECK_THROWS_WITH(game_from_json(bad), Catch::Matchers::ContainsSubstring("u1[0][1]"));

  nlohmann::json missing = {{"u1", {{1, 2}, {3, 4}}}};
  CHECK_THROWS_WITH(game_from_json(missing), Catch::Matchers::ContainsSubstring("u2"));
}

TEST_CASE("malformed games are rejected") {
  CHECK_THROWS_AS(BimatrixGame(PayoffMatrix{{1, 2}}, PayoffMatrix{{1, 2}, {3, 4}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BimatrixGame(PayoffMatrix{{1, 2}, {3}}, PayoffMatrix{{1, 2}, {3, 4}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MixedStrategy({Rational(1, 2), Rational(1, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(MixedStrategy({Rational(3, 2), Rational(-1, 2)}), std::invalid_argument);
}
