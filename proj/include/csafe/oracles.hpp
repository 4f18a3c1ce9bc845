#pragma once

// Brute-force verifiers used as independent checks against the solvers.
// Everything here recomputes payoffs and minima from first principles and
// deliberately shares no solving code with safety.hpp / equilibria.hpp.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "csafe/game.hpp"
#include "csafe/load_balancing.hpp"
#include "csafe/rational.hpp"

namespace csafe::oracles {

struct GridSpec {
  std::int64_t resolution = 2;  // simplex denominator

  explicit GridSpec(std::int64_t r) : resolution(r) {
    if (r < 2) throw std::invalid_argument("grid: resolution must be at least 2");
  }
};

struct GridMaximin {
  MixedStrategy strategy;
  Rational value;
  // True optimum exceeds `value` by at most this much (Lipschitz slack
  // payoff_range * strategies / resolution).
  Rational slack;
};

namespace detail {

inline Rational worst_case(const BimatrixGame& g, int player,
                           const std::vector<Rational>& probs) {
  const std::size_t own = g.strategies(player);
  const std::size_t opp = g.strategies(player == 1 ? 2 : 1);
  Rational worst;
  for (std::size_t k = 0; k < opp; ++k) {
    Rational v = 0;
    for (std::size_t j = 0; j < own; ++j) v += probs[j] * g.own_payoff(player, j, k);
    if (k == 0 || v < worst) worst = v;
  }
  return worst;
}

}  // namespace detail

// Exhaustive maximin over the probability grid with denominator R, for
// games with at most 3 own strategies.
inline GridMaximin grid_maximin(const BimatrixGame& g, int player, const GridSpec& grid) {
  const std::size_t own = g.strategies(player);
  if (own < 2 || own > 3)
    throw std::invalid_argument("grid_maximin: supports 2 or 3 own strategies");

  const std::int64_t r = grid.resolution;
  std::vector<Rational> best_probs;
  Rational best;
  bool first = true;

  auto consider = [&](const std::vector<Rational>& probs) {
    const Rational v = detail::worst_case(g, player, probs);
    if (first || v > best) {
      best = v;
      best_probs = probs;
      first = false;
    }
  };

  if (own == 2) {
    for (std::int64_t i = 0; i <= r; ++i)
      consider({Rational(i, r), Rational(r - i, r)});
  } else {
    for (std::int64_t i = 0; i <= r; ++i)
      for (std::int64_t j = 0; j <= r - i; ++j)
        consider({Rational(i, r), Rational(j, r), Rational(r - i - j, r)});
  }

  Rational lo = g.own_payoff(player, 0, 0), hi = lo;
  for (std::size_t j = 0; j < own; ++j)
    for (std::size_t k = 0; k < g.strategies(player == 1 ? 2 : 1); ++k) {
      const Rational& v = g.own_payoff(player, j, k);
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }

  GridMaximin out;
  out.strategy = MixedStrategy(std::move(best_probs));
  out.value = best;
  out.slack = (hi - lo) * Rational(static_cast<long long>(own), 1) / Rational(r, 1);
  return out;
}

// Best-response check: no pure deviation improves either player's payoff.
inline bool verify_equilibrium(const BimatrixGame& g, const StrategyProfile2P& profile) {
  const Rational base1 = expected_payoff(g, 1, profile);
  for (std::size_t r = 0; r < g.rows(); ++r) {
    StrategyProfile2P dev{MixedStrategy::point_mass(g.rows(), r), profile.s2};
    if (expected_payoff(g, 1, dev) > base1) return false;
  }
  const Rational base2 = expected_payoff(g, 2, profile);
  for (std::size_t c = 0; c < g.cols(); ++c) {
    StrategyProfile2P dev{profile.s1, MixedStrategy::point_mass(g.cols(), c)};
    if (expected_payoff(g, 2, dev) > base2) return false;
  }
  return true;
}

struct SplitMin {
  double value = 0.0;
  std::vector<std::int64_t> counts;
};

// Plain recursive enumeration of every split of the other n-1 players
// over the links, minimizing the mixture's expected payoff. Capped at 1e6
// splits. Ties broken toward the lexicographically smallest split.
inline SplitMin exhaustive_split_min(const LoadBalancingFamily& fam, std::int64_t n,
                                     const std::vector<double>& t) {
  const std::size_t m = fam.links();
  if (n < 1) throw std::invalid_argument("exhaustive_split_min: n must be at least 1");
  if (t.size() != m)
    throw std::invalid_argument("exhaustive_split_min: mixture size does not match links");

  SplitMin best;
  bool found = false;
  std::int64_t visited = 0;
  std::vector<std::int64_t> counts(m, 0);

  auto payoff_of = [&](const std::vector<std::int64_t>& c) {
    double v = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      v += t[i] * fam.X * fam.alphas[i] / static_cast<double>(c[i] + 1);
    return v;
  };

  std::function<void(std::size_t, std::int64_t)> recurse = [&](std::size_t link,
                                                               std::int64_t left) {
    if (link + 1 == m) {
      counts[link] = left;
      if (++visited > 1'000'000)
        throw std::runtime_error("exhaustive_split_min: enumeration cap exceeded");
      const double v = payoff_of(counts);
      if (!found || v < best.value || (v == best.value && counts < best.counts)) {
        best.value = v;
        best.counts = counts;
        found = true;
      }
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      counts[link] = k;
      recurse(link + 1, left - k);
    }
  };
  recurse(0, n - 1);
  return best;
}

}  // namespace csafe::oracles
