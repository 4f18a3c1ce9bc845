#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "csafe/game.hpp"
#include "csafe/rational.hpp"

namespace csafe {

enum class StrategyKind { Pure, Mixed, StrictlyMixed };

inline const char* kind_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::Pure: return "pure";
    case StrategyKind::Mixed: return "mixed";
    case StrategyKind::StrictlyMixed: return "strictly-mixed";
  }
  return "?";
}

inline StrategyKind classify(const MixedStrategy& t) {
  if (t.pure_index()) return StrategyKind::Pure;
  return t.strictly_mixed() ? StrategyKind::StrictlyMixed : StrategyKind::Mixed;
}

// Maximin strategy together with its guaranteed value and the opponent
// pure strategies that attain the guarantee.
struct SafetyReport {
  int player = 1;
  MixedStrategy strategy;
  Rational value;
  StrategyKind kind = StrategyKind::Pure;
  std::vector<std::size_t> worst_responses;
};

// Minimal expected payoff of t against any opponent behavior. Opponent
// pure strategies suffice: the payoff is linear in the opponent mixture.
inline Rational value_of(const BimatrixGame& g, int player, const MixedStrategy& t) {
  const std::size_t own = g.strategies(player);
  const std::size_t opp = g.strategies(player == 1 ? 2 : 1);
  if (t.size() != own)
    throw std::invalid_argument("value_of: strategy size does not match game");
  Rational worst;
  for (std::size_t k = 0; k < opp; ++k) {
    Rational v = 0;
    for (std::size_t j = 0; j < own; ++j) v += t.probs[j] * g.own_payoff(player, j, k);
    if (k == 0 || v < worst) worst = v;
  }
  return worst;
}

inline std::vector<std::size_t> worst_responses_of(const BimatrixGame& g, int player,
                                                   const MixedStrategy& t,
                                                   const Rational& value) {
  const std::size_t own = g.strategies(player);
  const std::size_t opp = g.strategies(player == 1 ? 2 : 1);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < opp; ++k) {
    Rational v = 0;
    for (std::size_t j = 0; j < own; ++j) v += t.probs[j] * g.own_payoff(player, j, k);
    if (v == value) out.push_back(k);
  }
  return out;
}

namespace detail {

// Exact simplex over rationals for the maximin program. With all own
// payoffs shifted positive, max_t min_k t'U[.][k] reduces to the pair
//   primal: min sum x   s.t. U^T x >= 1, x >= 0          (x = t / value)
//   dual:   max sum y   s.t. U y <= 1,  y >= 0
// The dual has a feasible all-slack basis, so we run a plain tableau
// simplex on it with Bland's rule and read the primal solution off the
// objective row under the slack columns.
struct MaximinLP {
  MixedStrategy strategy;
  Rational value;
};

inline MaximinLP solve_maximin(const std::vector<std::vector<Rational>>& own) {
  const std::size_t J = own.size();       // own strategies (dual rows)
  const std::size_t K = own[0].size();    // opponent strategies (dual vars)

  Rational lowest = own[0][0];
  for (const auto& row : own)
    for (const auto& v : row) lowest = std::min(lowest, v);
  const Rational shift = 1 - lowest;  // makes every entry >= 1

  const std::size_t ncols = K + J;
  std::vector<std::vector<Rational>> tab(J, std::vector<Rational>(ncols + 1, Rational(0)));
  std::vector<Rational> zrow(ncols + 1, Rational(0));
  std::vector<std::size_t> basis(J);

  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t k = 0; k < K; ++k) tab[j][k] = own[j][k] + shift;
    tab[j][K + j] = 1;
    tab[j][ncols] = 1;
    basis[j] = K + j;
  }
  for (std::size_t k = 0; k < K; ++k) zrow[k] = -1;

  for (;;) {
    // Bland: entering column = lowest-index negative reduced cost.
    std::size_t enter = ncols;
    for (std::size_t c = 0; c < ncols; ++c)
      if (zrow[c] < 0) { enter = c; break; }
    if (enter == ncols) break;

    // Ratio test, ties broken by lowest basis variable index.
    std::size_t leave = J;
    Rational best_ratio;
    for (std::size_t r = 0; r < J; ++r) {
      if (tab[r][enter] <= 0) continue;
      Rational ratio = tab[r][ncols] / tab[r][enter];
      if (leave == J || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == J)
      throw std::logic_error("maximin simplex: unbounded (malformed input)");

    const Rational pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t r = 0; r < J; ++r) {
      if (r == leave || tab[r][enter] == 0) continue;
      const Rational factor = tab[r][enter];
      for (std::size_t c = 0; c <= ncols; ++c) tab[r][c] -= factor * tab[leave][c];
    }
    if (zrow[enter] != 0) {
      const Rational factor = zrow[enter];
      for (std::size_t c = 0; c <= ncols; ++c) zrow[c] -= factor * tab[leave][c];
    }
    basis[leave] = enter;
  }

  const Rational total = zrow[ncols];
  if (total <= 0) throw std::logic_error("maximin simplex: nonpositive objective");

  std::vector<Rational> t(J);
  Rational tsum = 0;
  for (std::size_t j = 0; j < J; ++j) {
    t[j] = zrow[K + j] / total;  // dual price of row j = primal x_j
    tsum += t[j];
  }
  if (tsum != 1) throw std::logic_error("maximin simplex: strategy does not sum to 1");

  return {MixedStrategy(std::move(t)), Rational(1) / total - shift};
}

}  // namespace detail

// Exact maximin for any finite bimatrix game.
inline SafetyReport safety_level_lp(const BimatrixGame& g, int player) {
  const std::size_t own = g.strategies(player);
  const std::size_t opp = g.strategies(player == 1 ? 2 : 1);
  std::vector<std::vector<Rational>> m(own, std::vector<Rational>(opp));
  for (std::size_t j = 0; j < own; ++j)
    for (std::size_t k = 0; k < opp; ++k) m[j][k] = g.own_payoff(player, j, k);

  detail::MaximinLP sol = detail::solve_maximin(m);
  if (value_of(g, player, sol.strategy) != sol.value)
    throw std::logic_error("maximin simplex: value certificate failed");

  SafetyReport rep;
  rep.player = player;
  rep.strategy = std::move(sol.strategy);
  rep.value = sol.value;
  rep.kind = classify(rep.strategy);
  rep.worst_responses = worst_responses_of(g, player, rep.strategy, rep.value);
  return rep;
}

// Closed form for 2x2 games. With own payoffs (a b / c d), the value
// function min over opponent columns is piecewise linear in p with a
// single kink at the indifference point p' = (d-c)/(a-c-b+d); the optimum
// is that kink or a pure corner. Degenerate denominators fall through to
// the LP.
inline SafetyReport safety_level_2x2(const BimatrixGame& g, int player) {
  if (g.rows() != 2 || g.cols() != 2)
    throw std::invalid_argument("safety_level_2x2: game is not 2x2");

  const Rational a = g.own_payoff(player, 0, 0);
  const Rational b = g.own_payoff(player, 0, 1);
  const Rational c = g.own_payoff(player, 1, 0);
  const Rational d = g.own_payoff(player, 1, 1);

  const Rational denom = a - c - b + d;
  if (denom == 0) return safety_level_lp(g, player);

  const Rational pure0 = std::min(a, b);
  const Rational pure1 = std::min(c, d);

  const Rational p = (d - c) / denom;
  if (p > 0 && p < 1) {
    const Rational mixed_value = p * a + (1 - p) * c;
    if (mixed_value >= pure0 && mixed_value >= pure1) {
      SafetyReport rep;
      rep.player = player;
      rep.strategy = MixedStrategy({p, 1 - p});
      rep.value = mixed_value;
      rep.kind = StrategyKind::StrictlyMixed;
      rep.worst_responses = worst_responses_of(g, player, rep.strategy, rep.value);
      return rep;
    }
  }

  const std::size_t best = pure0 >= pure1 ? 0 : 1;
  SafetyReport rep;
  rep.player = player;
  rep.strategy = MixedStrategy::point_mass(2, best);
  rep.value = best == 0 ? pure0 : pure1;
  rep.kind = StrategyKind::Pure;
  rep.worst_responses = worst_responses_of(g, player, rep.strategy, rep.value);
  return rep;
}

inline nlohmann::json safety_report_to_json(const SafetyReport& r) {
  return {{"player", r.player},
          {"strategy", strategy_to_json(r.strategy)},
          {"value", to_string(r.value)},
          {"kind", kind_name(r.kind)},
          {"worst_responses", r.worst_responses}};
}

}  // namespace csafe
