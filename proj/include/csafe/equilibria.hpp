#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "csafe/game.hpp"
#include "csafe/safety.hpp"

namespace csafe {

// Interior equilibrium of a 2x2 game: p is player 1's weight on their
// first strategy, q player 2's on theirs.
struct Equilibrium2x2 {
  Rational p, q;
  StrategyKind kind = StrategyKind::StrictlyMixed;
  Rational payoff1, payoff2;

  StrategyProfile2P profile() const {
    return {MixedStrategy({p, 1 - p}), MixedStrategy({q, 1 - q})};
  }
};

// Solves the indifference system: q makes player 1 indifferent across
// rows, p makes player 2 indifferent across columns. Returns the
// equilibrium iff both probabilities are strictly interior.
inline std::optional<Equilibrium2x2> strictly_mixed_equilibrium(const BimatrixGame& g,
                                                                std::string* why = nullptr) {
  if (g.rows() != 2 || g.cols() != 2)
    throw std::invalid_argument("strictly_mixed_equilibrium: game is not 2x2");

  const Rational a = g.u1()[0][0], b = g.u1()[0][1], c = g.u1()[1][0], d = g.u1()[1][1];
  const Rational e = g.u2()[0][0], f = g.u2()[0][1], gg = g.u2()[1][0], h = g.u2()[1][1];

  const Rational qden = a - b - c + d;
  const Rational pden = e - gg - f + h;
  if (qden == 0 || pden == 0) {
    if (why) *why = "indifference system is degenerate";
    return std::nullopt;
  }
  const Rational q = (d - b) / qden;
  const Rational p = (h - gg) / pden;
  if (!(q > 0 && q < 1 && p > 0 && p < 1)) {
    if (why) *why = "indifference solution is not strictly interior";
    return std::nullopt;
  }

  Equilibrium2x2 eq;
  eq.p = p;
  eq.q = q;
  eq.payoff1 = expected_payoff(g, 1, eq.profile());
  eq.payoff2 = expected_payoff(g, 2, eq.profile());
  return eq;
}

// All cells where neither player gains by a unilateral pure deviation.
inline std::vector<std::pair<std::size_t, std::size_t>> pure_equilibria(const BimatrixGame& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      bool stable = true;
      for (std::size_t r2 = 0; r2 < g.rows() && stable; ++r2)
        if (g.u1()[r2][c] > g.u1()[r][c]) stable = false;
      for (std::size_t c2 = 0; c2 < g.cols() && stable; ++c2)
        if (g.u2()[r][c2] > g.u2()[r][c]) stable = false;
      if (stable) out.emplace_back(r, c);
    }
  }
  return out;
}

struct ComparisonReport {
  int player = 1;
  Rational safety_value;
  MixedStrategy safety_strategy;
  StrategyKind safety_kind = StrategyKind::Pure;
  std::optional<Rational> nash_value;
  std::optional<MixedStrategy> nash_strategy;
  bool nash_is_strictly_mixed = false;
  bool equal = false;
  std::optional<Rational> ratio;  // nash / safety, when safety > 0
  bool outside_theorem_hypotheses = false;  // not generic or reducible
  std::string note;
};

// Safety value versus equilibrium payoff for one player of a 2x2 game.
// The strictly mixed equilibrium is used when it exists; otherwise the
// worst pure-equilibrium payoff, and failing both the report is flagged
// incomparable.
inline ComparisonReport compare_safety_vs_nash(const BimatrixGame& g, int player) {
  if (g.rows() != 2 || g.cols() != 2)
    throw std::invalid_argument("compare_safety_vs_nash: game is not 2x2");

  ComparisonReport rep;
  rep.player = player;
  rep.outside_theorem_hypotheses = !(is_generic(g) && is_non_reducible(g));

  SafetyReport safety = safety_level_2x2(g, player);
  rep.safety_value = safety.value;
  rep.safety_strategy = safety.strategy;
  rep.safety_kind = safety.kind;

  std::string why;
  if (auto eq = strictly_mixed_equilibrium(g, &why)) {
    rep.nash_value = player == 1 ? eq->payoff1 : eq->payoff2;
    auto profile = eq->profile();
    rep.nash_strategy = player == 1 ? profile.s1 : profile.s2;
    rep.nash_is_strictly_mixed = true;
  } else {
    auto pures = pure_equilibria(g);
    if (pures.empty()) {
      rep.note = "no strictly mixed or pure equilibrium found: " + why;
      return rep;
    }
    std::optional<Rational> worst;
    std::pair<std::size_t, std::size_t> worst_cell = pures.front();
    for (const auto& cell : pures) {
      const Rational& v = g.payoff(player, cell.first, cell.second);
      if (!worst || v < *worst) {
        worst = v;
        worst_cell = cell;
      }
    }
    rep.nash_value = *worst;
    rep.nash_strategy = MixedStrategy::point_mass(
        g.strategies(player), player == 1 ? worst_cell.first : worst_cell.second);
    rep.note = "compared against the worst pure equilibrium";
  }

  rep.equal = *rep.nash_value == rep.safety_value;
  if (rep.safety_value > 0) rep.ratio = *rep.nash_value / rep.safety_value;
  return rep;
}

inline nlohmann::json comparison_report_to_json(const ComparisonReport& r) {
  nlohmann::json j = {{"player", r.player},
                      {"safety_value", to_string(r.safety_value)},
                      {"safety_strategy", strategy_to_json(r.safety_strategy)},
                      {"safety_kind", kind_name(r.safety_kind)},
                      {"equal", r.equal},
                      {"outside_theorem_hypotheses", r.outside_theorem_hypotheses}};
  if (r.nash_value) {
    j["nash_value"] = to_string(*r.nash_value);
    j["nash_strategy"] = strategy_to_json(*r.nash_strategy);
    j["nash_is_strictly_mixed"] = r.nash_is_strictly_mixed;
  }
  if (r.ratio) j["ratio"] = to_string(*r.ratio);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace csafe
