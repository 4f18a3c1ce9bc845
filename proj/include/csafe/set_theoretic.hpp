#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csafe/game.hpp"
#include "csafe/safety.hpp"

namespace csafe {

// Two-player game whose payoffs depend only on the unordered pair of
// chosen strategies: U_i(s,t) = U_i(t,s) for both players. Symmetry is
// verified at construction.
class SetTheoreticGame {
 public:
  static constexpr std::size_t kMaxStrategies = 6;

  explicit SetTheoreticGame(BimatrixGame base) : base_(std::move(base)) {
    if (!base_.square())
      throw std::invalid_argument("set-theoretic game: strategy sets must coincide");
    if (base_.rows() > kMaxStrategies)
      throw std::invalid_argument("set-theoretic game: at most " +
                                  std::to_string(kMaxStrategies) + " strategies supported");
    for (std::size_t s = 0; s < base_.rows(); ++s)
      for (std::size_t t = s + 1; t < base_.rows(); ++t)
        for (int player : {1, 2})
          if (base_.payoff(player, s, t) != base_.payoff(player, t, s))
            throw std::invalid_argument(
                "set-theoretic game: U" + std::to_string(player) + "(" + std::to_string(s) +
                "," + std::to_string(t) + ") != U" + std::to_string(player) + "(" +
                std::to_string(t) + "," + std::to_string(s) + ")");
  }

  const BimatrixGame& base() const { return base_; }
  std::size_t size() const { return base_.rows(); }

 private:
  BimatrixGame base_;
};

inline SetTheoreticGame make_set_theoretic(BimatrixGame g) {
  return SetTheoreticGame(std::move(g));
}

struct FullSupportEquilibrium {
  MixedStrategy t1, t2;
  Rational payoff1, payoff2;
};

namespace detail {

// Solves A x = b exactly by Gaussian elimination with partial pivoting on
// nonzero entries. Returns nullopt when the system is singular.
inline std::optional<std::vector<Rational>> solve_linear(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Opponent mixture that makes `player` indifferent across all own pure
// strategies: l-1 payoff-difference rows plus the probability-sum row.
inline std::optional<std::vector<Rational>> indifference_mixture(const BimatrixGame& g,
                                                                 int player) {
  const std::size_t l = g.rows();
  std::vector<std::vector<Rational>> a(l, std::vector<Rational>(l));
  std::vector<Rational> b(l, Rational(0));
  for (std::size_t e = 0; e + 1 < l; ++e)
    for (std::size_t j = 0; j < l; ++j)
      a[e][j] = g.own_payoff(player, e, j) - g.own_payoff(player, e + 1, j);
  for (std::size_t j = 0; j < l; ++j) a[l - 1][j] = 1;
  b[l - 1] = 1;
  return solve_linear(std::move(a), std::move(b));
}

}  // namespace detail

// Full-support equilibrium by solving each player's indifference system.
// Full-support indifference makes every own strategy a best response, so
// positivity of both solutions certifies the equilibrium.
inline std::optional<FullSupportEquilibrium> strictly_mixed_equilibrium_support_enum(
    const SetTheoreticGame& g, std::string* why = nullptr) {
  const BimatrixGame& base = g.base();

  auto t2 = detail::indifference_mixture(base, 1);  // player 2's mixture
  auto t1 = detail::indifference_mixture(base, 2);  // player 1's mixture
  if (!t1 || !t2) {
    if (why) *why = "singular indifference system";
    return std::nullopt;
  }
  for (const auto* v : {&*t1, &*t2})
    for (const Rational& p : *v)
      if (p <= 0) {
        if (why) *why = "indifference solution leaves the simplex interior";
        return std::nullopt;
      }

  FullSupportEquilibrium eq;
  eq.t1 = MixedStrategy(std::move(*t1));
  eq.t2 = MixedStrategy(std::move(*t2));
  eq.payoff1 = expected_payoff(base, 1, {eq.t1, eq.t2});
  eq.payoff2 = expected_payoff(base, 2, {eq.t1, eq.t2});
  return eq;
}

// The opponent's equilibrium mixture, replayed by this player, guarantees
// the equilibrium payoff: by symmetry its payoff is the same constant
// against every opponent pure strategy.
inline SafetyReport transplant_safety_value(const SetTheoreticGame& g,
                                            const FullSupportEquilibrium& eq, int player) {
  if (!eq.t1.strictly_mixed() || !eq.t2.strictly_mixed())
    throw std::invalid_argument("transplant: equilibrium is not strictly mixed");

  SafetyReport rep;
  rep.player = player;
  rep.strategy = player == 1 ? eq.t2 : eq.t1;
  rep.value = value_of(g.base(), player, rep.strategy);
  rep.kind = StrategyKind::StrictlyMixed;
  rep.worst_responses = worst_responses_of(g.base(), player, rep.strategy, rep.value);

  const Rational& eq_payoff = player == 1 ? eq.payoff1 : eq.payoff2;
  if (rep.value != eq_payoff)
    throw std::logic_error("transplant: guaranteed value differs from equilibrium payoff");
  return rep;
}

}  // namespace csafe
