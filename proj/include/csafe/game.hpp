#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "csafe/rational.hpp"

namespace csafe {

using PayoffMatrix = std::vector<std::vector<Rational>>;

// Probability vector over one player's pure strategies, exact.
struct MixedStrategy {
  std::vector<Rational> probs;

  MixedStrategy() = default;
  explicit MixedStrategy(std::vector<Rational> p) : probs(std::move(p)) { validate(); }

  static MixedStrategy point_mass(std::size_t size, std::size_t index) {
    std::vector<Rational> p(size, Rational(0));
    p.at(index) = 1;
    return MixedStrategy(std::move(p));
  }

  static MixedStrategy uniform(std::size_t size) {
    std::vector<Rational> p(size, Rational(1, static_cast<long long>(size)));
    return MixedStrategy(std::move(p));
  }

  std::size_t size() const { return probs.size(); }

  bool strictly_mixed() const {
    return std::all_of(probs.begin(), probs.end(),
                       [](const Rational& p) { return p > 0; });
  }

  // Index of the unit entry, or nullopt if not a pure strategy.
  std::optional<std::size_t> pure_index() const {
    for (std::size_t j = 0; j < probs.size(); ++j)
      if (probs[j] == 1) return j;
    return std::nullopt;
  }

  void validate() const {
    Rational sum = 0;
    for (const Rational& p : probs) {
      if (p < 0) throw std::invalid_argument("mixed strategy: negative probability");
      sum += p;
    }
    if (sum != 1) throw std::invalid_argument("mixed strategy: probabilities must sum to 1");
  }
};

// Finite 2-player game with exact rational payoffs. Rows index player 1's
// pure strategies, columns player 2's.
class BimatrixGame {
 public:
  BimatrixGame(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
               PayoffMatrix u1, PayoffMatrix u2)
      : row_labels_(std::move(row_labels)),
        col_labels_(std::move(col_labels)),
        u1_(std::move(u1)),
        u2_(std::move(u2)) {
    check_shape();
  }

  BimatrixGame(PayoffMatrix u1, PayoffMatrix u2)
      : u1_(std::move(u1)), u2_(std::move(u2)) {
    for (std::size_t r = 0; r < u1_.size(); ++r) row_labels_.push_back("r" + std::to_string(r + 1));
    for (std::size_t c = 0; c < (u1_.empty() ? 0 : u1_[0].size()); ++c)
      col_labels_.push_back("c" + std::to_string(c + 1));
    check_shape();
  }

  std::size_t rows() const { return u1_.size(); }
  std::size_t cols() const { return u1_.empty() ? 0 : u1_[0].size(); }
  bool square() const { return rows() == cols(); }

  std::size_t strategies(int player) const { return player == 1 ? rows() : cols(); }

  const PayoffMatrix& u1() const { return u1_; }
  const PayoffMatrix& u2() const { return u2_; }
  const std::vector<std::string>& labels(int player) const {
    return player == 1 ? row_labels_ : col_labels_;
  }

  const Rational& payoff(int player, std::size_t row, std::size_t col) const {
    return player == 1 ? u1_.at(row).at(col) : u2_.at(row).at(col);
  }

  // Payoff from the given player's point of view: first index is their own
  // pure strategy, second the opponent's.
  const Rational& own_payoff(int player, std::size_t own, std::size_t opp) const {
    return player == 1 ? u1_.at(own).at(opp) : u2_.at(opp).at(own);
  }

 private:
  void check_shape() const {
    if (u1_.empty() || u1_[0].empty())
      throw std::invalid_argument("game: empty payoff table");
    if (u1_.size() != u2_.size())
      throw std::invalid_argument("game: u1 and u2 row counts differ");
    const std::size_t c = u1_[0].size();
    for (const auto* m : {&u1_, &u2_})
      for (const auto& row : *m)
        if (row.size() != c) throw std::invalid_argument("game: ragged payoff table");
    if (row_labels_.size() != u1_.size() || col_labels_.size() != c)
      throw std::invalid_argument("game: label count does not match payoff table");
  }

  std::vector<std::string> row_labels_, col_labels_;
  PayoffMatrix u1_, u2_;
};

struct StrategyProfile2P {
  MixedStrategy s1, s2;
};

// U_player under a mixed profile, exact.
inline Rational expected_payoff(const BimatrixGame& g, int player,
                                const StrategyProfile2P& profile) {
  if (profile.s1.size() != g.rows() || profile.s2.size() != g.cols())
    throw std::invalid_argument("expected_payoff: profile dimensions do not match game");
  Rational total = 0;
  for (std::size_t j = 0; j < g.rows(); ++j) {
    if (profile.s1.probs[j] == 0) continue;
    for (std::size_t k = 0; k < g.cols(); ++k) {
      if (profile.s2.probs[k] == 0) continue;
      total += profile.s1.probs[j] * profile.s2.probs[k] * g.payoff(player, j, k);
    }
  }
  return total;
}

// Weak dominance of own strategy e over f. Checking opponent pure
// strategies suffices: the payoff difference is linear in the opponent's
// mixture.
inline bool dominates(const BimatrixGame& g, int player, std::size_t e, std::size_t f) {
  const std::size_t own = g.strategies(player);
  const std::size_t opp = g.strategies(player == 1 ? 2 : 1);
  if (e >= own || f >= own)
    throw std::out_of_range("dominates: strategy index out of range");
  if (e == f) return false;
  bool strict = false;
  for (std::size_t k = 0; k < opp; ++k) {
    const Rational& pe = g.own_payoff(player, e, k);
    const Rational& pf = g.own_payoff(player, f, k);
    if (pe < pf) return false;
    if (pe > pf) strict = true;
  }
  return strict;
}

inline bool is_non_reducible(const BimatrixGame& g) {
  for (int player : {1, 2}) {
    const std::size_t own = g.strategies(player);
    for (std::size_t e = 0; e < own; ++e)
      for (std::size_t f = 0; f < own; ++f)
        if (e != f && dominates(g, player, e, f)) return false;
  }
  return true;
}

// No two distinct own strategies tie against any fixed opponent pure
// strategy, for either player.
inline bool is_generic(const BimatrixGame& g) {
  for (int player : {1, 2}) {
    const std::size_t own = g.strategies(player);
    const std::size_t opp = g.strategies(player == 1 ? 2 : 1);
    for (std::size_t k = 0; k < opp; ++k)
      for (std::size_t e = 0; e < own; ++e)
        for (std::size_t f = e + 1; f < own; ++f)
          if (g.own_payoff(player, e, k) == g.own_payoff(player, f, k)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Named game constructors.

// Two parallel links, two senders; link 1 is worth X, link 2 is worth
// alpha*X, shared links halve the value. alpha in (0,1]; the classic
// range is (1/2,1) and *alpha_warning is set when alpha falls outside it.
inline BimatrixGame make_load_balancing_2x2(const Rational& alpha, const Rational& X,
                                            bool* alpha_warning = nullptr) {
  if (X <= 0) throw std::invalid_argument("load balancing: X must be positive");
  if (alpha <= 0 || alpha > 1)
    throw std::invalid_argument("load balancing: alpha must be in (0,1]");
  if (alpha_warning) *alpha_warning = !(alpha > Rational(1, 2) && alpha < 1);
  const Rational aX = alpha * X;
  PayoffMatrix u1 = {{X / 2, X}, {aX, aX / 2}};
  PayoffMatrix u2 = {{X / 2, aX}, {X, aX / 2}};
  return BimatrixGame({"e1", "e2"}, {"e1", "e2"}, std::move(u1), std::move(u2));
}

// Two voters, agreement on a candidate pays (a,b) or (c,d), disagreement
// pays zero to both.
inline BimatrixGame make_leader_election(const Rational& a, const Rational& b,
                                         const Rational& c, const Rational& d) {
  for (const Rational& v : {a, b, c, d})
    if (v <= 0) throw std::invalid_argument("leader election: payoffs must be positive");
  PayoffMatrix u1 = {{a, 0}, {0, c}};
  PayoffMatrix u2 = {{b, 0}, {0, d}};
  return BimatrixGame({"a1", "a2"}, {"a1", "a2"}, std::move(u1), std::move(u2));
}

// Aumann's 2x2 example: the maximin strategy is not an equilibrium
// strategy yet earns the equilibrium payoff.
inline BimatrixGame make_aumann_game() {
  PayoffMatrix u1 = {{2, 4}, {6, 0}};
  PayoffMatrix u2 = {{6, 2}, {0, 4}};
  return BimatrixGame({"a1", "a2"}, {"a1", "a2"}, std::move(u1), std::move(u2));
}

// Generic non-reducible game with a pure maximin strategy worth 50,
// strictly below the unique equilibrium payoff of 52.
inline BimatrixGame make_pure_safety_gap_game() {
  PayoffMatrix u1 = {{100, 40}, {60, 50}};
  PayoffMatrix u2 = {{100, 210}, {200, 90}};
  return BimatrixGame({"a1", "a2"}, {"a1", "a2"}, std::move(u1), std::move(u2));
}

// ---------------------------------------------------------------------------
// JSON format:
// {"strategies": [["r1","r2"],["c1","c2"]],
//  "u1": [["1/2","1"],["4/5","2/5"]], "u2": [...]}
// Payoff entries are exact rational strings "p/q" or plain integers.

inline Rational rational_from_json(const nlohmann::json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string(e.what()) + " at " + path);
    }
  }
  throw std::invalid_argument("expected integer or rational string at " + path);
}

inline PayoffMatrix payoff_matrix_from_json(const nlohmann::json& m, const std::string& path) {
  if (!m.is_array()) throw std::invalid_argument("expected array at " + path);
  PayoffMatrix out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    const auto& row = m[r];
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!row.is_array()) throw std::invalid_argument("expected array at " + row_path);
    std::vector<Rational> vals;
    for (std::size_t c = 0; c < row.size(); ++c)
      vals.push_back(rational_from_json(row[c], row_path + "[" + std::to_string(c) + "]"));
    out.push_back(std::move(vals));
  }
  return out;
}

inline BimatrixGame game_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("game json: expected object");
  for (const char* key : {"u1", "u2"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("game json: missing field '") + key + "'");
  PayoffMatrix u1 = payoff_matrix_from_json(j.at("u1"), "u1");
  PayoffMatrix u2 = payoff_matrix_from_json(j.at("u2"), "u2");
  if (j.contains("strategies")) {
    const auto& s = j.at("strategies");
    if (!s.is_array() || s.size() != 2)
      throw std::invalid_argument("game json: 'strategies' must hold two label lists");
    return BimatrixGame(s[0].get<std::vector<std::string>>(),
                        s[1].get<std::vector<std::string>>(), std::move(u1), std::move(u2));
  }
  return BimatrixGame(std::move(u1), std::move(u2));
}

inline nlohmann::json payoff_matrix_to_json(const PayoffMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json jrow = nlohmann::json::array();
    for (const auto& v : row) jrow.push_back(to_string(v));
    out.push_back(std::move(jrow));
  }
  return out;
}

inline nlohmann::json game_to_json(const BimatrixGame& g) {
  nlohmann::json out = nlohmann::json::object();
  out["strategies"] = nlohmann::json::array({g.labels(1), g.labels(2)});
  out["u1"] = payoff_matrix_to_json(g.u1());
  out["u2"] = payoff_matrix_to_json(g.u2());
  return out;
}

inline nlohmann::json strategy_to_json(const MixedStrategy& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : t.probs) out.push_back(to_string(p));
  return out;
}

}  // namespace csafe
